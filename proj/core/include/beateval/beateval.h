/// @file beateval.h
/// @brief Umbrella header.

#pragma once

#include "beateval/core.h"
#include "beateval/io.h"
#include "beateval/matching.h"
#include "beateval/metrics.h"
#include "beateval/report.h"
#include "beateval/svg.h"
#include "beateval/synth.h"
#include "beateval/trackers.h"
#include "beateval/variants.h"
