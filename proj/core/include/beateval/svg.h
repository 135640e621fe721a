/// @file svg.h
/// @brief Coverage plot: one row per condition, a bar per run of covered beats.

#pragma once

#include <optional>
#include <string>

#include "beateval/core.h"

namespace beateval {

struct CoveragePlotInput {
  const CoverageMatrix* coverage = nullptr;
  const BeatSequence* reference = nullptr;
  /// Optional top panel content.
  const ActivationFunction* activation = nullptr;
  const BeatSequence* estimate = nullptr;
  std::string title;
};

/// Deterministic SVG text. Bars carry class="bar" and data-row=<row id>,
/// where row ids are the condition names plus "offbeat" and "any".
/// @throws Error(kInvalidArgument) if coverage and reference lengths differ.
std::string render_coverage_svg(const CoveragePlotInput& input);

void write_coverage_svg(const CoveragePlotInput& input, const std::string& path);

}  // namespace beateval
