/// @file trackers.h
/// @brief Post-processing trackers turning a beat activation into beat times.

#pragma once

#include "beateval/core.h"

namespace beateval {

struct PeakPickingConfig {
  double threshold = 0.3;
  /// Seconds; a peak closer than this to an accepted larger peak is dropped.
  double min_gap = 0.15;
};

/// Simple peak picking.
///
/// Candidates are interior frames strictly above their left neighbour, not
/// below their right neighbour, and at least `threshold`. Candidates are
/// accepted in order of decreasing value (ties: earlier frame first) unless
/// an already accepted peak lies closer than `min_gap`.
BeatSequence sppk(const ActivationFunction& act, const PeakPickingConfig& config = {});

struct DpTrackerConfig {
  /// Weight of the squared log-period deviation.
  double lambda = 100.0;
};

/// Dynamic-programming beat tracker with a fixed target tempo.
///
/// score(n) = act(n) + max_p [score(p) - lambda * log((n - p) / period)^2]
/// over predecessors n - p in [ceil(period / 2), floor(2 * period)] frames.
/// When that maximum is not positive, or no predecessor exists, frame n
/// starts a new chain with score act(n). Backtraced from the best-scoring
/// frame (earliest on ties).
/// @throws Error(kDegenerateTempo) if the period is below two frames.
BeatSequence dp_track(const ActivationFunction& act, double global_tempo_bpm,
                      const DpTrackerConfig& config = {});

/// 60 / mean reference IBI.
/// @throws Error(kTooFewBeats) for fewer than two beats.
double global_tempo_from_reference(const BeatSequence& beats);

}  // namespace beateval
