/// @file matching.h
/// @brief L-correct window matching and coverage assembly.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "beateval/core.h"
#include "beateval/variants.h"

namespace beateval {

/// Smallest j such that |times[tau] - est[j + tau]| <= epsilon for every tau,
/// i.e. the window is matched by consecutive estimates without any extra or
/// missing beat in between.
std::optional<std::size_t> window_match(std::span<const double> times, double epsilon,
                                        const BeatSequence& est);

inline std::optional<std::size_t> window_match(const VariantWindow& window,
                                               const BeatSequence& est) {
  return window_match(window.times, window.epsilon, est);
}

/// Marks the cover set of every matched variant window, all ten conditions,
/// adaptive tolerance.
CoverageMatrix coverage_matrix(const BeatSequence& ref, const BeatSequence& est,
                               const ToleranceParams& params);

struct LCorrectFlags {
  std::vector<bool> ref;
  std::vector<bool> est;
};

/// Classic L-correct detection: onbeat and half-offbeat windows only, with
/// the fixed tolerance `params.cap`.
LCorrectFlags l_correct_detection(const BeatSequence& ref, const BeatSequence& est,
                                  const ToleranceParams& params);

}  // namespace beateval
