/// @file variants.h
/// @brief Metric-level variants of reference beat windows.
///
/// For every reference instance i, each of the ten conditions yields a
/// modified window of the reference around b_i: the plain onbeat window,
/// offbeat shifts, subsampled (subharmonic) windows and linearly
/// interpolated (harmonic) windows. A window carries its own adaptive
/// tolerance and the reference indices it credits when it is matched.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "beateval/core.h"

namespace beateval {

struct VariantWindow {
  Condition condition = Condition::kOnbeat;
  std::size_t instance = 0;
  std::vector<double> times;
  double epsilon = 0.0;
  /// Reference indices marked covered on a match, ascending.
  std::vector<std::size_t> cover_set;
};

/// min(cap, gamma * mean consecutive difference of `times`).
/// @throws Error(kWindowTooShort) for fewer than two times.
double adaptive_epsilon(std::span<const double> times, const ToleranceParams& params);

/// Length of a harmonic window: L + (h - 1)(L - 1).
std::size_t harmonic_window_length(int context_length, int factor);

/// {b_i, b_{i+d}, ..., b_{i+d(L-1)}}; step 1 is the onbeat window.
/// Empty when the reference is too short.
std::optional<VariantWindow> subharmonic_variant(const BeatSequence& beats,
                                                 std::size_t instance, int step,
                                                 const ToleranceParams& params);

/// The L anchors b_i..b_{i+L-1} with factor-1 equally spaced points inserted
/// into each interval. Only the anchors are coverable.
std::optional<VariantWindow> harmonic_variant(const BeatSequence& beats,
                                              std::size_t instance, int factor,
                                              const ToleranceParams& params);

/// {b_m + num/den * (b_{m+1} - b_m)} for m in [i, i+L); needs b_{i+L}.
/// Covers the anchors b_i..b_{i+L-1}.
std::optional<VariantWindow> offbeat_variant(const BeatSequence& beats,
                                             std::size_t instance, int numerator,
                                             int denominator,
                                             const ToleranceParams& params);

/// Dispatches on the condition.
std::optional<VariantWindow> make_variant(const BeatSequence& beats,
                                          std::size_t instance, Condition condition,
                                          const ToleranceParams& params);

/// Every non-empty window, ordered by instance, then condition.
/// @throws Error(kTooFewBeats) for fewer than two reference beats.
std::vector<VariantWindow> all_variants(const BeatSequence& beats,
                                        const ToleranceParams& params);

}  // namespace beateval
