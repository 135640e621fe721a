/// @file metrics.h
/// @brief Scalar beat-tracking metrics: F1, continuity, L-correct, ACR, MLSR,
/// and per-track tempo statistics.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "beateval/core.h"

namespace beateval {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// 2PR / (P + R), 0 when both are 0.
double harmonic_mean(double precision, double recall);

/// One-to-one tolerance matching, each beat used at most once. Greedy in
/// time order, which is a maximum matching for equal-width windows.
std::size_t count_tolerance_matches(const BeatSequence& ref, const BeatSequence& est,
                                    double window);

PrfScore f1_score(const BeatSequence& ref, const BeatSequence& est, double window = 0.070);

/// Per-estimate continuity correctness.
///
/// Estimate j is correct when some reference b_i lies within
/// gamma * (b_i - b_{i-1}) of it, estimate j-1 lies within the same kind of
/// window around b_{i-1}, and the two intervals differ by at most
/// gamma * (b_i - b_{i-1}). The first estimate only needs the phase check.
/// The interval used for b_0 is b_1 - b_0.
std::vector<bool> continuity_correct(const BeatSequence& ref, const BeatSequence& est,
                                     double gamma = 0.175);

/// (#continuity-correct estimates) / max(|ref|, |est|).
double cmlt(const BeatSequence& ref, const BeatSequence& est, double gamma = 0.175);

/// Whole-track reference variants allowed by AMLt: onbeat, half offbeat,
/// half tempo (2 phases), third tempo (3 phases), double and triple tempo.
/// Variants with fewer than two beats are dropped.
std::vector<BeatSequence> amlt_reference_variants(const BeatSequence& ref);

/// Best cmlt over amlt_reference_variants(ref).
double amlt(const BeatSequence& ref, const BeatSequence& est, double gamma = 0.175);

/// L-correct recall, precision and F^L from l_correct_detection.
PrfScore l_correct_fmeasure(const BeatSequence& ref, const BeatSequence& est,
                            const ToleranceParams& params);

struct AcrScores {
  std::array<double, kNumConditions> per_condition{};
  double any = 0.0;
  double offbeat = 0.0;

  double operator[](Condition c) const { return per_condition[index_of(c)]; }
};

AcrScores acr_scores(const CoverageMatrix& cm);

/// Share of covered beats whose covering condition set is disjoint from that
/// of the previous covered beat.
double mlsr(const CoverageMatrix& cm);

/// Number of metric-level switches counted by mlsr().
std::size_t count_level_switches(const CoverageMatrix& cm);

/// 60 / mean IBI.
double mean_track_tempo(const BeatSequence& beats);

struct StableTempiCount {
  std::size_t stable = 0;
  std::size_t total = 0;
};

/// Intervals whose tempo, normalized by the mean track tempo, lies in
/// [0.96, 1.04].
StableTempiCount count_stable_tempi(const BeatSequence& beats);

/// count_stable_tempi as a fraction in [0, 1].
double stable_tempi_percentage(const BeatSequence& beats);

}  // namespace beateval
