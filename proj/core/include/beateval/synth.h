/// @file synth.h
/// @brief Synthetic reference/estimate pairs with scripted metric-level
/// behaviour, and synthetic activation curves.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "beateval/core.h"

namespace beateval {

/// Piecewise-linear tempo in BPM over time, held constant outside the knots.
class TempoCurve {
 public:
  struct Knot {
    double time = 0.0;
    double bpm = 120.0;
  };

  TempoCurve() = default;
  /// @throws Error(kInvalidArgument) unless knot times strictly increase and
  /// every bpm is positive.
  explicit TempoCurve(std::vector<Knot> knots);
  static TempoCurve constant(double bpm) { return TempoCurve({{0.0, bpm}}); }

  const std::vector<Knot>& knots() const noexcept { return knots_; }
  double bpm_at(double t) const;

 private:
  std::vector<Knot> knots_{{0.0, 120.0}};
};

struct ScenarioSegment {
  std::size_t start_beat = 0;
  Condition condition = Condition::kOnbeat;
  double jitter_std = 0.0;
};

struct ActivationSettings {
  double fps = 100.0;
  double peak_width = 0.02;
  double noise_std = 0.0;
};

struct Scenario {
  TempoCurve tempo;
  double duration = 30.0;
  std::vector<ScenarioSegment> segments{{}};
  ActivationSettings activation;

  /// @throws Error(kInvalidArgument) unless segments start at beat 0, are
  /// strictly ordered and all start before `n_beats`.
  void validate(std::size_t n_beats) const;
};

/// Beats at the times where the integrated tempo reaches whole beat counts,
/// first beat at 0, all strictly before `duration`.
BeatSequence gen_reference(const TempoCurve& tempo, double duration);

struct GeneratedEstimate {
  BeatSequence beats;
  /// Jitter reordered neighbouring beats and the output was re-sorted.
  bool resorted = false;
  std::size_t duplicates_removed = 0;
};

/// Plays each segment's condition over its reference beats [start, next start).
///
/// Subsampling starts at the segment's first beat. Harmonic and offbeat
/// segments use the intervals that begin inside the segment. Jitter is
/// Gaussian, truncated at 3 sigma, seeded.
GeneratedEstimate gen_estimate(const BeatSequence& ref, const Scenario& scenario,
                               std::uint64_t seed);

/// Gaussian bumps (std `peak_width`, cut at 4 widths) centred on `beats`,
/// plus seeded Gaussian noise, clipped to [0, 1]. Frames cover [0, duration].
ActivationFunction gen_activation(const BeatSequence& beats, double duration,
                                  const ActivationSettings& settings, std::uint64_t seed);

/// Parses the key-value scenario format:
///
///     # comment
///     duration = 60
///     tempo = 0:120, 30:90        (time:bpm knots, or a single bpm)
///     segment = 0 harmonic_double 0.0
///     segment = 32 harmonic_quadruple 0.005
///     act_fps = 100
///     act_peak_width = 0.02
///     act_noise = 0.0
///
/// @throws Error(kParseError) with a 1-based line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

}  // namespace beateval
