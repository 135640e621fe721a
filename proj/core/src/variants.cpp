#include "beateval/variants.h"

#include <algorithm>
#include <string>

namespace beateval {

namespace {

void check_instance(const BeatSequence& beats, std::size_t instance) {
  if (instance >= beats.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance " + std::to_string(instance) + " out of range");
  }
}

std::size_t context_of(const ToleranceParams& params) {
  params.validate();
  return static_cast<std::size_t>(params.context_length);
}

VariantWindow finish(Condition condition, std::size_t instance, std::vector<double> times,
                     std::vector<std::size_t> cover_set, const ToleranceParams& params) {
  VariantWindow w;
  w.condition = condition;
  w.instance = instance;
  w.epsilon = adaptive_epsilon(times, params);
  w.times = std::move(times);
  w.cover_set = std::move(cover_set);
  return w;
}

}  // namespace

double adaptive_epsilon(std::span<const double> times, const ToleranceParams& params) {
  if (times.size() < 2) {
    throw Error(ErrorCode::kWindowTooShort, "adaptive epsilon needs two or more times");
  }
  const double mean_ibi =
      (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  return std::min(params.cap, params.gamma * mean_ibi);
}

std::size_t harmonic_window_length(int context_length, int factor) {
  return static_cast<std::size_t>(context_length + (factor - 1) * (context_length - 1));
}

std::optional<VariantWindow> subharmonic_variant(const BeatSequence& beats,
                                                 std::size_t instance, int step,
                                                 const ToleranceParams& params) {
  if (step < 1 || step > 4) {
    throw Error(ErrorCode::kInvalidArgument, "subharmonic step must be 1..4");
  }
  check_instance(beats, instance);
  const std::size_t len = context_of(params);
  const auto d = static_cast<std::size_t>(step);
  if (instance + d * (len - 1) >= beats.size()) return std::nullopt;

  std::vector<double> times;
  std::vector<std::size_t> cover;
  times.reserve(len);
  cover.reserve(len);
  for (std::size_t tau = 0; tau < len; ++tau) {
    const std::size_t m = instance + d * tau;
    times.push_back(beats[m]);
    cover.push_back(m);
  }
  static constexpr Condition kByStep[] = {Condition::kOnbeat, Condition::kSubharmonicHalf,
                                          Condition::kSubharmonicThird,
                                          Condition::kSubharmonicQuarter};
  return finish(kByStep[d - 1], instance, std::move(times), std::move(cover), params);
}

std::optional<VariantWindow> harmonic_variant(const BeatSequence& beats,
                                              std::size_t instance, int factor,
                                              const ToleranceParams& params) {
  if (factor < 2 || factor > 4) {
    throw Error(ErrorCode::kInvalidArgument, "harmonic factor must be 2..4");
  }
  check_instance(beats, instance);
  const std::size_t len = context_of(params);
  if (instance + len - 1 >= beats.size()) return std::nullopt;

  const auto h = static_cast<std::size_t>(factor);
  std::vector<double> times;
  std::vector<std::size_t> cover;
  times.reserve(harmonic_window_length(params.context_length, factor));
  cover.reserve(len);
  for (std::size_t m = instance; m < instance + len; ++m) {
    times.push_back(beats[m]);
    cover.push_back(m);
    if (m + 1 == instance + len) break;
    const double gap = beats[m + 1] - beats[m];
    for (std::size_t k = 1; k < h; ++k) {
      times.push_back(beats[m] + gap * static_cast<double>(k) / static_cast<double>(h));
    }
  }
  static constexpr Condition kByFactor[] = {Condition::kHarmonicDouble,
                                            Condition::kHarmonicTriple,
                                            Condition::kHarmonicQuadruple};
  return finish(kByFactor[h - 2], instance, std::move(times), std::move(cover), params);
}

std::optional<VariantWindow> offbeat_variant(const BeatSequence& beats,
                                             std::size_t instance, int numerator,
                                             int denominator,
                                             const ToleranceParams& params) {
  Condition condition;
  if (numerator == 1 && denominator == 2) {
    condition = Condition::kOffbeatHalf;
  } else if (numerator == 1 && denominator == 3) {
    condition = Condition::kOffbeatOneThird;
  } else if (numerator == 2 && denominator == 3) {
    condition = Condition::kOffbeatTwoThird;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "offbeat fraction must be 1/2, 1/3 or 2/3");
  }
  check_instance(beats, instance);
  const std::size_t len = context_of(params);
  if (instance + len >= beats.size()) return std::nullopt;

  std::vector<double> times;
  std::vector<std::size_t> cover;
  times.reserve(len);
  cover.reserve(len);
  for (std::size_t m = instance; m < instance + len; ++m) {
    const double gap = beats[m + 1] - beats[m];
    times.push_back(beats[m] + gap * static_cast<double>(numerator) /
                                   static_cast<double>(denominator));
    cover.push_back(m);
  }
  return finish(condition, instance, std::move(times), std::move(cover), params);
}

std::optional<VariantWindow> make_variant(const BeatSequence& beats,
                                          std::size_t instance, Condition condition,
                                          const ToleranceParams& params) {
  if (is_harmonic(condition)) {
    return harmonic_variant(beats, instance, harmonic_factor(condition), params);
  }
  if (is_offbeat(condition)) {
    const auto [num, den] = offbeat_fraction(condition);
    return offbeat_variant(beats, instance, num, den, params);
  }
  return subharmonic_variant(beats, instance, subharmonic_step(condition), params);
}

std::vector<VariantWindow> all_variants(const BeatSequence& beats,
                                        const ToleranceParams& params) {
  if (beats.size() < 2) {
    throw Error(ErrorCode::kTooFewBeats, "variants need at least two reference beats");
  }
  params.validate();
  std::vector<VariantWindow> windows;
  windows.reserve(beats.size() * kNumConditions);
  for (std::size_t i = 0; i < beats.size(); ++i) {
    for (Condition c : kAllConditions) {
      if (auto w = make_variant(beats, i, c, params)) windows.push_back(std::move(*w));
    }
  }
  return windows;
}

}  // namespace beateval
