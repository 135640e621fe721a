#include "beateval/core.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace beateval {

namespace {

constexpr std::array<std::string_view, kNumConditions> kConditionNames = {
    "onbeat",
    "offbeat_half",
    "offbeat_one_third",
    "offbeat_two_third",
    "subharmonic_half",
    "subharmonic_third",
    "subharmonic_quarter",
    "harmonic_double",
    "harmonic_triple",
    "harmonic_quadruple",
};

void check_times(std::span<const double> times) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k])) {
      throw Error(ErrorCode::kNonFinite,
                  "beat " + std::to_string(k) + " is not finite");
    }
    if (times[k] < 0.0) {
      throw Error(ErrorCode::kNegativeTime,
                  "beat " + std::to_string(k) + " is negative");
    }
    if (k > 0 && times[k] <= times[k - 1]) {
      throw Error(ErrorCode::kNonMonotonic,
                  "beat " + std::to_string(k) + " is not after its predecessor");
    }
  }
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kNonMonotonic: return "NonMonotonic";
    case ErrorCode::kNegativeTime: return "NegativeTime";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kWindowTooShort: return "WindowTooShort";
    case ErrorCode::kTooFewBeats: return "TooFewBeats";
    case ErrorCode::kDegenerateTempo: return "DegenerateTempo";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingFps: return "MissingFps";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNoPairsFound: return "NoPairsFound";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      line_(line),
      message_(message) {}

BeatSequence::BeatSequence(std::vector<double> times) : times_(std::move(times)) {
  check_times(times_);
}

double BeatSequence::mean_ibi() const {
  if (times_.size() < 2) {
    throw Error(ErrorCode::kTooFewBeats, "mean IBI needs at least two beats");
  }
  return (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
}

ValidatedBeats validate_beats(std::span<const double> raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::kEmptySequence, "no beats given");
  }
  std::vector<double> times;
  times.reserve(raw.size());
  std::size_t duplicates = 0;
  for (double t : raw) {
    if (!times.empty() && t == times.back()) {
      ++duplicates;
      continue;
    }
    times.push_back(t);
  }
  return {BeatSequence(std::move(times)), duplicates};
}

std::string_view condition_name(Condition c) { return kConditionNames[index_of(c)]; }

std::optional<Condition> parse_condition(std::string_view name) {
  for (Condition c : kAllConditions) {
    if (kConditionNames[index_of(c)] == name) return c;
  }
  return std::nullopt;
}

bool is_offbeat(Condition c) noexcept {
  return c == Condition::kOffbeatHalf || c == Condition::kOffbeatOneThird ||
         c == Condition::kOffbeatTwoThird;
}

bool is_subharmonic(Condition c) noexcept {
  return c == Condition::kSubharmonicHalf || c == Condition::kSubharmonicThird ||
         c == Condition::kSubharmonicQuarter;
}

bool is_harmonic(Condition c) noexcept {
  return c == Condition::kHarmonicDouble || c == Condition::kHarmonicTriple ||
         c == Condition::kHarmonicQuadruple;
}

int subharmonic_step(Condition c) {
  switch (c) {
    case Condition::kOnbeat: return 1;
    case Condition::kSubharmonicHalf: return 2;
    case Condition::kSubharmonicThird: return 3;
    case Condition::kSubharmonicQuarter: return 4;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(condition_name(c)) + " is not a subsampling condition");
  }
}

int harmonic_factor(Condition c) {
  switch (c) {
    case Condition::kHarmonicDouble: return 2;
    case Condition::kHarmonicTriple: return 3;
    case Condition::kHarmonicQuadruple: return 4;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(condition_name(c)) + " is not a harmonic condition");
  }
}

std::pair<int, int> offbeat_fraction(Condition c) {
  switch (c) {
    case Condition::kOffbeatHalf: return {1, 2};
    case Condition::kOffbeatOneThird: return {1, 3};
    case Condition::kOffbeatTwoThird: return {2, 3};
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(condition_name(c)) + " is not an offbeat condition");
  }
}

void ToleranceParams::validate() const {
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance cap must be positive");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  }
  if (context_length < 2) {
    throw Error(ErrorCode::kInvalidArgument, "context length L must be >= 2");
  }
}

ActivationFunction::ActivationFunction(double fps, std::vector<double> values)
    : fps_(fps), values_(std::move(values)) {
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  }
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (!(values_[n] >= 0.0 && values_[n] <= 1.0)) {
      throw Error(ErrorCode::kValueOutOfRange,
                  "activation frame " + std::to_string(n) + " outside [0, 1]");
    }
  }
}

double ActivationFunction::duration() const {
  return values_.empty() ? 0.0 : frame_time(values_.size() - 1);
}

CoverageMatrix::CoverageMatrix(std::size_t n_beats) : n_beats_(n_beats) {
  for (auto& r : rows_) r.assign(n_beats, false);
  derive_unions();
}

CoverageMatrix::CoverageMatrix(std::size_t n_beats, std::array<Row, kNumConditions> rows)
    : n_beats_(n_beats), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != n_beats_) {
      throw Error(ErrorCode::kInvalidArgument, "coverage row length mismatch");
    }
  }
  derive_unions();
}

void CoverageMatrix::derive_unions() {
  any_.assign(n_beats_, false);
  offbeat_.assign(n_beats_, false);
  for (Condition c : kAllConditions) {
    const Row& r = rows_[index_of(c)];
    for (std::size_t k = 0; k < n_beats_; ++k) {
      if (!r[k]) continue;
      any_[k] = true;
      if (is_offbeat(c)) offbeat_[k] = true;
    }
  }
}

unsigned CoverageMatrix::condition_mask(std::size_t k) const {
  unsigned mask = 0;
  for (Condition c : kAllConditions) {
    if (rows_[index_of(c)][k]) mask |= 1u << index_of(c);
  }
  return mask;
}

}  // namespace beateval
