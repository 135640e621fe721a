/// @file core.h
/// @brief Domain types shared by every beateval module.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace beateval {

enum class ErrorCode {
  kEmptySequence,
  kNonMonotonic,
  kNegativeTime,
  kNonFinite,
  kInvalidArgument,
  kWindowTooShort,
  kTooFewBeats,
  kDegenerateTempo,
  kParseError,
  kMissingFps,
  kValueOutOfRange,
  kIoError,
  kNoPairsFound,
};

std::string_view error_code_name(ErrorCode code);

/// @brief Exception type raised by all beateval operations.
///
/// `line()` is set for file-parsing errors (1-based), 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  /// The message without the error-code prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::size_t line_;
  std::string message_;
};

/// @brief Strictly increasing, finite, non-negative event times in seconds.
///
/// May be empty (a tracker can legitimately emit nothing); `validate_beats`
/// is the checked entry point for untrusted input and rejects empty lists.
class BeatSequence {
 public:
  BeatSequence() = default;

  /// @throws Error if `times` violates the ordering/range invariants.
  explicit BeatSequence(std::vector<double> times);

  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  double operator[](std::size_t k) const { return times_[k]; }
  auto begin() const noexcept { return times_.begin(); }
  auto end() const noexcept { return times_.end(); }

  /// Mean inter-beat interval, (last - first) / (n - 1). Requires n >= 2.
  double mean_ibi() const;

  friend bool operator==(const BeatSequence&, const BeatSequence&) = default;

 private:
  std::vector<double> times_;
};

struct ValidatedBeats {
  BeatSequence beats;
  std::size_t duplicates_removed = 0;
};

/// Collapses exact duplicate timestamps and checks the remaining invariants.
ValidatedBeats validate_beats(std::span<const double> raw);

/// The ten metric-level conditions, in canonical report order.
enum class Condition {
  kOnbeat,
  kOffbeatHalf,
  kOffbeatOneThird,
  kOffbeatTwoThird,
  kSubharmonicHalf,
  kSubharmonicThird,
  kSubharmonicQuarter,
  kHarmonicDouble,
  kHarmonicTriple,
  kHarmonicQuadruple,
};

inline constexpr std::size_t kNumConditions = 10;

inline constexpr std::array<Condition, kNumConditions> kAllConditions = {
    Condition::kOnbeat,           Condition::kOffbeatHalf,
    Condition::kOffbeatOneThird,  Condition::kOffbeatTwoThird,
    Condition::kSubharmonicHalf,  Condition::kSubharmonicThird,
    Condition::kSubharmonicQuarter, Condition::kHarmonicDouble,
    Condition::kHarmonicTriple,   Condition::kHarmonicQuadruple,
};

constexpr std::size_t index_of(Condition c) noexcept {
  return static_cast<std::size_t>(c);
}

/// Stable serialized identifier, e.g. "harmonic_double".
std::string_view condition_name(Condition c);
std::optional<Condition> parse_condition(std::string_view name);

bool is_offbeat(Condition c) noexcept;
bool is_subharmonic(Condition c) noexcept;
bool is_harmonic(Condition c) noexcept;

/// Sampling stride of a subharmonic condition (1 for onbeat).
int subharmonic_step(Condition c);
/// Tempo multiple of a harmonic condition.
int harmonic_factor(Condition c);
/// Offbeat phase as numerator/denominator of the beat interval.
std::pair<int, int> offbeat_fraction(Condition c);

struct ToleranceParams {
  double cap = 0.070;
  double gamma = 0.175;
  int context_length = 2;

  /// @throws Error(kInvalidArgument) unless cap > 0, 0 < gamma < 1, L >= 2.
  void validate() const;

  friend bool operator==(const ToleranceParams&,
                         const ToleranceParams&) = default;
};

/// Frame-wise beat likelihood sampled at a fixed rate.
class ActivationFunction {
 public:
  ActivationFunction() = default;
  /// @throws Error if fps <= 0 or any value is outside [0, 1].
  ActivationFunction(double fps, std::vector<double> values);

  double fps() const noexcept { return fps_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t n) const { return values_[n]; }
  double frame_time(std::size_t n) const { return static_cast<double>(n) / fps_; }
  /// Time of the last frame, 0 for an empty function.
  double duration() const;

  friend bool operator==(const ActivationFunction&,
                         const ActivationFunction&) = default;

 private:
  double fps_ = 1.0;
  std::vector<double> values_;
};

/// Per-reference-beat coverage under each metric-level condition.
class CoverageMatrix {
 public:
  using Row = std::vector<bool>;

  CoverageMatrix() = default;
  /// All-false matrix for `n_beats` reference beats.
  explicit CoverageMatrix(std::size_t n_beats);
  /// @throws Error(kInvalidArgument) if any row length differs from n_beats.
  CoverageMatrix(std::size_t n_beats, std::array<Row, kNumConditions> rows);

  std::size_t n_beats() const noexcept { return n_beats_; }
  const Row& row(Condition c) const { return rows_[index_of(c)]; }
  const Row& any_row() const noexcept { return any_; }
  const Row& offbeat_row() const noexcept { return offbeat_; }
  bool covered(Condition c, std::size_t k) const { return rows_[index_of(c)][k]; }

  /// Bitmask over conditions (bit index_of(c)) covering beat k.
  unsigned condition_mask(std::size_t k) const;

  friend bool operator==(const CoverageMatrix&, const CoverageMatrix&) = default;

 private:
  void derive_unions();

  std::size_t n_beats_ = 0;
  std::array<Row, kNumConditions> rows_;
  Row any_;
  Row offbeat_;
};

}  // namespace beateval
