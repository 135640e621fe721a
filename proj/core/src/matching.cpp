#include "beateval/matching.h"

#include <algorithm>
#include <cmath>

namespace beateval {

namespace {

bool within(double a, double b, double epsilon) { return std::abs(a - b) <= epsilon; }

}  // namespace

std::optional<std::size_t> window_match(std::span<const double> times, double epsilon,
                                        const BeatSequence& est) {
  if (times.empty() || est.size() < times.size()) return std::nullopt;
  const auto est_times = est.times();
  const std::size_t last_start = est.size() - times.size();
  const double first = times.front();

  // Candidate starts form a short run around the first window time; the
  // scan bounds are loose and the predicate below is the exact test.
  auto it = std::lower_bound(est_times.begin(), est_times.end(), first - 2.0 * epsilon);
  std::size_t j = static_cast<std::size_t>(it - est_times.begin());
  j = j > 0 ? j - 1 : 0;
  for (; j <= last_start && est_times[j] <= first + 2.0 * epsilon; ++j) {
    if (!within(first, est_times[j], epsilon)) continue;
    bool ok = true;
    for (std::size_t tau = 1; tau < times.size(); ++tau) {
      if (!within(times[tau], est_times[j + tau], epsilon)) {
        ok = false;
        break;
      }
    }
    if (ok) return j;
  }
  return std::nullopt;
}

CoverageMatrix coverage_matrix(const BeatSequence& ref, const BeatSequence& est,
                               const ToleranceParams& params) {
  std::array<CoverageMatrix::Row, kNumConditions> rows;
  for (auto& r : rows) r.assign(ref.size(), false);

  for (const VariantWindow& w : all_variants(ref, params)) {
    auto& row = rows[index_of(w.condition)];
    // Skip windows whose beats are already all credited.
    if (std::all_of(w.cover_set.begin(), w.cover_set.end(),
                    [&row](std::size_t k) { return row[k]; })) {
      continue;
    }
    if (!window_match(w, est)) continue;
    for (std::size_t k : w.cover_set) row[k] = true;
  }
  return CoverageMatrix(ref.size(), std::move(rows));
}

LCorrectFlags l_correct_detection(const BeatSequence& ref, const BeatSequence& est,
                                  const ToleranceParams& params) {
  params.validate();
  LCorrectFlags flags{std::vector<bool>(ref.size(), false),
                      std::vector<bool>(est.size(), false)};
  const auto len = static_cast<std::size_t>(params.context_length);
  if (ref.size() < len) return flags;

  for (std::size_t i = 0; i < ref.size(); ++i) {
    for (Condition c : {Condition::kOnbeat, Condition::kOffbeatHalf}) {
      auto w = make_variant(ref, i, c, params);
      if (!w) continue;
      const auto j = window_match(w->times, params.cap, est);
      if (!j) continue;
      for (std::size_t k : w->cover_set) flags.ref[k] = true;
      for (std::size_t tau = 0; tau < w->times.size(); ++tau) flags.est[*j + tau] = true;
    }
  }
  return flags;
}

}  // namespace beateval
