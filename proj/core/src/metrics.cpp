#include "beateval/metrics.h"

#include <algorithm>
#include <cmath>

#include "beateval/matching.h"

namespace beateval {

namespace {

constexpr double kStableLow = 0.96;
constexpr double kStableHigh = 1.04;

void require_two(const BeatSequence& beats, const char* what) {
  if (beats.size() < 2) {
    throw Error(ErrorCode::kTooFewBeats, std::string(what) + " needs at least two beats");
  }
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t count_true(const std::vector<bool>& flags) {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

BeatSequence every_nth(const BeatSequence& ref, std::size_t step, std::size_t phase) {
  std::vector<double> out;
  for (std::size_t k = phase; k < ref.size(); k += step) out.push_back(ref[k]);
  return BeatSequence(std::move(out));
}

BeatSequence interpolated(const BeatSequence& ref, std::size_t factor) {
  std::vector<double> out;
  out.reserve(ref.size() * factor);
  for (std::size_t m = 0; m < ref.size(); ++m) {
    out.push_back(ref[m]);
    if (m + 1 == ref.size()) break;
    const double gap = ref[m + 1] - ref[m];
    for (std::size_t k = 1; k < factor; ++k) {
      out.push_back(ref[m] + gap * static_cast<double>(k) / static_cast<double>(factor));
    }
  }
  return BeatSequence(std::move(out));
}

BeatSequence midpoints(const BeatSequence& ref) {
  std::vector<double> out;
  for (std::size_t m = 0; m + 1 < ref.size(); ++m) {
    out.push_back(ref[m] + (ref[m + 1] - ref[m]) / 2.0);
  }
  return BeatSequence(std::move(out));
}

}  // namespace

double harmonic_mean(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

std::size_t count_tolerance_matches(const BeatSequence& ref, const BeatSequence& est,
                                    double window) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t matched = 0;
  while (i < ref.size() && j < est.size()) {
    if (std::abs(ref[i] - est[j]) <= window) {
      ++matched;
      ++i;
      ++j;
    } else if (ref[i] < est[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return matched;
}

PrfScore f1_score(const BeatSequence& ref, const BeatSequence& est, double window) {
  const std::size_t matched = count_tolerance_matches(ref, est, window);
  PrfScore s;
  s.precision = ratio(matched, est.size());
  s.recall = ratio(matched, ref.size());
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

std::vector<bool> continuity_correct(const BeatSequence& ref, const BeatSequence& est,
                                     double gamma) {
  require_two(ref, "continuity");
  const auto r = ref.times();
  auto ibi = [&r](std::size_t i) { return i > 0 ? r[i] - r[i - 1] : r[1] - r[0]; };
  auto phase_ok = [&](std::size_t i, double t) {
    return std::abs(r[i] - t) <= gamma * ibi(i);
  };

  double max_ibi = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) max_ibi = std::max(max_ibi, r[i] - r[i - 1]);
  const double reach = gamma * max_ibi;

  std::vector<bool> correct(est.size(), false);
  for (std::size_t j = 0; j < est.size(); ++j) {
    const double t = est[j];
    auto lo = std::lower_bound(r.begin(), r.end(), t - reach);
    for (auto it = lo; it != r.end() && *it <= t + reach; ++it) {
      const auto i = static_cast<std::size_t>(it - r.begin());
      if (!phase_ok(i, t)) continue;
      if (j == 0) {
        correct[j] = true;
        break;
      }
      if (i == 0 || !phase_ok(i - 1, est[j - 1])) continue;
      const double ref_ibi = r[i] - r[i - 1];
      const double est_ibi = est[j] - est[j - 1];
      if (std::abs(ref_ibi - est_ibi) <= gamma * ref_ibi) {
        correct[j] = true;
        break;
      }
    }
  }
  return correct;
}

double cmlt(const BeatSequence& ref, const BeatSequence& est, double gamma) {
  const auto correct = continuity_correct(ref, est, gamma);
  return ratio(count_true(correct), std::max(ref.size(), est.size()));
}

std::vector<BeatSequence> amlt_reference_variants(const BeatSequence& ref) {
  require_two(ref, "AMLt");
  std::vector<BeatSequence> variants;
  variants.push_back(ref);
  variants.push_back(midpoints(ref));
  for (std::size_t phase = 0; phase < 2; ++phase) variants.push_back(every_nth(ref, 2, phase));
  for (std::size_t phase = 0; phase < 3; ++phase) variants.push_back(every_nth(ref, 3, phase));
  variants.push_back(interpolated(ref, 2));
  variants.push_back(interpolated(ref, 3));
  std::erase_if(variants, [](const BeatSequence& v) { return v.size() < 2; });
  return variants;
}

double amlt(const BeatSequence& ref, const BeatSequence& est, double gamma) {
  double best = 0.0;
  for (const BeatSequence& variant : amlt_reference_variants(ref)) {
    best = std::max(best, cmlt(variant, est, gamma));
  }
  return best;
}

PrfScore l_correct_fmeasure(const BeatSequence& ref, const BeatSequence& est,
                            const ToleranceParams& params) {
  const LCorrectFlags flags = l_correct_detection(ref, est, params);
  PrfScore s;
  s.recall = ratio(count_true(flags.ref), ref.size());
  s.precision = ratio(count_true(flags.est), est.size());
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

AcrScores acr_scores(const CoverageMatrix& cm) {
  AcrScores s;
  const std::size_t n = cm.n_beats();
  for (Condition c : kAllConditions) s.per_condition[index_of(c)] = ratio(count_true(cm.row(c)), n);
  s.any = ratio(count_true(cm.any_row()), n);
  s.offbeat = ratio(count_true(cm.offbeat_row()), n);
  return s;
}

std::size_t count_level_switches(const CoverageMatrix& cm) {
  std::size_t switches = 0;
  bool have_prev = false;
  unsigned prev = 0;
  for (std::size_t k = 0; k < cm.n_beats(); ++k) {
    if (!cm.any_row()[k]) continue;
    const unsigned mask = cm.condition_mask(k);
    if (have_prev && (mask & prev) == 0) ++switches;
    prev = mask;
    have_prev = true;
  }
  return switches;
}

double mlsr(const CoverageMatrix& cm) {
  return ratio(count_level_switches(cm), count_true(cm.any_row()));
}

double mean_track_tempo(const BeatSequence& beats) {
  require_two(beats, "mean track tempo");
  return 60.0 / beats.mean_ibi();
}

StableTempiCount count_stable_tempi(const BeatSequence& beats) {
  require_two(beats, "stable tempi");
  const double mean_ibi = beats.mean_ibi();
  StableTempiCount count;
  for (std::size_t k = 1; k < beats.size(); ++k) {
    // (60 / ibi) / (60 / mean_ibi)
    const double normalized = mean_ibi / (beats[k] - beats[k - 1]);
    if (normalized >= kStableLow && normalized <= kStableHigh) ++count.stable;
    ++count.total;
  }
  return count;
}

double stable_tempi_percentage(const BeatSequence& beats) {
  const StableTempiCount c = count_stable_tempi(beats);
  return ratio(c.stable, c.total);
}

}  // namespace beateval
