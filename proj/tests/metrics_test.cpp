#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "beateval/matching.h"
#include "beateval/metrics.h"
#include "oracles.h"

using namespace beateval;

namespace {

std::vector<double> constant_times(std::size_t n, double ibi, double start = 0.0) {
  std::vector<double> t;
  for (std::size_t k = 0; k < n; ++k) t.push_back(start + ibi * static_cast<double>(k));
  return t;
}

std::vector<double> interpolate(const std::vector<double>& b, int h) {
  std::vector<double> out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    out.push_back(b[k]);
    if (k + 1 == b.size()) break;
    for (int q = 1; q < h; ++q) out.push_back(b[k] + (b[k + 1] - b[k]) * q / h);
  }
  return out;
}

double oracle_cmlt(const std::vector<double>& ref, const std::vector<double>& est) {
  const auto c = oracle::continuity(ref, est, 0.175);
  return static_cast<double>(std::count(c.begin(), c.end(), true)) /
         static_cast<double>(std::max(ref.size(), est.size()));
}

CoverageMatrix matrix_from(std::size_t n,
                           std::initializer_list<std::pair<Condition, std::vector<bool>>> rows) {
  std::array<CoverageMatrix::Row, kNumConditions> r;
  for (auto& row : r) row.assign(n, false);
  for (const auto& [c, v] : rows) r[index_of(c)] = v;
  return CoverageMatrix(n, r);
}

std::vector<bool> span_flags(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<bool> v(n, false);
  for (std::size_t k = lo; k < hi; ++k) v[k] = true;
  return v;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("f1 examples") {
    const BeatSequence ref(constant_times(20, 0.5));
    const auto id = f1_score(ref, ref);
    CHECK(id.precision == 1.0);
    CHECK(id.recall == 1.0);
    CHECK(id.f1 == 1.0);

    const auto dbl = interpolate(constant_times(20, 0.5), 2);
    const auto s = f1_score(ref, BeatSequence(dbl));
    const std::size_t brute = oracle::max_matching(constant_times(20, 0.5), dbl, 0.07);
    CHECK(brute == 20);
    CHECK(s.recall == 1.0);
    CHECK(s.precision == doctest::Approx(20.0 / 39.0));
    CHECK(s.f1 == doctest::Approx(2.0 / 3.0).epsilon(0.02));

    const auto empty = f1_score(ref, BeatSequence());
    CHECK(empty.precision == 0.0);
    CHECK(empty.recall == 0.0);
    CHECK(empty.f1 == 0.0);
  }

  TEST_CASE("greedy tolerance matching is a maximum matching") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const auto ref = oracle::random_beats(rng, 1 + rng() % 20, 0.02, 0.3);
      const auto est = oracle::random_beats(rng, 1 + rng() % 20, 0.02, 0.3, 0.05);
      const double w = 0.01 + 0.1 * static_cast<double>(rng() % 10) / 10.0;
      CHECK(count_tolerance_matches(BeatSequence(ref), BeatSequence(est), w) ==
            oracle::max_matching(ref, est, w));
    }
  }

  TEST_CASE("continuity examples") {
    const auto r = constant_times(20, 0.5);
    const BeatSequence ref(r);
    const auto id = continuity_correct(ref, ref);
    CHECK(std::all_of(id.begin(), id.end(), [](bool b) { return b; }));

    auto displaced = r;
    displaced[7] += 0.3 * 0.5;
    const auto d = continuity_correct(ref, BeatSequence(displaced));
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(d[j] == (j != 7 && j != 8));
    CHECK(d == oracle::continuity(r, displaced, 0.175));

    const auto dbl = interpolate(r, 2);
    const auto c = continuity_correct(ref, BeatSequence(dbl));
    CHECK(std::count(c.begin(), c.end(), true) <= 1);
  }

  TEST_CASE("continuity agrees with direct evaluation on random input") {
    std::mt19937_64 rng(32);
    std::normal_distribution<double> jitter(0.0, 0.04);
    for (int trial = 0; trial < 300; ++trial) {
      const auto r = oracle::random_beats(rng, 2 + rng() % 30, 0.2, 0.9);
      std::vector<double> e;
      for (double t : r) {
        if (rng() % 7 == 0) continue;
        e.push_back(std::max(0.0, t + jitter(rng)));
        if (rng() % 9 == 0) e.push_back(std::max(0.0, t + 0.2 + jitter(rng)));
      }
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      CHECK(continuity_correct(BeatSequence(r), BeatSequence(e)) == oracle::continuity(r, e, 0.175));
    }
  }

  TEST_CASE("cmlt and amlt") {
    const auto r = constant_times(40, 0.5);
    const BeatSequence ref(r);
    CHECK(cmlt(ref, ref) == 1.0);
    CHECK(amlt(ref, ref) == 1.0);

    const BeatSequence dbl(interpolate(r, 2));
    CHECK(cmlt(ref, dbl) < 0.05);
    CHECK(amlt(ref, dbl) == doctest::Approx(1.0));

    // Onbeat for the first half, double tempo afterwards.
    std::vector<double> mixed(r.begin(), r.begin() + 20);
    const std::vector<double> tail(r.begin() + 20, r.end());
    for (double t : interpolate(tail, 2)) mixed.push_back(t);
    mixed.erase(std::unique(mixed.begin(), mixed.end()), mixed.end());
    // Brute force: best single whole-track variant via direct evaluation.
    std::vector<std::vector<double>> variants{r, interpolate(r, 2), interpolate(r, 3)};
    std::vector<double> mids;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) mids.push_back((r[k] + r[k + 1]) / 2);
    variants.push_back(mids);
    for (std::size_t step : {2u, 3u}) {
      for (std::size_t ph = 0; ph < step; ++ph) {
        std::vector<double> v;
        for (std::size_t k = ph; k < r.size(); k += step) v.push_back(r[k]);
        variants.push_back(v);
      }
    }
    double best = 0.0;
    for (const auto& v : variants) best = std::max(best, oracle_cmlt(v, mixed));
    const double got = amlt(ref, BeatSequence(mixed));
    CHECK(got == doctest::Approx(best));
    CHECK(got == doctest::Approx(0.5).epsilon(0.1));
  }

  TEST_CASE("amlt never falls below cmlt") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
      const BeatSequence ref(oracle::random_beats(rng, 2 + rng() % 30, 0.3, 0.8));
      const BeatSequence est(oracle::random_beats(rng, 1 + rng() % 50, 0.1, 0.8));
      const double c = cmlt(ref, est);
      const double a = amlt(ref, est);
      CHECK(a >= c);
      CHECK(c >= 0.0);
      CHECK(a <= 1.0);
    }
  }

  TEST_CASE("L-correct F-measure") {
    const auto r = constant_times(24, 0.5);
    const BeatSequence ref(r);
    const auto id = l_correct_fmeasure(ref, ref, {});
    CHECK(id.recall == 1.0);
    CHECK(id.precision == 1.0);
    CHECK(id.f1 == 1.0);

    std::vector<double> mids;
    for (std::size_t k = 0; k + 1 < r.size(); ++k) mids.push_back(r[k] + 0.25);
    const auto off = l_correct_fmeasure(ref, BeatSequence(mids), {});
    // Every offbeat is matched; only the final reference beat, which closes no
    // interval, is left uncovered.
    CHECK(off.precision == 1.0);
    CHECK(off.recall == doctest::Approx(23.0 / 24.0));

    std::vector<double> half;
    for (std::size_t k = 0; k < r.size(); k += 2) half.push_back(r[k]);
    const auto h = l_correct_fmeasure(ref, BeatSequence(half), {});
    CHECK(h.recall == 0.0);
    CHECK(h.f1 == 0.0);
  }

  TEST_CASE("acr_scores examples") {
    const std::size_t n = 10;
    std::array<CoverageMatrix::Row, kNumConditions> all;
    for (auto& row : all) row.assign(n, true);
    const auto full = acr_scores(CoverageMatrix(n, all));
    for (Condition c : kAllConditions) CHECK(full[c] == 1.0);
    CHECK(full.any == 1.0);
    CHECK(full.offbeat == 1.0);

    const auto dbl = acr_scores(matrix_from(n, {{Condition::kHarmonicDouble, span_flags(n, 0, n)}}));
    CHECK(dbl[Condition::kHarmonicDouble] == 1.0);
    CHECK(dbl.any == 1.0);
    for (Condition c : kAllConditions) {
      if (c != Condition::kHarmonicDouble) CHECK(dbl[c] == 0.0);
    }

    const auto off = acr_scores(matrix_from(n, {{Condition::kOffbeatHalf, span_flags(n, 0, 5)},
                                                {Condition::kOffbeatOneThird, span_flags(n, 5, n)}}));
    CHECK(off.offbeat == 1.0);
    CHECK(off[Condition::kOffbeatHalf] == 0.5);
  }

  TEST_CASE("acr union bounds on random matrices") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng() % 40;
      std::array<CoverageMatrix::Row, kNumConditions> rows;
      for (auto& row : rows) {
        row.resize(n);
        const unsigned density = 1 + rng() % 6;
        for (std::size_t k = 0; k < n; ++k) row[k] = rng() % density == 0;
      }
      const auto s = acr_scores(CoverageMatrix(n, rows));
      double sum = 0.0, mx = 0.0;
      for (double v : s.per_condition) {
        sum += v;
        mx = std::max(mx, v);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(s.any >= mx);
      CHECK(s.any <= sum + 1e-12);
      CHECK(s.any >= s.offbeat);
      CHECK(s.any <= 1.0);
    }
  }

  TEST_CASE("mlsr") {
    const std::size_t n = 12;
    CHECK(mlsr(matrix_from(n, {{Condition::kOnbeat, span_flags(n, 0, n)}})) == 0.0);
    CHECK(mlsr(CoverageMatrix(n)) == 0.0);

    // Onbeat on beats 0..5, double on 6..11, no beat carries both: one switch
    // at beat 6 out of 12 covered beats.
    const auto sw = matrix_from(n, {{Condition::kOnbeat, span_flags(n, 0, 6)},
                                    {Condition::kHarmonicDouble, span_flags(n, 6, n)}});
    CHECK(count_level_switches(sw) == 1);
    CHECK(mlsr(sw) == doctest::Approx(1.0 / 12.0));

    // Sharing beat 6 between the two levels removes the switch.
    const auto overlap = matrix_from(n, {{Condition::kOnbeat, span_flags(n, 0, 7)},
                                         {Condition::kHarmonicDouble, span_flags(n, 6, n)}});
    CHECK(mlsr(overlap) == 0.0);

    // Uncovered gaps are skipped when looking for the previous covered beat.
    const auto gapped = matrix_from(n, {{Condition::kOnbeat, span_flags(n, 0, 4)},
                                        {Condition::kOffbeatHalf, span_flags(n, 6, 9)}});
    CHECK(count_level_switches(gapped) == 1);
    CHECK(mlsr(gapped) == doctest::Approx(1.0 / 7.0));
  }

  TEST_CASE("tempo statistics") {
    const BeatSequence steady(constant_times(30, 0.5));
    CHECK(stable_tempi_percentage(steady) == 1.0);
    CHECK(mean_track_tempo(steady) == doctest::Approx(120.0));

    std::vector<double> alt{0.0};
    for (int k = 0; k < 30; ++k) alt.push_back(alt.back() + (k % 2 == 0 ? 0.5 : 0.6));
    CHECK(stable_tempi_percentage(BeatSequence(alt)) == 0.0);

    CHECK(mean_track_tempo(BeatSequence({1.0, 1.5})) == doctest::Approx(120.0));
    CHECK_THROWS_AS(mean_track_tempo(BeatSequence({1.0})), Error);

    // 3 of 4 intervals within 4 % of the mean tempo.
    const BeatSequence mostly({0.0, 0.5, 1.0, 1.5, 2.2});
    const auto cnt = count_stable_tempi(mostly);
    CHECK(cnt.total == 4);
    // mean IBI 0.55: normalized tempi 1.1, 1.1, 1.1, 0.786 -> none stable.
    CHECK(cnt.stable == 0);
  }
}
