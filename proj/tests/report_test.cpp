#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "beateval/io.h"
#include "beateval/matching.h"
#include "beateval/report.h"

using namespace beateval;
namespace fs = std::filesystem;

namespace {

BeatSequence constant_tempo(std::size_t n, double ibi) {
  std::vector<double> t;
  for (std::size_t k = 0; k < n; ++k) t.push_back(ibi * static_cast<double>(k));
  return BeatSequence(t);
}

struct TempDataset {
  fs::path root;
  fs::path ref;
  fs::path est;

  explicit TempDataset(const std::string& name)
      : root(fs::temp_directory_path() / ("beateval_report_" + name)),
        ref(root / "ref"),
        est(root / "est") {
    fs::remove_all(root);
    fs::create_directories(ref);
    fs::create_directories(est);
  }
  ~TempDataset() { fs::remove_all(root); }

  void add(const std::string& id, const BeatSequence& r, const BeatSequence* e) {
    write_text_file((ref / (id + ".txt")).string(), format_beats(r));
    if (e) write_text_file((est / (id + ".txt")).string(), format_beats(*e));
  }
};

// Tracks with ACR-any 1, 0.5 and 0 against a 20-beat reference.
void add_graded_tracks(TempDataset& d) {
  const auto ref = constant_tempo(20, 0.5);
  std::vector<double> half(ref.begin(), ref.begin() + 10);
  const BeatSequence first_half(half);
  const BeatSequence far_away({60.0, 61.0});
  d.add("a_full", ref, &ref);
  d.add("b_half", ref, &first_half);
  d.add("c_none", ref, &far_away);
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("metric selection parsing") {
    const auto all = MetricSelection::parse("all");
    CHECK(all == MetricSelection{});
    const auto some = MetricSelection::parse("f1,acr");
    CHECK(some.f1);
    CHECK(some.acr);
    CHECK_FALSE(some.continuity);
    CHECK_FALSE(some.l_correct);
    CHECK_THROWS_AS(MetricSelection::parse("f1,vibes"), Error);
  }

  TEST_CASE("identical pair scores 1 on every headline metric") {
    TempDataset d("identity");
    const auto ref = constant_tempo(30, 0.6);
    d.add("song", ref, &ref);
    const auto rep = evaluate_dataset(d.ref.string(), d.est.string(), {});
    REQUIRE(rep.tracks.size() == 1);
    const auto& m = rep.tracks[0].metrics;
    CHECK(m.f1->f1 == 1.0);
    CHECK(m.continuity->cmlt == 1.0);
    CHECK(m.continuity->amlt == 1.0);
    CHECK(m.l_correct->f1 == 1.0);
    CHECK(m.acr->scores.any == 1.0);
    CHECK(m.acr->scores[Condition::kOnbeat] == 1.0);
    CHECK(m.acr->mlsr == 0.0);
    CHECK(rep.warnings.empty());
  }

  TEST_CASE("missing estimate is skipped with a warning") {
    TempDataset d("missing");
    const auto ref = constant_tempo(10, 0.5);
    d.add("one", ref, &ref);
    d.add("two", ref, nullptr);
    const auto rep = evaluate_dataset(d.ref.string(), d.est.string(), {});
    CHECK(rep.tracks.size() == 1);
    CHECK(rep.tracks[0].track_id == "one");
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("two") != std::string::npos);
  }

  TEST_CASE("dataset mean of ACR-any") {
    TempDataset d("graded");
    add_graded_tracks(d);
    const auto rep = evaluate_dataset(d.ref.string(), d.est.string(), {});
    REQUIRE(rep.tracks.size() == 3);
    CHECK(rep.tracks[0].metrics.acr->scores.any == 1.0);
    CHECK(rep.tracks[1].metrics.acr->scores.any == 0.5);
    CHECK(rep.tracks[2].metrics.acr->scores.any == 0.0);
    CHECK(rep.means.acr->scores.any == doctest::Approx(0.5));

    double f1_sum = 0.0;
    for (const auto& t : rep.tracks) f1_sum += t.metrics.f1->f1;
    CHECK(rep.means.f1->f1 == doctest::Approx(f1_sum / 3.0));
  }

  TEST_CASE("report is independent of the worker count") {
    TempDataset d("workers");
    add_graded_tracks(d);
    for (int k = 0; k < 9; ++k) {
      const auto ref = constant_tempo(15 + k, 0.4 + 0.02 * k);
      std::vector<double> e(ref.begin(), ref.end());
      for (std::size_t i = 0; i < e.size(); i += 3) e[i] += 0.03;
      const BeatSequence est(e);
      d.add("t" + std::to_string(k), ref, &est);
    }
    EvaluateOptions one;
    one.workers = 1;
    EvaluateOptions four;
    four.workers = 4;
    const auto a = report_to_json(evaluate_dataset(d.ref.string(), d.est.string(), one));
    const auto b = report_to_json(evaluate_dataset(d.ref.string(), d.est.string(), four));
    CHECK(a == b);
  }

  TEST_CASE("JSON round trip") {
    TempDataset d("json");
    add_graded_tracks(d);
    EvaluateOptions opts;
    opts.selection = MetricSelection::parse("f1,acr");
    opts.params.context_length = 3;
    const auto rep = evaluate_dataset(d.ref.string(), d.est.string(), opts);
    const auto text = report_to_json(rep);
    const auto back = report_from_json(text);
    CHECK(back.params.context_length == 3);
    CHECK(back.selection == opts.selection);
    CHECK(back.tracks.size() == 3);
    CHECK_FALSE(back.tracks[0].metrics.continuity.has_value());
    CHECK(report_to_json(back) == text);
    CHECK(text.find("\"mlsr_rule\": \"disjoint_condition_sets\"") != std::string::npos);
    CHECK_THROWS_AS(report_from_json("{ not json"), Error);
  }

  TEST_CASE("stem collision and empty directories") {
    TempDataset d("collision");
    const auto ref = constant_tempo(10, 0.5);
    d.add("x", ref, &ref);
    write_text_file((d.ref / "x.beats").string(), format_beats(ref));
    CHECK_THROWS_AS(evaluate_dataset(d.ref.string(), d.est.string(), {}), Error);

    TempDataset e("empty");
    try {
      evaluate_dataset(e.ref.string(), e.est.string(), {});
      FAIL("expected NoPairsFound");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kNoPairsFound);
    }
  }

  TEST_CASE("dataset statistics") {
    std::vector<double> alt{0.0};
    for (int k = 0; k < 10; ++k) alt.push_back(alt.back() + (k % 2 == 0 ? 0.5 : 0.6));
    const auto stats = dataset_stats({constant_tempo(11, 0.5), BeatSequence(alt)});
    CHECK(stats.n_tracks == 2);
    CHECK(stats.total_duration == doctest::Approx(5.0 + 5.5));
    CHECK(stats.stable_tempi == doctest::Approx(0.5));
    CHECK(stats.mean_track_tempo == doctest::Approx((120.0 + 60.0 / 0.55) / 2.0));
    CHECK(format_stats_table(stats).find("2") != std::string::npos);
  }
}
