#include <doctest.h>

#include <map>
#include <regex>
#include <string>
#include <vector>

#include "beateval/matching.h"
#include "beateval/svg.h"
#include "beateval/synth.h"

using namespace beateval;

namespace {

struct Bar {
  std::size_t first = 0;  // 1-based beat indices, as printed
  std::size_t last = 0;
};

std::map<std::string, std::vector<Bar>> bars_by_row(const std::string& svg) {
  static const std::regex re(R"re(<rect class="bar" data-row="(\w+)"[^>]*><title>beats (\d+)-(\d+)</title>)re");
  std::map<std::string, std::vector<Bar>> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it) {
    out[(*it)[1]].push_back({std::stoul((*it)[2]), std::stoul((*it)[3])});
  }
  return out;
}

std::vector<std::string> row_ids() {
  std::vector<std::string> ids;
  for (Condition c : kAllConditions) ids.emplace_back(condition_name(c));
  ids.emplace_back("offbeat");
  ids.emplace_back("any");
  return ids;
}

}  // namespace

TEST_SUITE("svg") {
  TEST_CASE("all-covered matrix draws one full bar per row") {
    const BeatSequence ref({0.0, 0.5, 1.0, 1.5, 2.0});
    std::array<CoverageMatrix::Row, kNumConditions> rows;
    for (auto& r : rows) r.assign(ref.size(), true);
    const CoverageMatrix cm(ref.size(), rows);
    const auto bars = bars_by_row(render_coverage_svg({&cm, &ref, nullptr, nullptr, "full"}));
    CHECK(bars.size() == 12);
    for (const auto& id : row_ids()) {
      REQUIRE(bars.count(id) == 1);
      REQUIRE(bars.at(id).size() == 1);
      CHECK(bars.at(id)[0].first == 1);
      CHECK(bars.at(id)[0].last == ref.size());
    }
  }

  TEST_CASE("empty coverage draws rows and axis only") {
    const BeatSequence ref({0.0, 0.5, 1.0});
    const CoverageMatrix cm(ref.size());
    const auto svg = render_coverage_svg({&cm, &ref, nullptr, nullptr, ""});
    CHECK(svg.find("class=\"bar\"") == std::string::npos);
    CHECK(svg.find("class=\"axis\"") != std::string::npos);
    for (const auto& id : row_ids()) {
      CHECK(svg.find("class=\"row\" data-row=\"" + id + "\"") != std::string::npos);
    }
  }

  TEST_CASE("double to quadruple switch") {
    Scenario s;
    s.tempo = TempoCurve::constant(100.0);
    s.duration = 40.0;
    const std::size_t boundary = 33;
    s.segments = {{0, Condition::kHarmonicDouble, 0.0},
                  {boundary, Condition::kHarmonicQuadruple, 0.0}};
    const auto ref = gen_reference(s.tempo, s.duration);
    const auto est = gen_estimate(ref, s, 0).beats;
    const auto cm = coverage_matrix(ref, est, {});
    const auto act = gen_activation(est, s.duration, s.activation, 0);
    const auto svg =
        render_coverage_svg({&cm, &ref, &act, &est, "double to quadruple"});
    const auto bars = bars_by_row(svg);

    REQUIRE(bars.count("harmonic_double") == 1);
    REQUIRE(bars.count("harmonic_quadruple") == 1);
    REQUIRE(bars.at("harmonic_double").size() == 1);
    REQUIRE(bars.at("harmonic_quadruple").size() == 1);
    const Bar dbl = bars.at("harmonic_double")[0];
    const Bar quad = bars.at("harmonic_quadruple")[0];
    CHECK(dbl.first == 1);
    CHECK(dbl.last == boundary + 1);
    CHECK(quad.first == boundary + 1);
    CHECK(quad.last == ref.size());
    CHECK(bars.count("onbeat") == 0);
    REQUIRE(bars.at("any").size() == 1);
    CHECK(bars.at("any")[0].last == ref.size());
    CHECK(svg.find("class=\"activation\"") != std::string::npos);
    CHECK(svg.find("class=\"est-beat\"") != std::string::npos);

    CHECK(render_coverage_svg({&cm, &ref, &act, &est, "double to quadruple"}) == svg);
  }

  TEST_CASE("mismatched lengths are rejected") {
    const BeatSequence ref({0.0, 0.5, 1.0});
    const CoverageMatrix cm(2);
    CHECK_THROWS_AS(render_coverage_svg({&cm, &ref, nullptr, nullptr, ""}), Error);
  }
}
