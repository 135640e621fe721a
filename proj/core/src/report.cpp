#include "beateval/report.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <thread>

#include <json.hpp>

#include "beateval/io.h"
#include "beateval/matching.h"
#include "text_util.h"

namespace beateval {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json prf_json(const PrfScore& s, const char* f_key) {
  return json{{"precision", round6(s.precision)},
              {"recall", round6(s.recall)},
              {f_key, round6(s.f1)}};
}

PrfScore prf_from(const json& j, const char* f_key) {
  return {j.at("precision").get<double>(), j.at("recall").get<double>(),
          j.at(f_key).get<double>()};
}

void put_metrics(json& out, const MetricValues& m) {
  if (m.f1) out["f1"] = prf_json(*m.f1, "f1");
  if (m.continuity) {
    out["cmlt"] = round6(m.continuity->cmlt);
    out["amlt"] = round6(m.continuity->amlt);
  }
  if (m.l_correct) out["l_correct"] = prf_json(*m.l_correct, "f");
  if (m.acr) {
    json acr = json::object();
    for (Condition c : kAllConditions) {
      acr[std::string(condition_name(c))] = round6(m.acr->scores[c]);
    }
    acr["any"] = round6(m.acr->scores.any);
    acr["offbeat"] = round6(m.acr->scores.offbeat);
    out["acr"] = std::move(acr);
    out["mlsr"] = round6(m.acr->mlsr);
  }
}

MetricValues get_metrics(const json& in) {
  MetricValues m;
  if (in.contains("f1")) m.f1 = prf_from(in.at("f1"), "f1");
  if (in.contains("cmlt")) {
    m.continuity = ContinuityScores{in.at("cmlt").get<double>(), in.at("amlt").get<double>()};
  }
  if (in.contains("l_correct")) m.l_correct = prf_from(in.at("l_correct"), "f");
  if (in.contains("acr")) {
    const json& acr = in.at("acr");
    AcrReport r;
    for (Condition c : kAllConditions) {
      r.scores.per_condition[index_of(c)] = acr.at(std::string(condition_name(c))).get<double>();
    }
    r.scores.any = acr.at("any").get<double>();
    r.scores.offbeat = acr.at("offbeat").get<double>();
    r.mlsr = in.at("mlsr").get<double>();
    m.acr = r;
  }
  return m;
}

json params_json(const ToleranceParams& p) {
  return json{{"cap", round6(p.cap)}, {"gamma", round6(p.gamma)}, {"L", p.context_length}};
}

json stats_json(const DatasetStats& s) {
  return json{{"n_tracks", s.n_tracks},
              {"total_duration", round6(s.total_duration)},
              {"stable_tempi", round6(s.stable_tempi)},
              {"mean_track_tempo", round6(s.mean_track_tempo)}};
}

std::map<std::string, fs::path> files_by_stem(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::kIoError, dir + " is not a directory");
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (!name.empty() && name.front() == '.') continue;
    const std::string stem = entry.path().stem().string();
    auto [it, inserted] = out.emplace(stem, entry.path());
    if (!inserted) {
      throw Error(ErrorCode::kInvalidArgument, "two files share the stem '" + stem + "' in " + dir);
    }
  }
  return out;
}

unsigned resolve_workers(unsigned requested) {
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), count));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) fn(k);
    });
  }
}

}  // namespace

MetricSelection MetricSelection::parse(std::string_view list) {
  MetricSelection sel{false, false, false, false};
  for (std::string_view name : detail::split_fields(list, true)) {
    if (name == "all") {
      sel = MetricSelection{};
    } else if (name == "f1") {
      sel.f1 = true;
    } else if (name == "cmlt" || name == "amlt" || name == "continuity") {
      sel.continuity = true;
    } else if (name == "lcorrect" || name == "l_correct" || name == "fl") {
      sel.l_correct = true;
    } else if (name == "acr" || name == "mlsr") {
      sel.acr = true;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
    }
  }
  if (!sel.f1 && !sel.continuity && !sel.l_correct && !sel.acr) {
    throw Error(ErrorCode::kInvalidArgument, "no metrics selected");
  }
  return sel;
}

TrackReport evaluate_track(std::string track_id, const BeatSequence& ref,
                           const BeatSequence& est, const ToleranceParams& params,
                           const MetricSelection& selection) {
  params.validate();
  if (ref.size() < 2) {
    throw Error(ErrorCode::kTooFewBeats, "reference of '" + track_id + "' has fewer than two beats");
  }
  TrackReport r;
  r.track_id = std::move(track_id);
  r.n_ref = ref.size();
  r.n_est = est.size();
  r.params = params;
  if (selection.f1) r.metrics.f1 = f1_score(ref, est, params.cap);
  if (selection.continuity) {
    r.metrics.continuity =
        ContinuityScores{cmlt(ref, est, params.gamma), amlt(ref, est, params.gamma)};
  }
  if (selection.l_correct) r.metrics.l_correct = l_correct_fmeasure(ref, est, params);
  if (selection.acr) {
    const CoverageMatrix cm = coverage_matrix(ref, est, params);
    r.metrics.acr = AcrReport{acr_scores(cm), mlsr(cm)};
  }
  return r;
}

MetricValues mean_metrics(const std::vector<TrackReport>& tracks,
                          const MetricSelection& selection) {
  MetricValues m;
  if (tracks.empty()) return m;
  const double n = static_cast<double>(tracks.size());
  auto mean_prf = [&](auto getter) {
    PrfScore s;
    for (const auto& t : tracks) {
      const PrfScore& v = *getter(t);
      s.precision += v.precision;
      s.recall += v.recall;
      s.f1 += v.f1;
    }
    s.precision /= n;
    s.recall /= n;
    s.f1 /= n;
    return s;
  };
  if (selection.f1) m.f1 = mean_prf([](const TrackReport& t) { return &*t.metrics.f1; });
  if (selection.l_correct) {
    m.l_correct = mean_prf([](const TrackReport& t) { return &*t.metrics.l_correct; });
  }
  if (selection.continuity) {
    ContinuityScores c;
    for (const auto& t : tracks) {
      c.cmlt += t.metrics.continuity->cmlt;
      c.amlt += t.metrics.continuity->amlt;
    }
    c.cmlt /= n;
    c.amlt /= n;
    m.continuity = c;
  }
  if (selection.acr) {
    AcrReport a;
    for (const auto& t : tracks) {
      const AcrReport& v = *t.metrics.acr;
      for (std::size_t k = 0; k < kNumConditions; ++k) {
        a.scores.per_condition[k] += v.scores.per_condition[k];
      }
      a.scores.any += v.scores.any;
      a.scores.offbeat += v.scores.offbeat;
      a.mlsr += v.mlsr;
    }
    for (double& v : a.scores.per_condition) v /= n;
    a.scores.any /= n;
    a.scores.offbeat /= n;
    a.mlsr /= n;
    m.acr = a;
  }
  return m;
}

DatasetStats dataset_stats(const std::vector<BeatSequence>& references) {
  DatasetStats s;
  std::size_t stable = 0;
  std::size_t total = 0;
  double tempo_sum = 0.0;
  for (const BeatSequence& b : references) {
    if (b.size() < 2) continue;
    ++s.n_tracks;
    s.total_duration += b.times().back();
    const StableTempiCount c = count_stable_tempi(b);
    stable += c.stable;
    total += c.total;
    tempo_sum += mean_track_tempo(b);
  }
  if (total > 0) s.stable_tempi = static_cast<double>(stable) / static_cast<double>(total);
  if (s.n_tracks > 0) s.mean_track_tempo = tempo_sum / static_cast<double>(s.n_tracks);
  return s;
}

DatasetReport evaluate_dataset(const std::string& ref_dir, const std::string& est_dir,
                               const EvaluateOptions& options) {
  options.params.validate();
  const auto refs = files_by_stem(ref_dir);
  const auto ests = files_by_stem(est_dir);

  DatasetReport report;
  report.params = options.params;
  report.selection = options.selection;

  std::vector<std::pair<fs::path, fs::path>> pairs;
  std::vector<std::string> ids;
  for (const auto& [stem, path] : refs) {
    auto it = ests.find(stem);
    if (it == ests.end()) {
      report.warnings.push_back("no estimate for reference '" + stem + "'; skipped");
      continue;
    }
    pairs.emplace_back(path, it->second);
    ids.push_back(stem);
  }
  for (const auto& [stem, path] : ests) {
    if (!refs.contains(stem)) {
      report.warnings.push_back("no reference for estimate '" + stem + "'; skipped");
    }
  }
  if (pairs.empty()) {
    throw Error(ErrorCode::kNoPairsFound, "no matching file stems in " + ref_dir + " and " + est_dir);
  }

  struct Slot {
    std::optional<TrackReport> report;
    std::optional<BeatSequence> ref;
    std::vector<std::string> warnings;
  };
  std::vector<Slot> slots(pairs.size());
  parallel_for(pairs.size(), options.workers, [&](std::size_t k) {
    Slot& slot = slots[k];
    try {
      ValidatedBeats ref = parse_beats_file(pairs[k].first.string());
      ValidatedBeats est = parse_beats_file(pairs[k].second.string(), {.allow_empty = true});
      if (ref.duplicates_removed > 0) {
        slot.warnings.push_back(ids[k] + ": collapsed " + std::to_string(ref.duplicates_removed) +
                                " duplicate reference beat(s)");
      }
      if (est.duplicates_removed > 0) {
        slot.warnings.push_back(ids[k] + ": collapsed " + std::to_string(est.duplicates_removed) +
                                " duplicate estimated beat(s)");
      }
      slot.report = evaluate_track(ids[k], ref.beats, est.beats, options.params, options.selection);
      slot.ref = std::move(ref.beats);
    } catch (const Error& e) {
      slot.warnings.push_back(ids[k] + ": " + e.what() + "; skipped");
    }
  });

  std::vector<BeatSequence> refs_used;
  for (Slot& slot : slots) {
    for (auto& w : slot.warnings) report.warnings.push_back(std::move(w));
    if (!slot.report) continue;
    report.tracks.push_back(std::move(*slot.report));
    refs_used.push_back(std::move(*slot.ref));
  }
  if (report.tracks.empty()) {
    throw Error(ErrorCode::kNoPairsFound, "no track could be evaluated");
  }
  report.means = mean_metrics(report.tracks, report.selection);
  report.stats = dataset_stats(refs_used);
  return report;
}

DatasetStats directory_stats(const std::string& ref_dir, std::vector<std::string>* warnings) {
  std::vector<BeatSequence> refs;
  for (const auto& [stem, path] : files_by_stem(ref_dir)) {
    try {
      refs.push_back(parse_beats_file(path.string()).beats);
    } catch (const Error& e) {
      if (warnings) warnings->push_back(stem + ": " + e.what() + "; skipped");
    }
  }
  if (refs.empty()) throw Error(ErrorCode::kNoPairsFound, "no readable beat files in " + ref_dir);
  return dataset_stats(refs);
}

std::string report_to_json(const DatasetReport& report) {
  json j;
  j["schema_version"] = report.schema_version;
  j["params"] = params_json(report.params);
  json metrics = json::array();
  if (report.selection.f1) metrics.push_back("f1");
  if (report.selection.continuity) metrics.push_back("continuity");
  if (report.selection.l_correct) metrics.push_back("lcorrect");
  if (report.selection.acr) metrics.push_back("acr");
  j["metrics"] = std::move(metrics);
  // The switch-detection rule behind mlsr is a reconstruction; name it so
  // readers can tell which rule produced the numbers.
  if (report.selection.acr) j["mlsr_rule"] = "disjoint_condition_sets";
  j["dataset_stats"] = stats_json(report.stats);
  json means = json::object();
  put_metrics(means, report.means);
  j["means"] = std::move(means);
  json tracks = json::array();
  for (const TrackReport& t : report.tracks) {
    json tj;
    tj["track_id"] = t.track_id;
    tj["n_ref"] = t.n_ref;
    tj["n_est"] = t.n_est;
    put_metrics(tj, t.metrics);
    tracks.push_back(std::move(tj));
  }
  j["tracks"] = std::move(tracks);
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

DatasetReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    DatasetReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported report schema version " + std::to_string(r.schema_version));
    }
    const json& p = j.at("params");
    r.params = ToleranceParams{p.at("cap").get<double>(), p.at("gamma").get<double>(),
                               p.at("L").get<int>()};
    r.selection = MetricSelection{false, false, false, false};
    for (const auto& name : j.at("metrics")) {
      const auto s = name.get<std::string>();
      if (s == "f1") r.selection.f1 = true;
      if (s == "continuity") r.selection.continuity = true;
      if (s == "lcorrect") r.selection.l_correct = true;
      if (s == "acr") r.selection.acr = true;
    }
    const json& st = j.at("dataset_stats");
    r.stats = DatasetStats{st.at("n_tracks").get<std::size_t>(),
                           st.at("total_duration").get<double>(),
                           st.at("stable_tempi").get<double>(),
                           st.at("mean_track_tempo").get<double>()};
    r.means = get_metrics(j.at("means"));
    for (const json& tj : j.at("tracks")) {
      TrackReport t;
      t.track_id = tj.at("track_id").get<std::string>();
      t.n_ref = tj.at("n_ref").get<std::size_t>();
      t.n_est = tj.at("n_est").get<std::size_t>();
      t.params = r.params;
      t.metrics = get_metrics(tj);
      r.tracks.push_back(std::move(t));
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("report JSON: ") + e.what());
  }
}

std::string stats_to_json(const DatasetStats& stats) { return stats_json(stats).dump(2) + "\n"; }

std::string format_stats_table(const DatasetStats& stats) {
  const auto total = static_cast<long long>(std::llround(stats.total_duration));
  char duration[64];
  std::snprintf(duration, sizeof duration, "%lldh %02lldm %02llds", total / 3600,
                (total / 60) % 60, total % 60);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-16s %-16s %s\n%-10zu %-16s %-16.1f %.2f\n", "# tracks",
                "total duration", "% stable tempi", "mean track tempo (BPM)", stats.n_tracks,
                duration, 100.0 * stats.stable_tempi, stats.mean_track_tempo);
  return buf;
}

}  // namespace beateval
