// beateval: command-line front end.
//
//   beateval eval  --ref DIR --est DIR [--L N --cap SEC --gamma R --metrics LIST --out FILE]
//   beateval track --activation FILE --ppt dp|sppk [--tempo BPM | --ref FILE] --out FILE
//   beateval viz   --ref FILE --est FILE [--activation FILE] [--L N] --out FILE.svg
//   beateval synth --scenario FILE --seed N --out-ref FILE --out-est FILE [--out-act FILE]
//   beateval stats --ref DIR [--out FILE.json]
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "beateval/beateval.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct ToleranceArgs {
  int context_length = 2;
  double cap = 0.070;
  double gamma = 0.175;

  void add_to(CLI::App* app) {
    app->add_option("--L", context_length, "Context length in beats (>= 2)")
        ->check(CLI::Range(2, 64));
    app->add_option("--cap", cap, "Tolerance cap in seconds")->check(CLI::PositiveNumber);
    app->add_option("--gamma", gamma, "Relative tolerance factor")->check(CLI::Range(0.0, 1.0));
  }

  beateval::ToleranceParams params() const {
    beateval::ToleranceParams p;
    p.cap = cap;
    p.gamma = gamma;
    p.context_length = context_length;
    p.validate();
    return p;
  }
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    beateval::write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beat-tracking evaluation with annotation coverage analysis"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate estimated beats against references");
  std::string eval_ref, eval_est, eval_out, eval_metrics = "all";
  unsigned eval_workers = 1;
  ToleranceArgs eval_tol;
  eval_cmd->add_option("--ref", eval_ref, "Directory of reference beat files")->required();
  eval_cmd->add_option("--est", eval_est, "Directory of estimated beat files")->required();
  eval_cmd->add_option("--metrics", eval_metrics, "Comma list: f1,cmlt,amlt,lcorrect,acr or all");
  eval_cmd->add_option("--out", eval_out, "Output JSON file (stdout if omitted)");
  eval_cmd->add_option("--workers", eval_workers, "Worker threads (0 = all cores)");
  eval_tol.add_to(eval_cmd);

  // track
  auto* track_cmd = app.add_subcommand("track", "Run a post-processing tracker on an activation");
  std::string track_act, track_ppt = "dp", track_ref, track_out;
  std::optional<double> track_tempo;
  beateval::PeakPickingConfig peak_cfg;
  beateval::DpTrackerConfig dp_cfg;
  track_cmd->add_option("--activation", track_act, "Activation file")->required();
  track_cmd->add_option("--ppt", track_ppt, "Tracker")->check(CLI::IsMember({"dp", "sppk"}));
  auto* tempo_opt = track_cmd->add_option("--tempo", track_tempo, "Global tempo in BPM (dp)");
  auto* ref_opt =
      track_cmd->add_option("--ref", track_ref, "Reference beats; global tempo from mean IBI (dp)");
  tempo_opt->excludes(ref_opt);
  track_cmd->add_option("--out", track_out, "Output beat file (stdout if omitted)");
  track_cmd->add_option("--threshold", peak_cfg.threshold, "sppk peak threshold");
  track_cmd->add_option("--min-gap", peak_cfg.min_gap, "sppk minimum peak distance (s)");
  track_cmd->add_option("--lambda", dp_cfg.lambda, "dp tempo-deviation weight");

  // viz
  auto* viz_cmd = app.add_subcommand("viz", "Render the coverage plot as SVG");
  std::string viz_ref, viz_est, viz_act, viz_out, viz_title;
  ToleranceArgs viz_tol;
  viz_cmd->add_option("--ref", viz_ref, "Reference beat file")->required();
  viz_cmd->add_option("--est", viz_est, "Estimated beat file")->required();
  viz_cmd->add_option("--activation", viz_act, "Optional activation file for the top panel");
  viz_cmd->add_option("--out", viz_out, "Output SVG file")->required();
  viz_cmd->add_option("--title", viz_title, "Plot title");
  viz_tol.add_to(viz_cmd);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic reference/estimate pair");
  std::string synth_scenario, synth_ref, synth_est, synth_act;
  std::uint64_t synth_seed = 0;
  synth_cmd->add_option("--scenario", synth_scenario, "Scenario file")->required();
  synth_cmd->add_option("--seed", synth_seed, "Random seed");
  synth_cmd->add_option("--out-ref", synth_ref, "Reference beat output")->required();
  synth_cmd->add_option("--out-est", synth_est, "Estimated beat output")->required();
  synth_cmd->add_option("--out-act", synth_act, "Activation output (from reference beats)");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics of a reference directory");
  std::string stats_ref, stats_out;
  stats_cmd->add_option("--ref", stats_ref, "Directory of reference beat files")->required();
  stats_cmd->add_option("--out", stats_out, "Also write the statistics as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval_cmd) {
      beateval::EvaluateOptions opts;
      opts.params = eval_tol.params();
      opts.selection = beateval::MetricSelection::parse(eval_metrics);
      opts.workers = eval_workers;
      const auto report = beateval::evaluate_dataset(eval_ref, eval_est, opts);
      print_warnings(report.warnings);
      emit(eval_out, beateval::report_to_json(report));
    } else if (*track_cmd) {
      const auto act = beateval::parse_activation_file(track_act);
      beateval::BeatSequence beats;
      if (track_ppt == "sppk") {
        beats = beateval::sppk(act, peak_cfg);
      } else {
        double tempo = 0.0;
        if (track_tempo) {
          tempo = *track_tempo;
        } else if (!track_ref.empty()) {
          tempo = beateval::global_tempo_from_reference(
              beateval::parse_beats_file(track_ref).beats);
        } else {
          std::cerr << "track --ppt dp needs --tempo or --ref\n";
          return kExitUsage;
        }
        beats = beateval::dp_track(act, tempo, dp_cfg);
      }
      emit(track_out, beateval::format_beats(beats));
    } else if (*viz_cmd) {
      const auto ref = beateval::parse_beats_file(viz_ref).beats;
      const auto est = beateval::parse_beats_file(viz_est, {.allow_empty = true}).beats;
      const auto cm = beateval::coverage_matrix(ref, est, viz_tol.params());
      std::optional<beateval::ActivationFunction> act;
      if (!viz_act.empty()) act = beateval::parse_activation_file(viz_act);
      beateval::CoveragePlotInput input;
      input.coverage = &cm;
      input.reference = &ref;
      input.estimate = &est;
      input.activation = act ? &*act : nullptr;
      input.title = viz_title;
      beateval::write_coverage_svg(input, viz_out);
    } else if (*synth_cmd) {
      const auto scenario = beateval::load_scenario(synth_scenario);
      const auto ref = beateval::gen_reference(scenario.tempo, scenario.duration);
      const auto est = beateval::gen_estimate(ref, scenario, synth_seed);
      if (est.resorted) std::cerr << "warning: jitter reordered beats; estimate was re-sorted\n";
      if (est.duplicates_removed > 0) {
        std::cerr << "warning: collapsed " << est.duplicates_removed << " duplicate beat(s)\n";
      }
      beateval::write_text_file(synth_ref, beateval::format_beats(ref));
      beateval::write_text_file(synth_est, beateval::format_beats(est.beats));
      if (!synth_act.empty()) {
        const auto act =
            beateval::gen_activation(ref, scenario.duration, scenario.activation, synth_seed);
        beateval::write_text_file(synth_act, beateval::format_activation(act));
      }
    } else if (*stats_cmd) {
      std::vector<std::string> warnings;
      const auto stats = beateval::directory_stats(stats_ref, &warnings);
      print_warnings(warnings);
      std::cout << beateval::format_stats_table(stats);
      if (!stats_out.empty()) beateval::write_text_file(stats_out, beateval::stats_to_json(stats));
    }
  } catch (const beateval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
