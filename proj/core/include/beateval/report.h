/// @file report.h
/// @brief Per-track and dataset evaluation reports, batch runner and JSON.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beateval/core.h"
#include "beateval/metrics.h"

namespace beateval {

/// Which metric groups to compute; parsed from "f1,cmlt,amlt,lcorrect,acr".
struct MetricSelection {
  bool f1 = true;
  bool continuity = true;
  bool l_correct = true;
  bool acr = true;

  /// Accepts: all, f1, cmlt, amlt, continuity, lcorrect, acr, mlsr.
  /// @throws Error(kInvalidArgument) on an unknown name.
  static MetricSelection parse(std::string_view list);

  friend bool operator==(const MetricSelection&, const MetricSelection&) = default;
};

struct ContinuityScores {
  double cmlt = 0.0;
  double amlt = 0.0;
};

struct AcrReport {
  AcrScores scores;
  double mlsr = 0.0;
};

struct MetricValues {
  std::optional<PrfScore> f1;
  std::optional<ContinuityScores> continuity;
  std::optional<PrfScore> l_correct;
  std::optional<AcrReport> acr;
};

struct TrackReport {
  std::string track_id;
  std::size_t n_ref = 0;
  std::size_t n_est = 0;
  ToleranceParams params;
  MetricValues metrics;
};

struct DatasetStats {
  std::size_t n_tracks = 0;
  /// Sum over tracks of the last reference beat time, seconds.
  double total_duration = 0.0;
  /// Pooled over all intervals of all tracks, in [0, 1].
  double stable_tempi = 0.0;
  /// Mean over tracks of 60 / mean IBI.
  double mean_track_tempo = 0.0;
};

inline constexpr int kReportSchemaVersion = 1;

struct DatasetReport {
  int schema_version = kReportSchemaVersion;
  ToleranceParams params;
  MetricSelection selection;
  /// Sorted by track_id.
  std::vector<TrackReport> tracks;
  MetricValues means;
  DatasetStats stats;
  std::vector<std::string> warnings;
};

TrackReport evaluate_track(std::string track_id, const BeatSequence& ref,
                           const BeatSequence& est, const ToleranceParams& params,
                           const MetricSelection& selection = {});

/// Unweighted mean of every selected metric over `tracks`.
MetricValues mean_metrics(const std::vector<TrackReport>& tracks,
                          const MetricSelection& selection);

DatasetStats dataset_stats(const std::vector<BeatSequence>& references);

struct EvaluateOptions {
  ToleranceParams params;
  MetricSelection selection;
  /// 0 picks the hardware concurrency.
  unsigned workers = 1;
};

/// Pairs files of the two directories by filename stem and evaluates each
/// pair. Unpaired or unreadable tracks become warnings.
/// @throws Error(kNoPairsFound) when nothing could be evaluated, and
/// Error(kInvalidArgument) on a stem collision within one directory.
DatasetReport evaluate_dataset(const std::string& ref_dir, const std::string& est_dir,
                               const EvaluateOptions& options);

/// Dataset statistics over every beat file in `ref_dir`.
DatasetStats directory_stats(const std::string& ref_dir, std::vector<std::string>* warnings);

/// Pretty-printed JSON, numbers rounded to six decimals.
std::string report_to_json(const DatasetReport& report);
/// @throws Error(kParseError) on malformed input.
DatasetReport report_from_json(std::string_view json);

std::string stats_to_json(const DatasetStats& stats);
/// Human-readable one-row table.
std::string format_stats_table(const DatasetStats& stats);

}  // namespace beateval
