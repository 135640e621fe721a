#include "beateval/trackers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace beateval {

BeatSequence sppk(const ActivationFunction& act, const PeakPickingConfig& config) {
  if (!(config.min_gap >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "min_gap must be non-negative");
  }
  const auto v = act.values();
  std::vector<std::size_t> candidates;
  for (std::size_t n = 1; n + 1 < v.size(); ++n) {
    if (v[n] >= config.threshold && v[n] > v[n - 1] && v[n] >= v[n + 1]) {
      candidates.push_back(n);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });

  const double gap_frames = config.min_gap * act.fps();
  std::vector<std::size_t> accepted;
  for (std::size_t n : candidates) {
    const bool clear = std::none_of(accepted.begin(), accepted.end(), [&](std::size_t m) {
      const double d = n > m ? static_cast<double>(n - m) : static_cast<double>(m - n);
      return d < gap_frames;
    });
    if (clear) accepted.push_back(n);
  }
  std::sort(accepted.begin(), accepted.end());

  std::vector<double> times;
  times.reserve(accepted.size());
  for (std::size_t n : accepted) times.push_back(act.frame_time(n));
  return BeatSequence(std::move(times));
}

BeatSequence dp_track(const ActivationFunction& act, double global_tempo_bpm,
                      const DpTrackerConfig& config) {
  if (act.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "activation is empty");
  }
  if (!(global_tempo_bpm > 0.0) || !std::isfinite(global_tempo_bpm)) {
    throw Error(ErrorCode::kInvalidArgument, "global tempo must be positive");
  }
  const double period = act.fps() * 60.0 / global_tempo_bpm;
  if (period < 2.0) {
    throw Error(ErrorCode::kDegenerateTempo, "beat period below two frames");
  }
  const auto min_step = static_cast<std::size_t>(std::ceil(period / 2.0));
  const auto max_step = static_cast<std::size_t>(std::floor(2.0 * period));

  // Transition penalty depends only on the step size.
  std::vector<double> penalty(max_step + 1, 0.0);
  for (std::size_t s = min_step; s <= max_step; ++s) {
    const double dev = std::log(static_cast<double>(s) / period);
    penalty[s] = config.lambda * dev * dev;
  }

  const auto v = act.values();
  const std::size_t n_frames = v.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> score(n_frames);
  std::vector<std::size_t> backlink(n_frames, kNone);

  for (std::size_t n = 0; n < n_frames; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_p = kNone;
    if (n >= min_step) {
      const std::size_t lo = n > max_step ? n - max_step : 0;
      for (std::size_t p = lo; p <= n - min_step; ++p) {
        const double cand = score[p] - penalty[n - p];
        if (cand > best) {
          best = cand;
          best_p = p;
        }
      }
    }
    // A chain that cannot gain from any predecessor starts afresh here.
    if (best_p == kNone || best <= 0.0) {
      score[n] = v[n];
      backlink[n] = kNone;
    } else {
      score[n] = v[n] + best;
      backlink[n] = best_p;
    }
  }

  std::size_t cursor = static_cast<std::size_t>(
      std::max_element(score.begin(), score.end()) - score.begin());
  std::vector<double> times;
  while (cursor != kNone) {
    times.push_back(act.frame_time(cursor));
    cursor = backlink[cursor];
  }
  std::reverse(times.begin(), times.end());
  return BeatSequence(std::move(times));
}

double global_tempo_from_reference(const BeatSequence& beats) {
  if (beats.size() < 2) {
    throw Error(ErrorCode::kTooFewBeats, "global tempo needs at least two beats");
  }
  return 60.0 / beats.mean_ibi();
}

}  // namespace beateval
