#include "beateval/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "text_util.h"

namespace beateval {

namespace {

struct TempoPiece {
  double start;
  double end;
  double rate_start;  // beats per second
  double rate_end;
};

std::vector<TempoPiece> pieces_until(const TempoCurve& tempo, double duration) {
  // Rates come from bpm_at at both ends, which stays exact when `duration`
  // cuts a piece short.
  std::vector<TempoPiece> pieces;
  double t = 0.0;
  auto push = [&](double end) {
    end = std::min(end, duration);
    if (end > t) pieces.push_back({t, end, tempo.bpm_at(t) / 60.0, tempo.bpm_at(end) / 60.0});
    t = std::max(t, end);
  };
  for (const auto& k : tempo.knots()) push(k.time);
  push(duration);
  return pieces;
}

/// Time offset into a piece at which `phase` beats have elapsed, for a rate
/// that moves linearly from r0 to r1 over `length` seconds.
double solve_phase(double phase, double r0, double r1, double length) {
  const double slope = (r1 - r0) / length;
  const double disc = std::max(0.0, r0 * r0 + 2.0 * slope * phase);
  return std::max(0.0, 2.0 * phase / (r0 + std::sqrt(disc)));
}

double truncated_normal(std::mt19937_64& rng, double stddev) {
  std::normal_distribution<double> dist(0.0, stddev);
  for (;;) {
    const double x = dist(rng);
    if (std::abs(x) <= 3.0 * stddev) return x;
  }
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "scenario line " + std::to_string(line) + ": " + what,
              line);
}

double require_double(std::string_view s, std::size_t line, const char* key) {
  const auto v = detail::to_double(s);
  if (!v || !std::isfinite(*v)) parse_fail(line, std::string("bad number for ") + key);
  return *v;
}

}  // namespace

TempoCurve::TempoCurve(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "tempo curve needs at least one knot");
  }
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    if (!(knots_[k].bpm > 0.0) || !std::isfinite(knots_[k].bpm)) {
      throw Error(ErrorCode::kInvalidArgument, "tempo must be positive");
    }
    if (k > 0 && !(knots_[k].time > knots_[k - 1].time)) {
      throw Error(ErrorCode::kInvalidArgument, "tempo knots must be strictly increasing in time");
    }
  }
}

double TempoCurve::bpm_at(double t) const {
  if (t <= knots_.front().time) return knots_.front().bpm;
  if (t >= knots_.back().time) return knots_.back().bpm;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const Knot& k) { return x < k.time; });
  const Knot& b = *it;
  const Knot& a = *(it - 1);
  const double w = (t - a.time) / (b.time - a.time);
  return a.bpm + w * (b.bpm - a.bpm);
}

void Scenario::validate(std::size_t n_beats) const {
  if (!(duration > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scenario duration must be positive");
  }
  if (segments.empty() || segments.front().start_beat != 0) {
    throw Error(ErrorCode::kInvalidArgument, "first segment must start at beat 0");
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (s > 0 && segments[s].start_beat <= segments[s - 1].start_beat) {
      throw Error(ErrorCode::kInvalidArgument, "segments must be strictly ordered");
    }
    if (segments[s].start_beat >= n_beats && n_beats > 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "segment " + std::to_string(s) + " starts beyond the last beat");
    }
    if (!(segments[s].jitter_std >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "jitter must be non-negative");
    }
  }
}

BeatSequence gen_reference(const TempoCurve& tempo, double duration) {
  if (!(duration > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  }
  std::vector<double> times;
  double elapsed = 0.0;  // beats completed at the start of the current piece
  double target = 0.0;
  for (const TempoPiece& p : pieces_until(tempo, duration)) {
    const double length = p.end - p.start;
    const double piece_beats = 0.5 * (p.rate_start + p.rate_end) * length;
    while (target - elapsed <= piece_beats) {
      const double t = p.start + solve_phase(target - elapsed, p.rate_start, p.rate_end, length);
      if (t >= p.end) break;
      if (times.empty() || t > times.back()) times.push_back(t);
      target += 1.0;
    }
    elapsed += piece_beats;
  }
  return BeatSequence(std::move(times));
}

GeneratedEstimate gen_estimate(const BeatSequence& ref, const Scenario& scenario,
                               std::uint64_t seed) {
  scenario.validate(ref.size());
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(ref.size() * 4);

  for (std::size_t s = 0; s < scenario.segments.size(); ++s) {
    const ScenarioSegment& seg = scenario.segments[s];
    const std::size_t end =
        s + 1 < scenario.segments.size() ? scenario.segments[s + 1].start_beat : ref.size();
    auto emit = [&](double t) {
      if (seg.jitter_std > 0.0) t += truncated_normal(rng, seg.jitter_std);
      out.push_back(std::max(0.0, t));
    };
    const Condition c = seg.condition;
    if (is_harmonic(c)) {
      const int h = harmonic_factor(c);
      for (std::size_t m = seg.start_beat; m < end; ++m) {
        emit(ref[m]);
        if (m + 1 >= ref.size()) continue;
        const double gap = ref[m + 1] - ref[m];
        for (int k = 1; k < h; ++k) emit(ref[m] + gap * static_cast<double>(k) / h);
      }
    } else if (is_offbeat(c)) {
      const auto [num, den] = offbeat_fraction(c);
      for (std::size_t m = seg.start_beat; m < end && m + 1 < ref.size(); ++m) {
        const double gap = ref[m + 1] - ref[m];
        emit(ref[m] + gap * static_cast<double>(num) / static_cast<double>(den));
      }
    } else {
      const auto d = static_cast<std::size_t>(subharmonic_step(c));
      for (std::size_t m = seg.start_beat; m < end; m += d) emit(ref[m]);
    }
  }

  GeneratedEstimate result;
  if (!std::is_sorted(out.begin(), out.end())) {
    std::sort(out.begin(), out.end());
    result.resorted = true;
  }
  if (!out.empty()) {
    ValidatedBeats v = validate_beats(out);
    result.beats = std::move(v.beats);
    result.duplicates_removed = v.duplicates_removed;
  }
  return result;
}

ActivationFunction gen_activation(const BeatSequence& beats, double duration,
                                  const ActivationSettings& settings, std::uint64_t seed) {
  if (!(settings.fps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  }
  if (!(settings.peak_width > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "peak width must be positive");
  }
  const double fps = settings.fps;
  const auto n_frames = static_cast<std::size_t>(std::floor(std::max(0.0, duration) * fps)) + 1;
  std::vector<double> values(n_frames, 0.0);

  const double reach = 4.0 * settings.peak_width;
  for (double b : beats) {
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil((b - reach) * fps)));
    for (std::size_t n = lo; n < n_frames; ++n) {
      const double t = static_cast<double>(n) / fps;
      if (t > b + reach) break;
      const double z = (t - b) / settings.peak_width;
      values[n] += std::exp(-0.5 * z * z);
    }
  }
  if (settings.noise_std > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, settings.noise_std);
    for (double& v : values) v += noise(rng);
  }
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  return ActivationFunction(fps, std::move(values));
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  sc.segments.clear();
  bool have_duration = false;
  const auto lines = detail::split_lines(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::size_t line_no = idx + 1;
    const std::string_view line = detail::strip_comment(lines[idx]);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "expected key = value");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));

    if (key == "duration") {
      sc.duration = require_double(value, line_no, "duration");
      have_duration = true;
    } else if (key == "tempo") {
      std::vector<TempoCurve::Knot> knots;
      for (std::string_view field : detail::split_fields(value, true)) {
        const auto colon = field.find(':');
        if (colon == std::string_view::npos) {
          knots.push_back({0.0, require_double(field, line_no, "tempo")});
        } else {
          knots.push_back({require_double(field.substr(0, colon), line_no, "tempo time"),
                           require_double(field.substr(colon + 1), line_no, "tempo bpm")});
        }
      }
      if (knots.empty()) parse_fail(line_no, "empty tempo");
      try {
        sc.tempo = TempoCurve(std::move(knots));
      } catch (const Error& e) {
        parse_fail(line_no, e.message());
      }
    } else if (key == "segment") {
      const auto fields = detail::split_fields(value);
      if (fields.size() < 2 || fields.size() > 3) {
        parse_fail(line_no, "segment = <start_beat> <condition> [jitter_std]");
      }
      ScenarioSegment seg;
      const auto start = detail::to_index(fields[0]);
      if (!start) parse_fail(line_no, "bad segment start beat");
      seg.start_beat = *start;
      const auto cond = parse_condition(fields[1]);
      if (!cond) parse_fail(line_no, "unknown condition '" + std::string(fields[1]) + "'");
      seg.condition = *cond;
      if (fields.size() == 3) {
        seg.jitter_std = require_double(fields[2], line_no, "jitter");
        if (seg.jitter_std < 0.0) parse_fail(line_no, "jitter must be non-negative");
      }
      sc.segments.push_back(seg);
    } else if (key == "act_fps") {
      sc.activation.fps = require_double(value, line_no, "act_fps");
    } else if (key == "act_peak_width") {
      sc.activation.peak_width = require_double(value, line_no, "act_peak_width");
    } else if (key == "act_noise") {
      sc.activation.noise_std = require_double(value, line_no, "act_noise");
    } else {
      parse_fail(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_duration) parse_fail(lines.size(), "missing duration");
  if (!(sc.duration > 0.0)) parse_fail(lines.size(), "duration must be positive");
  if (sc.segments.empty()) sc.segments.push_back({});
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace beateval
