#include "beateval/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>
#include <vector>

#include "beateval/io.h"

namespace beateval {

namespace {

constexpr double kWidth = 1000.0;
constexpr double kLeft = 150.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kPanelHeight = 120.0;
constexpr double kPanelGap = 20.0;
constexpr double kRowHeight = 22.0;
constexpr double kBarHeight = 14.0;
constexpr double kAxisHeight = 40.0;

struct PlotRow {
  std::string id;
  std::string label;
  const CoverageMatrix::Row* flags;
  const char* color;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* color_for(std::string_view id) {
  if (id == "onbeat") return "#2b7bba";
  if (id == "any") return "#444444";
  if (id.starts_with("offbeat")) return "#e08214";
  if (id.starts_with("subharmonic")) return "#1a9850";
  return "#b2182b";
}

double tick_step(double span) {
  const double raw = span / 10.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_coverage_svg(const CoveragePlotInput& input) {
  if (input.coverage == nullptr || input.reference == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "coverage plot needs coverage and reference");
  }
  const CoverageMatrix& cm = *input.coverage;
  const BeatSequence& ref = *input.reference;
  if (cm.n_beats() != ref.size()) {
    throw Error(ErrorCode::kInvalidArgument, "coverage matrix does not match reference length");
  }

  std::vector<PlotRow> rows;
  auto add = [&rows](std::string id, std::string label, const CoverageMatrix::Row* flags) {
    const char* color = color_for(id);
    rows.push_back({std::move(id), std::move(label), flags, color});
  };
  add("onbeat", "onbeat", &cm.row(Condition::kOnbeat));
  add("offbeat", "offbeat (union)", &cm.offbeat_row());
  for (Condition c : kAllConditions) {
    if (c == Condition::kOnbeat) continue;
    add(std::string(condition_name(c)), std::string(condition_name(c)), &cm.row(c));
  }
  add("any", "any tempo", &cm.any_row());

  double t_max = ref.empty() ? 1.0 : ref.times().back();
  if (input.estimate && !input.estimate->empty()) t_max = std::max(t_max, input.estimate->times().back());
  if (input.activation) t_max = std::max(t_max, input.activation->duration());
  if (ref.size() >= 2) t_max += 0.5 * (ref[ref.size() - 1] - ref[ref.size() - 2]);
  if (!(t_max > 0.0)) t_max = 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  auto x_of = [&](double t) { return kLeft + std::clamp(t / t_max, 0.0, 1.0) * plot_w; };

  const bool panel = input.activation != nullptr || input.estimate != nullptr;
  const double rows_top = kTop + (panel ? kPanelHeight + kPanelGap : 0.0);
  const double rows_bottom = rows_top + kRowHeight * static_cast<double>(rows.size());
  const double height = rows_bottom + kAxisHeight;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(height) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
       "\" fill=\"#ffffff\"/>\n";
  if (!input.title.empty()) {
    s += "<text x=\"" + num(kLeft) + "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(input.title) + "</text>\n";
  }

  if (panel) {
    const double top = kTop;
    const double bottom = kTop + kPanelHeight;
    s += "<g class=\"panel\">\n";
    s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) +
         "\" height=\"" + num(kPanelHeight) + "\" fill=\"none\" stroke=\"#999999\"/>\n";
    for (double b : ref) {
      s += "<line class=\"ref-beat\" x1=\"" + num(x_of(b)) + "\" y1=\"" + num(top) + "\" x2=\"" +
           num(x_of(b)) + "\" y2=\"" + num(top + kPanelHeight / 2) +
           "\" stroke=\"#2b7bba\" stroke-width=\"1\"/>\n";
    }
    if (input.estimate) {
      for (double b : *input.estimate) {
        s += "<line class=\"est-beat\" x1=\"" + num(x_of(b)) + "\" y1=\"" +
             num(top + kPanelHeight / 2) + "\" x2=\"" + num(x_of(b)) + "\" y2=\"" + num(bottom) +
             "\" stroke=\"#b2182b\" stroke-width=\"1\"/>\n";
      }
    }
    if (input.activation && !input.activation->empty()) {
      const ActivationFunction& act = *input.activation;
      s += "<polyline class=\"activation\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\" points=\"";
      for (std::size_t n = 0; n < act.size(); ++n) {
        if (n > 0) s += ' ';
        s += num(x_of(act.frame_time(n))) + "," + num(bottom - act[n] * kPanelHeight);
      }
      s += "\"/>\n";
    }
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(top + 14) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">activation</text>\n";
    s += "</g>\n";
  }

  // Cell k spans halfway to each neighbouring reference beat.
  const std::size_t n = ref.size();
  auto cell_lo = [&](std::size_t k) {
    if (k > 0) return 0.5 * (ref[k - 1] + ref[k]);
    return n > 1 ? std::max(0.0, ref[0] - 0.5 * (ref[1] - ref[0])) : std::max(0.0, ref[0] - 0.25);
  };
  auto cell_hi = [&](std::size_t k) {
    if (k + 1 < n) return 0.5 * (ref[k] + ref[k + 1]);
    return n > 1 ? ref[k] + 0.5 * (ref[k] - ref[k - 1]) : ref[k] + 0.25;
  };

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const PlotRow& row = rows[r];
    const double y = rows_top + kRowHeight * static_cast<double>(r);
    s += "<g class=\"row\" data-row=\"" + row.id + "\">\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + kBarHeight - 2) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         escape(row.label) + "</text>\n";
    s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y + kRowHeight - 2) + "\" x2=\"" +
         num(kLeft + plot_w) + "\" y2=\"" + num(y + kRowHeight - 2) +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    const auto& flags = *row.flags;
    for (std::size_t k = 0; k < n;) {
      if (!flags[k]) {
        ++k;
        continue;
      }
      std::size_t m = k;
      while (m + 1 < n && flags[m + 1]) ++m;
      const double x0 = x_of(cell_lo(k));
      const double x1 = x_of(cell_hi(m));
      s += "<rect class=\"bar\" data-row=\"" + row.id + "\" x=\"" + num(x0) + "\" y=\"" +
           num(y + 2) + "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(kBarHeight) +
           "\" fill=\"" + row.color + "\"><title>beats " + std::to_string(k + 1) + "-" +
           std::to_string(m + 1) + "</title></rect>\n";
      k = m + 1;
    }
    s += "</g>\n";
  }

  s += "<g class=\"axis\">\n";
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(rows_bottom) + "\" x2=\"" +
       num(kLeft + plot_w) + "\" y2=\"" + num(rows_bottom) + "\" stroke=\"#000000\"/>\n";
  const double step = tick_step(t_max);
  const auto n_ticks = static_cast<long>(std::floor(t_max / step + 1e-9));
  for (long i = 0; i <= n_ticks; ++i) {
    const double t = static_cast<double>(i) * step;
    const double x = x_of(t);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(rows_bottom) + "\" x2=\"" + num(x) +
         "\" y2=\"" + num(rows_bottom + 5) + "\" stroke=\"#000000\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(rows_bottom + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + num(t) +
         "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(rows_bottom + 34) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">time (s)</text>\n";
  s += "</g>\n";
  s += "</svg>\n";
  return s;
}

void write_coverage_svg(const CoveragePlotInput& input, const std::string& path) {
  write_text_file(path, render_coverage_svg(input));
}

}  // namespace beateval
