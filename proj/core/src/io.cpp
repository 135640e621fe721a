#include "beateval/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "text_util.h"

namespace beateval {

namespace {

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ValidatedBeats parse_beats(std::string_view text, const BeatFileOptions& options) {
  std::vector<double> raw;
  const auto lines = detail::split_lines(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string_view line = detail::strip_comment(lines[idx]);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    const auto value = detail::to_double(fields.front());
    if (!value) {
      throw Error(ErrorCode::kParseError,
                  line_error(idx + 1, "not a time: '" + std::string(fields.front()) + "'"),
                  idx + 1);
    }
    raw.push_back(*value);
  }
  if (raw.empty() && options.allow_empty) return {};
  return validate_beats(raw);
}

ValidatedBeats parse_beats_file(const std::string& path, const BeatFileOptions& options) {
  try {
    return parse_beats(read_text_file(path), options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path + ": " + e.message(), e.line());
  }
}

ActivationFunction parse_activation(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t idx = 0;
  std::optional<double> fps;
  for (; idx < lines.size(); ++idx) {
    const std::string_view line = detail::strip_comment(lines[idx]);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq != std::string_view::npos && detail::trim(line.substr(0, eq)) == "fps") {
      fps = detail::to_double(line.substr(eq + 1));
      if (!fps || !(*fps > 0.0) || !std::isfinite(*fps)) {
        throw Error(ErrorCode::kMissingFps, line_error(idx + 1, "fps must be positive"),
                    idx + 1);
      }
    }
    break;
  }
  if (!fps) {
    throw Error(ErrorCode::kMissingFps, "first non-comment line must be fps=<rate>",
                idx < lines.size() ? idx + 1 : 0);
  }

  std::vector<double> values;
  for (++idx; idx < lines.size(); ++idx) {
    const std::string_view line = detail::strip_comment(lines[idx]);
    if (line.empty()) continue;
    const auto value = detail::to_double(line);
    if (!value) {
      throw Error(ErrorCode::kParseError,
                  line_error(idx + 1, "not a number: '" + std::string(line) + "'"), idx + 1);
    }
    if (!(*value >= 0.0 && *value <= 1.0)) {
      throw Error(ErrorCode::kValueOutOfRange,
                  line_error(idx + 1, "activation outside [0, 1]"), idx + 1);
    }
    values.push_back(*value);
  }
  return ActivationFunction(*fps, std::move(values));
}

ActivationFunction parse_activation_file(const std::string& path) {
  try {
    return parse_activation(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path + ": " + e.message(), e.line());
  }
}

std::string format_beats(const BeatSequence& beats) {
  std::string out;
  for (double t : beats) {
    out += fixed6(t);
    out += '\n';
  }
  return out;
}

std::string format_activation(const ActivationFunction& act) {
  std::string out = "fps=" + fixed6(act.fps()) + "\n";
  for (double v : act.values()) {
    out += fixed6(v);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace beateval
