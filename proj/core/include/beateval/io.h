/// @file io.h
/// @brief Plain-text beat and activation files.
///
/// Beat files hold one time in seconds per line; extra whitespace-separated
/// columns (beat-in-bar labels and the like) are ignored, as are blank lines
/// and `#` comments. Activation files start with an `fps=<rate>` line
/// followed by one value in [0, 1] per line.

#pragma once

#include <string>
#include <string_view>

#include "beateval/core.h"

namespace beateval {

struct BeatFileOptions {
  /// Accept a file with no beats (tracker output can be empty).
  bool allow_empty = false;
};

ValidatedBeats parse_beats(std::string_view text, const BeatFileOptions& options = {});
ValidatedBeats parse_beats_file(const std::string& path, const BeatFileOptions& options = {});

ActivationFunction parse_activation(std::string_view text);
ActivationFunction parse_activation_file(const std::string& path);

/// Times with six decimals, one per line.
std::string format_beats(const BeatSequence& beats);
std::string format_activation(const ActivationFunction& act);

std::string read_text_file(const std::string& path);
/// @throws Error(kIoError)
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace beateval
