#include <doctest.h>

#include <filesystem>
#include <vector>

#include "beateval/io.h"

using namespace beateval;

namespace {

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected beateval::Error");
  return Error(ErrorCode::kInvalidArgument, "");
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("parse_beats") {
    CHECK(parse_beats("0.5\n1.0\n1.5\n").beats == BeatSequence({0.5, 1.0, 1.5}));
    CHECK(parse_beats("0.5 1\n1.0 2\n").beats == BeatSequence({0.5, 1.0}));
    CHECK(parse_beats("# header\n\n0.5\t3\r\n  1.25  \n").beats == BeatSequence({0.5, 1.25}));
    CHECK(parse_beats("1.0\n1.0\n2.0\n").duplicates_removed == 1);

    const auto bad = error_of([] { parse_beats("abc\n"); });
    CHECK(bad.code() == ErrorCode::kParseError);
    CHECK(bad.line() == 1);
    CHECK(error_of([] { parse_beats("0.1\n0.2\nx\n"); }).line() == 3);
    CHECK(error_of([] { parse_beats("2\n1\n"); }).code() == ErrorCode::kNonMonotonic);
    CHECK(error_of([] { parse_beats("# nothing\n"); }).code() == ErrorCode::kEmptySequence);
    CHECK(parse_beats("", {.allow_empty = true}).beats.empty());
  }

  TEST_CASE("parse_activation") {
    const auto a = parse_activation("fps=100\n0.0\n0.9\n");
    CHECK(a.fps() == 100.0);
    CHECK(a.size() == 2);
    CHECK(a[1] == 0.9);

    CHECK(error_of([] { parse_activation("0.0\n0.9\n"); }).code() == ErrorCode::kMissingFps);
    CHECK(error_of([] { parse_activation("fps=0\n0.1\n"); }).code() == ErrorCode::kMissingFps);
    const auto out = error_of([] { parse_activation("fps=100\n0.2\n1.5\n"); });
    CHECK(out.code() == ErrorCode::kValueOutOfRange);
    CHECK(out.line() == 3);
    CHECK(error_of([] { parse_activation("fps=100\nhigh\n"); }).code() == ErrorCode::kParseError);
  }

  TEST_CASE("formatting round-trips") {
    const BeatSequence b({0.0, 0.123456, 10.5});
    CHECK(format_beats(b) == "0.000000\n0.123456\n10.500000\n");
    CHECK(parse_beats(format_beats(b)).beats == b);

    const ActivationFunction a(50.0, {0.0, 0.25, 1.0});
    const auto back = parse_activation(format_activation(a));
    CHECK(back.fps() == 50.0);
    CHECK(std::vector<double>(back.values().begin(), back.values().end()) ==
          std::vector<double>{0.0, 0.25, 1.0});
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "beateval_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "beats.txt").string();
    write_text_file(path, "0.5\n1.0\n");
    CHECK(parse_beats_file(path).beats == BeatSequence({0.5, 1.0}));

    write_text_file(path, "0.5\nbad\n");
    const auto e = error_of([&] { parse_beats_file(path); });
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find(path) != std::string::npos);

    CHECK(error_of([&] { parse_beats_file((dir / "missing.txt").string()); }).code() ==
          ErrorCode::kIoError);
    std::filesystem::remove_all(dir);
  }
}
