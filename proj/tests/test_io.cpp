#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "parsum/fuzz.hpp"
#include "parsum/matrix_io.hpp"

using namespace parsum;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("parsum_io_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("parses a plain real identity") {
  TempDir dir;
  const std::string f = dir.file("id.json");
  write_text(f, R"({"n":2,"real":[[1,0],[0,1]]})");
  const PsdMatrix m = parse_matrix(f);
  CHECK(max_abs_diff(m.matrix(), CMatrix::identity(2)) == 0.0);
}

TEST_CASE("parses an optional imaginary part") {
  TempDir dir;
  const std::string f = dir.file("herm.json");
  write_text(f, R"({"n":2,"real":[[1,0],[0,1]],"imag":[[0,0.5],[-0.5,0]]})");
  const PsdMatrix m = parse_matrix(f);
  CHECK(m.matrix()(0, 1) == cplx(0.0, 0.5));
  CHECK(m.matrix()(1, 0) == cplx(0.0, -0.5));
}

TEST_CASE("rejects malformed input with ParseError") {
  TempDir dir;
  const std::string f = dir.file("bad.json");

  write_text(f, "{ not json");
  CHECK_THROWS_AS(parse_matrix(f), ParseError);

  write_text(f, R"({"real":[[1]]})");
  CHECK_THROWS_AS(parse_matrix(f), ParseError);

  write_text(f, R"({"n":2,"real":[[1,0]]})");
  CHECK_THROWS_AS(parse_matrix(f), ParseError);

  write_text(f, R"({"n":2,"real":[[1,0],[0,"x"]]})");
  CHECK_THROWS_AS(parse_matrix(f), ParseError);

  CHECK_THROWS_AS(parse_matrix(dir.file("missing.json")), ParseError);
}

TEST_CASE("rejects a non-Hermitian matrix, naming the file") {
  TempDir dir;
  const std::string f = dir.file("nonherm.json");
  write_text(f, R"({"n":2,"real":[[0,1],[0,0]]})");
  try {
    parse_matrix(f);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("nonherm.json") != std::string::npos);
    CHECK(std::string(e.what()).find("Hermitian") != std::string::npos);
  }
}

TEST_CASE("rejects an indefinite matrix, naming the file") {
  TempDir dir;
  const std::string f = dir.file("indef.json");
  write_text(f, R"({"n":2,"real":[[-1,0],[0,1]]})");
  try {
    parse_matrix(f);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("indef.json") != std::string::npos);
    CHECK(std::string(e.what()).find("positive semi-definite") != std::string::npos);
  }
}

TEST_CASE("write-then-parse round trip is bit exact") {
  TempDir dir;
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const bool complex_entries = trial % 2 == 0;
    const PsdMatrix m = random_psd(n, rng, complex_entries, true);
    const std::string f = dir.file("m" + std::to_string(trial) + ".json");
    write_matrix_file(f, m.matrix());
    const CMatrix back = read_matrix_file(f);
    CHECK(back == m.matrix());
  }
}

TEST_CASE("real matrices serialize without an imag block") {
  TempDir dir;
  const std::string f = dir.file("real.json");
  write_matrix_file(f, CMatrix::identity(2));
  std::ifstream in(f);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("imag") == std::string::npos);
}
