/* Copyright 2026 The metaplectic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>

#include "metaplectic/io.hpp"
#include "metaplectic/random.hpp"
#include "oracles.hpp"
#include "tempdir.hpp"

using namespace metaplectic;
using Mat = Matrix<double>;

TEST_SUITE("io") {

TEST_CASE("rational matrices round-trip exactly") {
  TempDir dir;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix<Rational> a = random_symplectic<Rational>(1 + t % 2, rng);
    io::write_matrix(dir / "a.json", a);
    const io::MatrixFile back = io::read_matrix(dir / "a.json");
    CHECK(back.mode == io::MatrixMode::rational);
    CHECK(back.exact == a);
  }
}

TEST_CASE("float matrices round-trip bit for bit") {
  TempDir dir;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  Mat a(3, 5);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) a(i, j) = g(rng) * std::pow(10.0, static_cast<int>(i * 5 + j) - 7);
  a(0, 0) = 0.1;
  a(2, 4) = -5e-324;
  io::write_matrix(dir / "a.json", a);
  const io::MatrixFile back = io::read_matrix(dir / "a.json");
  CHECK(back.mode == io::MatrixMode::float64);
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    CHECK(std::memcmp(&a.entries()[i], &back.value.entries()[i], sizeof(double)) == 0);
}

TEST_CASE("matrix JSON parsing") {
  const io::MatrixFile m = io::parse_matrix(
      R"({"rows": 2, "cols": 2, "mode": "rational", "entries": [["1/2", "-3"], [4, "0/1"]]})");
  CHECK(m.exact(0, 0) == Rational(1, 2));
  CHECK(m.exact(0, 1) == Rational(-3));
  CHECK(m.exact(1, 0) == Rational(4));
  CHECK(m.value(0, 0) == 0.5);
  const io::MatrixFile f = io::parse_matrix(R"({"rows": 1, "cols": 2, "entries": [[0.25, -1e3]]})");
  CHECK(f.mode == io::MatrixMode::float64);
  CHECK(f.value(0, 1) == -1000.0);
  CHECK_THROWS_AS(io::parse_matrix("{"), IoError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 2, "cols": 1, "entries": [[1]]})"), IoError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 1, "cols": 2, "entries": [[1]]})"), IoError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 1, "cols": 1, "mode": "decimal", "entries": [[1]]})"),
                  IoError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 1, "cols": 1, "mode": "rational", "entries": [["1/0"]]})"),
                  IoError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 1, "cols": 1, "mode": "rational", "entries": [[true]]})"),
                  IoError);
  CHECK_THROWS_AS(io::read_matrix("/nonexistent/a.json"), IoError);
}

TEST_CASE("signals round-trip through CSV") {
  TempDir dir;
  for (int d : {1, 2}) {
    const GridSpec spec(d, 16);
    std::mt19937_64 rng(d);
    std::normal_distribution<double> g;
    DiscreteSignal f(spec);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = {g(rng), g(rng) * 1e-9};
    io::write_signal(dir / "f.csv", f);
    CHECK(std::filesystem::exists(dir / "f.csv.json"));
    const DiscreteSignal back = io::read_signal(dir / "f.csv");
    CHECK(back.spec() == spec);
    CHECK(max_abs_deviation(back.samples(), f.samples()) == 0.0);
  }
}

TEST_CASE("malformed signals are rejected") {
  TempDir dir;
  io::write_text(dir / "s.csv", "1,0\n2,0\n");
  CHECK_THROWS_AS(io::read_signal(dir / "s.csv"), IoError);
  io::write_text(dir / "s.csv.json", R"({"d": 1, "N": 4, "T": 2})");
  CHECK_THROWS_AS(io::read_signal(dir / "s.csv"), IoError);
  io::write_text(dir / "s.csv", "1,0\n2,0\n3\n4,0\n");
  CHECK_THROWS_AS(io::read_signal(dir / "s.csv"), IoError);
  io::write_text(dir / "s.csv", "1,0\n2,0\n3,x\n4,0\n");
  CHECK_THROWS_AS(io::read_signal(dir / "s.csv"), IoError);
  io::write_text(dir / "s.csv", "1,0\n2,0\r\n3,1\n4,0\n");
  CHECK(io::read_signal(dir / "s.csv")[2] == cplx(3, 1));
  io::write_text(dir / "s.csv.json", R"({"d": 1, "N": 6, "T": 2})");
  CHECK_THROWS_AS(io::read_signal(dir / "s.csv"), IoError);
}

TEST_CASE("TFGrid binary layout and round trip") {
  TempDir dir;
  const GridSpec spec(2, 4);
  TFGrid w{spec, std::vector<cplx>(spec.size()), "test"};
  for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = {0.5 * i, -1.0 / (i + 1)};
  io::write_tfgrid(dir / "w.bin", w);
  const std::string bytes = io::read_text(dir / "w.bin");
  REQUIRE(bytes.size() == 16 * 16);
  // 0.5 * 3 = 1.5 is 0x3FF8000000000000; little-endian puts 0x3F last.
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data()) + 16 * 3;
  CHECK(raw[7] == 0x3F);
  CHECK(raw[6] == 0xF8);
  CHECK(raw[0] == 0x00);
  const TFGrid back = io::read_tfgrid(dir / "w.bin");
  CHECK(back.spec == spec);
  CHECK(back.provenance == "test");
  CHECK(max_abs_deviation(back.values, w.values) == 0.0);
  io::write_text(dir / "w.bin", bytes.substr(0, 100));
  CHECK_THROWS_AS(io::read_tfgrid(dir / "w.bin"), IoError);
}

TEST_CASE("PGM image") {
  TempDir dir;
  const GridSpec spec(2, 4);
  TFGrid w{spec, std::vector<cplx>(spec.size()), ""};
  w.values[1 * 4 + 3] = 10.0;
  w.values[2 * 4 + 0] = 0.1;
  io::write_pgm(dir / "w.pgm", w, 60.0);
  const std::string img = io::read_text(dir / "w.pgm");
  const std::string header = "P5\n4 4\n255\n";
  REQUIRE(img.size() == header.size() + 16);
  CHECK(img.substr(0, header.size()) == header);
  const auto* px = reinterpret_cast<const unsigned char*>(img.data() + header.size());
  // Peak at x index 1, xi index 3 sits in the top row; -40 dB maps to 255 / 3.
  CHECK(px[0 * 4 + 1] == 255);
  CHECK(px[3 * 4 + 2] == 85);
  CHECK(px[2 * 4 + 2] == 0);
  CHECK_THROWS_AS(io::write_pgm(dir / "x.pgm", TFGrid{GridSpec(4, 4), {}, ""}), DimensionError);
}

TEST_CASE("report JSON") {
  RatioReport r;
  r.theorem = "t";
  r.hypothesis = "h";
  r.trials = 3;
  r.min_ratio = 0.5;
  r.max_ratio = 2.0;
  r.slope = 0.25;
  r.pass = true;
  r.table = {{1.0, 1.0}, {2.0, 1.5}};
  const std::string s = io::report_json(r);
  for (const char* key : {"\"theorem\"", "\"hypothesis\"", "\"trials\"", "\"min_ratio\"",
                          "\"max_ratio\"", "\"slope\"", "\"pass\": true", "\"table\""})
    CHECK(s.find(key) != std::string::npos);
}

}  // TEST_SUITE
