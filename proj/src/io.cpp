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

#include "metaplectic/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace metaplectic::io {

namespace {

using json = nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(what + ": " + e.what());
  }
}

std::size_t get_size(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw IoError(what + ": missing or invalid \"" + key + "\"");
  return j[key].get<std::size_t>();
}

Rational entry_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return parse_rational(std::to_string(v.get<long long>()));
  throw IoError("rational matrix entries must be \"p/q\" strings or integers");
}

double entry_double(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  throw IoError("float64 matrix entries must be numbers");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GridSpec read_grid_sidecar(const std::filesystem::path& data, int dim_factor) {
  const std::filesystem::path side = sidecar_path(data);
  const json j = parse_json(read_text(side), side.string());
  const std::size_t d = get_size(j, "d", side.string());
  const std::size_t n = get_size(j, "N", side.string());
  if (!j.contains("T") || !j["T"].is_number()) throw IoError(side.string() + ": missing \"T\"");
  try {
    return GridSpec(static_cast<int>(d) * dim_factor, static_cast<int>(n), j["T"].get<double>());
  } catch (const GridError& e) {
    throw IoError(side.string() + ": " + e.what());
  }
}

void write_grid_sidecar(const std::filesystem::path& data, const GridSpec& spec, int dim_factor,
                        const std::string& provenance) {
  json j;
  j["d"] = spec.dim() / dim_factor;
  j["N"] = spec.n();
  j["T"] = spec.extent();
  if (!provenance.empty()) j["provenance"] = provenance;
  write_text(sidecar_path(data), j.dump(2) + "\n");
}

void put_le(double v, char* out) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) out[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
}

double get_le(const unsigned char* in) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(in[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

MatrixFile parse_matrix(const std::string& json_text) {
  const json j = parse_json(json_text, "matrix");
  if (!j.is_object()) throw IoError("matrix: expected a JSON object");
  const std::size_t rows = get_size(j, "rows", "matrix");
  const std::size_t cols = get_size(j, "cols", "matrix");
  MatrixFile out;
  const std::string mode = j.value("mode", std::string("float64"));
  if (mode == "rational")
    out.mode = MatrixMode::rational;
  else if (mode != "float64")
    throw IoError("matrix: unknown mode '" + mode + "'");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows)
    throw IoError("matrix: \"entries\" must be an array of " + std::to_string(rows) + " rows");
  out.exact = Matrix<Rational>(rows, cols);
  out.value = Matrix<double>(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j["entries"][i];
    if (!row.is_array() || row.size() != cols)
      throw IoError("matrix: row " + std::to_string(i) + " must have " + std::to_string(cols) +
                    " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      if (out.mode == MatrixMode::rational) {
        out.exact(i, k) = entry_rational(row[k]);
        out.value(i, k) = out.exact(i, k).get_d();
      } else {
        out.value(i, k) = entry_double(row[k]);
      }
    }
  }
  if (out.mode == MatrixMode::float64) out.exact = Matrix<Rational>();
  return out;
}

MatrixFile read_matrix(const std::filesystem::path& path) {
  try {
    return parse_matrix(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string matrix_json(const Matrix<Rational>& m) {
  std::string s = "{\"rows\": " + std::to_string(m.rows()) + ", \"cols\": " +
                  std::to_string(m.cols()) + ", \"mode\": \"rational\", \"entries\": [";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t k = 0; k < m.cols(); ++k) s += (k ? ", \"" : "\"") + format_rational(m(i, k)) + "\"";
    s += "]";
  }
  return s + "]}\n";
}

std::string matrix_json(const Matrix<double>& m) {
  std::string s = "{\"rows\": " + std::to_string(m.rows()) + ", \"cols\": " +
                  std::to_string(m.cols()) + ", \"mode\": \"float64\", \"entries\": [";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (!std::isfinite(m(i, k))) throw IoError("matrix_json: non-finite entry");
      s += (k ? ", " : "") + format_double(m(i, k));
    }
    s += "]";
  }
  return s + "]}\n";
}

void write_matrix(const std::filesystem::path& path, const Matrix<Rational>& m) {
  write_text(path, matrix_json(m));
}

void write_matrix(const std::filesystem::path& path, const Matrix<double>& m) {
  write_text(path, matrix_json(m));
}

std::filesystem::path sidecar_path(const std::filesystem::path& data) {
  return std::filesystem::path(data.string() + ".json");
}

void write_signal(const std::filesystem::path& path, const DiscreteSignal& f) {
  std::string text;
  text.reserve(f.size() * 48);
  for (const cplx& v : f.samples()) text += format_double(v.real()) + "," + format_double(v.imag()) + "\n";
  write_text(path, text);
  write_grid_sidecar(path, f.spec(), 1, "");
}

DiscreteSignal read_signal(const std::filesystem::path& path) {
  const GridSpec spec = read_grid_sidecar(path, 1);
  std::istringstream in(read_text(path));
  std::vector<cplx> samples;
  samples.reserve(spec.size());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 're,im'");
    char* end = nullptr;
    const std::string re = line.substr(0, comma);
    const std::string im = line.substr(comma + 1);
    const double a = std::strtod(re.c_str(), &end);
    if (re.empty() || *end != '\0')
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad real part");
    const double b = std::strtod(im.c_str(), &end);
    if (im.empty() || *end != '\0')
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": bad imaginary part");
    samples.emplace_back(a, b);
  }
  if (samples.size() != spec.size())
    throw IoError(path.string() + ": expected " + std::to_string(spec.size()) + " samples, got " +
                  std::to_string(samples.size()));
  return DiscreteSignal(spec, std::move(samples));
}

void write_tfgrid(const std::filesystem::path& path, const TFGrid& w) {
  if (w.values.size() != w.spec.size()) throw IoError("write_tfgrid: size mismatch");
  std::string bytes(w.values.size() * 16, '\0');
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    put_le(w.values[i].real(), &bytes[16 * i]);
    put_le(w.values[i].imag(), &bytes[16 * i + 8]);
  }
  write_text(path, bytes);
  write_grid_sidecar(path, w.spec, 2, w.provenance);
}

TFGrid read_tfgrid(const std::filesystem::path& path) {
  const GridSpec spec = read_grid_sidecar(path, 2);
  const std::string bytes = read_text(path);
  if (bytes.size() != spec.size() * 16)
    throw IoError(path.string() + ": expected " + std::to_string(spec.size() * 16) + " bytes, got " +
                  std::to_string(bytes.size()));
  const json side = parse_json(read_text(sidecar_path(path)), sidecar_path(path).string());
  TFGrid w{spec, std::vector<cplx>(spec.size()), side.value("provenance", std::string())};
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  for (std::size_t i = 0; i < w.values.size(); ++i)
    w.values[i] = {get_le(raw + 16 * i), get_le(raw + 16 * i + 8)};
  return w;
}

void write_tfgrid_csv(const std::filesystem::path& path, const TFGrid& w) {
  std::string text;
  text.reserve(w.values.size() * 48);
  for (const cplx& v : w.values) text += format_double(v.real()) + "," + format_double(v.imag()) + "\n";
  write_text(path, text);
  write_grid_sidecar(path, w.spec, 2, w.provenance);
}

void write_pgm(const std::filesystem::path& path, const TFGrid& w, double range_db) {
  if (w.spec.dim() != 2) throw DimensionError("write_pgm: only d = 1 distributions can be drawn");
  if (!(range_db > 0.0)) throw InvalidArgumentError("write_pgm: range must be positive");
  const int n = w.spec.n();
  double peak = 0.0;
  for (const cplx& v : w.values) peak = std::max(peak, std::abs(v));
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + static_cast<std::size_t>(n) * n);
  for (int row = 0; row < n; ++row) {
    const int xi = n - 1 - row;
    for (int x = 0; x < n; ++x) {
      const double mag = std::abs(w.values[static_cast<std::size_t>(x) * n + xi]);
      double level = 0.0;
      if (peak > 0.0 && mag > 0.0) {
        const double db = 20.0 * std::log10(mag / peak);
        level = std::clamp(1.0 + db / range_db, 0.0, 1.0);
      }
      out[header + static_cast<std::size_t>(row) * n + x] =
          static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * level)));
    }
  }
  write_text(path, out);
}

std::string report_json(const RatioReport& r) {
  json j;
  j["theorem"] = r.theorem;
  j["hypothesis"] = r.hypothesis;
  j["hypothesis_ok"] = r.hypothesis_ok;
  j["trials"] = r.trials;
  j["min_ratio"] = r.min_ratio;
  j["max_ratio"] = r.max_ratio;
  j["mean"] = r.mean;
  j["stddev"] = r.stddev;
  j["slope"] = r.slope ? json(*r.slope) : json(nullptr);
  j["expected"] = r.expected ? json(*r.expected) : json(nullptr);
  if (!r.table.empty()) {
    json rows = json::array();
    for (const auto& [a, v] : r.table) rows.push_back({a, v});
    j["table"] = rows;
  }
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

}  // namespace metaplectic::io
