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

#include "metaplectic/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace metaplectic {

namespace {

double norm2(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return std::sqrt(s);
}

}  // namespace

Weight Weight::polynomial(double s) {
  if (!std::isfinite(s)) throw InvalidArgumentError("weight exponent must be finite");
  Weight w;
  w.s_ = s;
  return w;
}

Weight Weight::tabulated(GridSpec spec, std::vector<double> values) {
  if (values.size() != spec.size())
    throw GridError("tabulated weight: expected " + std::to_string(spec.size()) + " values, got " +
                    std::to_string(values.size()));
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgumentError("tabulated weight: values must be positive and finite");
  const int n = spec.n();
  std::vector<int> idx(spec.dim());
  for (std::size_t i = 0; i < values.size(); ++i) {
    spec.unravel(i, idx);
    bool mirrored = true;
    for (int& k : idx) {
      if (k == 0) mirrored = false;
      k = n - k;
    }
    if (!mirrored) continue;
    const double other = values[spec.ravel(idx)];
    if (std::abs(values[i] - other) > 1e-12 * std::max(values[i], other))
      throw InvalidArgumentError("tabulated weight: values are not even");
  }
  Weight w;
  w.kind_ = Kind::tabulated;
  w.spec_ = spec;
  w.table_ = std::move(values);
  return w;
}

double Weight::operator()(std::span<const double> z) const {
  if (kind_ == Kind::polynomial) return s_ == 0.0 ? 1.0 : std::pow(1.0 + norm2(z), s_);
  if (z.size() != static_cast<std::size_t>(spec_.dim()))
    throw DimensionError("weight: point has " + std::to_string(z.size()) +
                         " coordinates, table has " + std::to_string(spec_.dim()));
  std::vector<int> idx(z.size());
  for (std::size_t a = 0; a < z.size(); ++a) {
    const long k = std::lround((z[a] + 0.5 * spec_.extent()) / spec_.spacing());
    idx[a] = static_cast<int>(std::clamp<long>(k, 0, spec_.n() - 1));
  }
  return table_[spec_.ravel(idx)];
}

std::string Weight::describe() const {
  if (kind_ == Kind::tabulated) return "tabulated";
  char buf[64];
  std::snprintf(buf, sizeof buf, "v_%g", s_);
  return buf;
}

Weight parse_weight(const std::string& text) {
  if (text == "1" || text == "none") return Weight();
  for (const char* prefix : {"vs:", "v_"}) {
    const std::string p(prefix);
    if (text.rfind(p, 0) == 0) {
      std::size_t used = 0;
      double s = 0.0;
      try {
        s = std::stod(text.substr(p.size()), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != text.size() - p.size())
        throw InvalidArgumentError("weight: cannot parse exponent in '" + text + "'");
      return Weight::polynomial(s);
    }
  }
  throw InvalidArgumentError("weight: expected '1' or 'vs:SLOPE', got '" + text + "'");
}

ModerateReport check_moderate(const Weight& m, const Weight& v, const GridSpec& grid,
                              std::size_t samples, std::uint64_t seed, double bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, grid.n() - 1);
  const std::size_t dim = grid.dim();
  std::vector<double> z1(dim), z2(dim), sum(dim);
  ModerateReport r;
  r.samples = samples;
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t a = 0; a < dim; ++a) {
      z1[a] = grid.coordinate(pick(rng));
      z2[a] = grid.coordinate(pick(rng));
      sum[a] = z1[a] + z2[a];
    }
    const double v1 = v(z1);
    const double m2 = m(z2);
    const double top = m(sum);
    if (!(v1 > 0.0) || !(m2 > 0.0) || !(top > 0.0))
      throw InvalidArgumentError("check_moderate: nonpositive weight value");
    r.worst = std::max(r.worst, top / (v1 * m2));
  }
  r.moderate = r.worst <= bound * (1.0 + 1e-12);
  return r;
}

}  // namespace metaplectic
