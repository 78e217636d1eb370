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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "metaplectic/grid.hpp"

namespace metaplectic {

/// A positive, even weight on phase space: either a polynomial weight
/// v_s(z) = (1 + |z|)^s or a table of values on a phase-space grid.
class Weight {
 public:
  enum class Kind { polynomial, tabulated };

  /// v_0, the constant weight 1.
  Weight() = default;

  static Weight polynomial(double s);
  /// Values are row-major on `spec`. Throws for nonpositive or non-even data.
  static Weight tabulated(GridSpec spec, std::vector<double> values);

  /// Tabulated weights read the nearest sample, clamped to the table.
  double operator()(std::span<const double> z) const;

  Kind kind() const { return kind_; }
  double exponent() const { return s_; }
  bool trivial() const { return kind_ == Kind::polynomial && s_ == 0.0; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::polynomial;
  double s_ = 0.0;
  GridSpec spec_{1, 4};
  std::vector<double> table_;
};

/// Parses "1", "vs:1.5" or "v_1.5" into a polynomial weight.
Weight parse_weight(const std::string& text);

struct ModerateReport {
  double worst = 0.0;
  std::size_t samples = 0;
  bool moderate = false;
};

/// Samples m(z1 + z2) / (v(z1) m(z2)) over random pairs of points of `grid`
/// and compares the largest ratio against `bound`.
ModerateReport check_moderate(const Weight& m, const Weight& v, const GridSpec& grid,
                              std::size_t samples = 2000, std::uint64_t seed = 1,
                              double bound = 1.0);

}  // namespace metaplectic
