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

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "metaplectic/errors.hpp"

namespace metaplectic {

/// Exact rational scalar backed by GMP.
using Rational = mpq_class;

/// Scalar modes: exact rationals for matrix identities, doubles for everything
/// that touches sampled signals.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode_name = "float64";

  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double from_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode_name = "rational";

  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static Rational from_ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  /// Exact binary value of a double.
  static Rational from_double(double x) { return Rational(x); }
};

/// Parses "p/q", "p" or a decimal literal into an exact rational.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.find_first_of(".eE") != std::string::npos) {
    try {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw IoError("malformed rational '" + text + "'");
      return Rational(v);
    } catch (const std::logic_error&) {
      throw IoError("malformed rational '" + text + "'");
    }
  }
  if (r.set_str(text, 10) != 0) throw IoError("malformed rational '" + text + "'");
  if (r.get_den() == 0) throw IoError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str() + "/1";
  return r.get_str();
}

}  // namespace metaplectic
