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

#include <random>

#include "metaplectic/symplectic.hpp"

namespace metaplectic {

using Rng = std::mt19937_64;

/// Bounds for random rational entries p/q: |p| <= height, 1 <= q <= height.
struct RandomHeight {
  long numerator = 3;
  long denominator = 2;
};

template <class T>
T random_scalar(Rng& rng, RandomHeight h = {}) {
  std::uniform_int_distribution<long> num(-h.numerator, h.numerator);
  std::uniform_int_distribution<long> den(1, h.denominator);
  return ScalarTraits<T>::from_ratio(num(rng), den(rng));
}

template <class T>
Matrix<T> random_matrix(std::size_t rows, std::size_t cols, Rng& rng, RandomHeight h = {}) {
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar<T>(rng, h);
  return m;
}

template <class T>
Matrix<T> random_symmetric(std::size_t n, Rng& rng, RandomHeight h = {}) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = random_scalar<T>(rng, h);
      m(j, i) = m(i, j);
    }
  return m;
}

/// Rejection-samples an invertible matrix.
template <class T>
Matrix<T> random_invertible(std::size_t n, Rng& rng, RandomHeight h = {}) {
  for (;;) {
    Matrix<T> m = random_matrix<T>(n, n, rng, h);
    if (is_invertible(m)) return m;
  }
}

/// Random element of Sp(d) as a word of length 1..max_length in the
/// generators J, D_E and V_C.
template <class T>
Matrix<T> random_symplectic(std::size_t d, Rng& rng, std::size_t max_length = 8,
                            RandomHeight h = {}) {
  std::uniform_int_distribution<std::size_t> len(1, max_length);
  std::uniform_int_distribution<int> pick(0, 2);
  Matrix<T> out = Matrix<T>::identity(2 * d);
  const std::size_t n = len(rng);
  for (std::size_t k = 0; k < n; ++k) {
    switch (pick(rng)) {
      case 0: out = out * make_J<T>(d); break;
      case 1: out = out * make_dilation(random_invertible<T>(d, rng, h)); break;
      default: out = out * make_chirp(random_symmetric<T>(d, rng, h)); break;
    }
  }
  return out;
}

}  // namespace metaplectic
