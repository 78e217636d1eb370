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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "metaplectic/errors.hpp"
#include "metaplectic/scalar.hpp"

namespace metaplectic {

/// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& entries() const { return data_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("cannot multiply " + a.shape_string() + " by " + b.shape_string());
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError("shape mismatch: " + shape_string() + " vs " + o.shape_string());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (const auto& v : m.entries()) best = std::max(best, std::abs(ScalarTraits<T>::to_double(v)));
  return best;
}

/// Max-norm distance; converted to double in rational mode.
template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("shape mismatch: " + a.shape_string() + " vs " + b.shape_string());
  double best = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    T diff = a.entries()[k] - b.entries()[k];
    best = std::max(best, std::abs(ScalarTraits<T>::to_double(diff)));
  }
  return best;
}

/// Exact equality in rational mode, max-norm within `tol` in float mode.
template <class T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, double tol = 1e-12) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    return max_abs_diff(a, b) <= tol;
  }
}

template <class T>
bool is_symmetric(const Matrix<T>& m, double tol = 1e-12) {
  return m.square() && approx_equal(m, m.transpose(), tol);
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m, double tol = 1e-12) {
  for (const auto& v : m.entries())
    if (!ScalarTraits<T>::is_zero(v, tol)) return false;
  return true;
}

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(ScalarTraits<T>::to_double(v));
}

/// In-place Gaussian elimination returning the determinant. Partial pivoting by
/// magnitude; exact in rational mode.
template <class T>
T eliminate(Matrix<T>& work, Matrix<T>* rhs) {
  const std::size_t n = work.rows();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = magnitude(work(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      double m = magnitude(work(r, col));
      if (m > best || (best == 0.0 && !(work(r, col) == 0))) {
        best = m;
        pivot = r;
      }
    }
    if (work(pivot, col) == 0) return T(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(work(pivot, j), work(col, j));
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) std::swap((*rhs)(pivot, j), (*rhs)(col, j));
      det = -det;
    }
    const T p = work(col, col);
    det *= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      if (!rhs && r < col) continue;
      const T factor = work(r, col) / p;
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) work(r, j) -= factor * work(col, j);
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(r, j) -= factor * (*rhs)(col, j);
    }
    if (rhs) {
      for (std::size_t j = col; j < n; ++j) work(col, j) /= p;
      for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(col, j) /= p;
    }
  }
  return det;
}

}  // namespace detail

template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.square()) throw DimensionError("determinant of non-square " + m.shape_string());
  if (m.rows() == 0) return T(1);
  Matrix<T> work = m;
  return detail::eliminate<T>(work, nullptr);
}

/// Invertibility test. Rational: det != 0. Float: |det| > 1e-10 * ||m||_max^n,
/// a scale-aware cutoff.
template <class T>
bool is_invertible(const Matrix<T>& m) {
  if (!m.square()) return false;
  const T det = determinant(m);
  if constexpr (ScalarTraits<T>::exact) {
    return !(det == 0);
  } else {
    const double scale = max_abs(m);
    if (scale == 0.0) return false;
    return std::abs(det) > 1e-10 * std::pow(scale, static_cast<double>(m.rows()));
  }
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.square()) throw DimensionError("inverse of non-square " + m.shape_string());
  if (!is_invertible(m)) throw SingularMatrixError("matrix is singular");
  Matrix<T> work = m;
  Matrix<T> inv = Matrix<T>::identity(m.rows());
  detail::eliminate<T>(work, &inv);
  return inv;
}

template <class T>
Matrix<double> to_double(const Matrix<T>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ScalarTraits<T>::to_double(m(i, j));
  return out;
}

/// Assembles a matrix from a grid of equally shaped blocks.
template <class T>
Matrix<T> from_blocks(const std::vector<std::vector<Matrix<T>>>& blocks) {
  if (blocks.empty() || blocks.front().empty()) return {};
  const std::size_t br = blocks.front().front().rows();
  const std::size_t bc = blocks.front().front().cols();
  Matrix<T> out(br * blocks.size(), bc * blocks.front().size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != blocks.front().size()) throw DimensionError("ragged block grid");
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      const auto& b = blocks[i][j];
      if (b.rows() != br || b.cols() != bc) throw DimensionError("block shape mismatch");
      out.set_block(i * br, j * bc, b);
    }
  }
  return out;
}

/// True when every entry is an integer (exactly, or within 1e-12 in float mode).
template <class T>
bool is_integer_matrix(const Matrix<T>& m) {
  for (const auto& v : m.entries()) {
    if constexpr (ScalarTraits<T>::exact) {
      if (v.get_den() != 1) return false;
    } else {
      if (std::abs(v - std::round(v)) > 1e-12 * std::max(1.0, std::abs(v))) return false;
    }
  }
  return true;
}

}  // namespace metaplectic
