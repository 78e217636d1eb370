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

#include <array>
#include <optional>
#include <string>

#include "metaplectic/matrix.hpp"

namespace metaplectic {

// ---------------------------------------------------------------------------
// Named matrices. Every constructor takes the half-dimension `d` of the
// symplectic group it lives in, so make_J(d) is 2d x 2d and the Wigner-level
// matrices (A_ST, A_tau, A_FT2, K, Lift) are 4d x 4d for signals on R^d.
// ---------------------------------------------------------------------------

/// Standard symplectic form [[0, I], [-I, 0]], 2d x 2d.
template <class T>
Matrix<T> make_J(std::size_t d) {
  Matrix<T> j(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    j(i, d + i) = T(1);
    j(d + i, i) = T(-1);
  }
  return j;
}

/// The flip [[0, I], [I, 0]], 2d x 2d. Not symplectic (L^T J L = -J).
template <class T>
Matrix<T> make_L(std::size_t d) {
  Matrix<T> l(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    l(i, d + i) = T(1);
    l(d + i, i) = T(1);
  }
  return l;
}

/// D_E = diag(E^{-1}, E^T), the projection of f -> |det E|^{1/2} f(E .).
template <class T>
Matrix<T> make_dilation(const Matrix<T>& e) {
  if (!e.square()) throw DimensionError("D_E needs a square E");
  if (!is_invertible(e)) throw SingularMatrixError("D_E needs an invertible E");
  const std::size_t d = e.rows();
  Matrix<T> out(2 * d, 2 * d);
  out.set_block(0, 0, inverse(e));
  out.set_block(d, d, e.transpose());
  return out;
}

/// V_C = [[I, 0], [C, I]], the projection of multiplication by the chirp e^{i pi t.Ct}.
template <class T>
Matrix<T> make_chirp(const Matrix<T>& c, double tol = 1e-12) {
  if (!is_symmetric(c, tol)) throw InvalidArgumentError("V_C needs a symmetric C");
  const std::size_t d = c.rows();
  Matrix<T> out = Matrix<T>::identity(2 * d);
  out.set_block(d, 0, c);
  return out;
}

/// V_C^T = [[I, C], [0, I]].
template <class T>
Matrix<T> make_chirp_transpose(const Matrix<T>& c, double tol = 1e-12) {
  return make_chirp(c, tol).transpose();
}

/// Column permutation K (4d x 4d) that regroups a Wigner-level matrix as
/// [[E, Ecal], [F, Fcal]] K. Not symplectic.
template <class T>
Matrix<T> make_K(std::size_t d) {
  Matrix<T> k(4 * d, 4 * d);
  const Matrix<T> id = Matrix<T>::identity(d);
  k.set_block(0, 0, id);
  k.set_block(d, 2 * d, id);
  k.set_block(2 * d, d, id);
  k.set_block(3 * d, 3 * d, id);
  return k;
}

/// Symplectic matrix of the short-time Fourier transform, V_g f = A_ST(f (x) conj g).
template <class T>
Matrix<T> make_A_ST(std::size_t d) {
  const Matrix<T> id = Matrix<T>::identity(d);
  Matrix<T> a(4 * d, 4 * d);
  a.set_block(0, 0, id);
  a.set_block(0, d, -id);
  a.set_block(d, 2 * d, id);
  a.set_block(d, 3 * d, id);
  a.set_block(2 * d, 3 * d, -id);
  a.set_block(3 * d, 0, -id);
  return a;
}

/// Symplectic matrix of the tau-Wigner distribution.
template <class T>
Matrix<T> make_A_tau(const T& tau, std::size_t d) {
  const Matrix<T> id = Matrix<T>::identity(d);
  const T one_minus = T(1) - tau;
  Matrix<T> a(4 * d, 4 * d);
  a.set_block(0, 0, id * one_minus);
  a.set_block(0, d, id * tau);
  a.set_block(d, 2 * d, id * tau);
  a.set_block(d, 3 * d, id * T(-one_minus));
  a.set_block(2 * d, 2 * d, id);
  a.set_block(2 * d, 3 * d, id);
  a.set_block(3 * d, 0, -id);
  a.set_block(3 * d, d, id);
  return a;
}

/// Symplectic matrix of the partial Fourier transform in the second variables.
template <class T>
Matrix<T> make_A_FT2(std::size_t d) {
  const Matrix<T> id = Matrix<T>::identity(d);
  Matrix<T> a(4 * d, 4 * d);
  a.set_block(0, 0, id);
  a.set_block(d, 3 * d, id);
  a.set_block(2 * d, 2 * d, id);
  a.set_block(3 * d, d, -id);
  return a;
}

template <class T>
bool is_symplectic(const Matrix<T>& m, std::size_t d, double tol = 1e-12);

/// Lift(G): the 4d x 4d matrix acting as G on the second tensor factor.
template <class T>
Matrix<T> make_lift(const Matrix<T>& g, double tol = 1e-12) {
  if (!g.square() || g.rows() % 2 != 0) throw DimensionError("Lift needs a 2d x 2d matrix");
  const std::size_t d = g.rows() / 2;
  if (!is_symplectic(g, d, tol)) throw NotSymplecticError("Lift needs a symplectic G");
  const Matrix<T> id = Matrix<T>::identity(d);
  Matrix<T> out(4 * d, 4 * d);
  out.set_block(0, 0, id);
  out.set_block(2 * d, 2 * d, id);
  out.set_block(d, d, g.block(0, 0, d, d));
  out.set_block(d, 3 * d, g.block(0, d, d, d));
  out.set_block(3 * d, d, g.block(d, 0, d, d));
  out.set_block(3 * d, 3 * d, g.block(d, d, d, d));
  return out;
}

/// G with its anti-diagonal blocks negated.
template <class T>
Matrix<T> conj_blocks(const Matrix<T>& g) {
  if (!g.square() || g.rows() % 2 != 0) throw DimensionError("conj needs an even square matrix");
  const std::size_t d = g.rows() / 2;
  Matrix<T> out = g;
  out.set_block(0, d, -g.block(0, d, d, d));
  out.set_block(d, 0, -g.block(d, 0, d, d));
  return out;
}

/// m^T J m == J, exactly in rational mode and within `tol` (max-norm) in float mode.
template <class T>
bool is_symplectic(const Matrix<T>& m, std::size_t d, double tol) {
  if (m.rows() != 2 * d || m.cols() != 2 * d)
    throw DimensionError("is_symplectic: expected " + std::to_string(2 * d) + "x" +
                         std::to_string(2 * d) + ", got " + m.shape_string());
  const Matrix<T> j = make_J<T>(d);
  return approx_equal(Matrix<T>(m.transpose() * j * m), j, tol);
}

template <class T>
bool is_symplectic(const Matrix<T>& m, double tol = 1e-12) {
  if (!m.square() || m.rows() % 2 != 0) return false;
  return is_symplectic(m, m.rows() / 2, tol);
}

/// Inverse of a symplectic matrix through J^{-1} m^T J.
template <class T>
Matrix<T> symplectic_inverse(const Matrix<T>& m) {
  const std::size_t d = m.rows() / 2;
  const Matrix<T> j = make_J<T>(d);
  return -(j * m.transpose() * j);
}

// ---------------------------------------------------------------------------
// Block structure of 4d x 4d matrices.
// ---------------------------------------------------------------------------

/// The sixteen d x d blocks A11..A44 of a 4d x 4d matrix.
template <class T>
struct BlockView {
  std::size_t d = 0;
  std::array<Matrix<T>, 16> b;

  /// 1-based block access, at(1, 3) is A13.
  const Matrix<T>& at(int i, int j) const { return b[(i - 1) * 4 + (j - 1)]; }

  Matrix<T> reassemble() const {
    Matrix<T> out(4 * d, 4 * d);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.set_block(i * d, j * d, b[i * 4 + j]);
    return out;
  }
};

template <class T>
BlockView<T> blocks(const Matrix<T>& m) {
  if (!m.square() || m.rows() == 0 || m.rows() % 4 != 0)
    throw DimensionError("blocks: expected a 4d x 4d matrix, got " + m.shape_string());
  BlockView<T> view;
  view.d = m.rows() / 4;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) view.b[i * 4 + j] = m.block(i * view.d, j * view.d, view.d, view.d);
  return view;
}

/// E_A, F_A and their script counterparts (2d x 2d each).
template <class T>
struct Submatrices {
  Matrix<T> E;
  Matrix<T> F;
  Matrix<T> Ecal;
  Matrix<T> Fcal;
};

template <class T>
Submatrices<T> submatrices(const Matrix<T>& m) {
  const BlockView<T> v = blocks(m);
  auto pair = [&](int r1, int c1, int c2, int r2) {
    return from_blocks<T>({{v.at(r1, c1), v.at(r1, c2)}, {v.at(r2, c1), v.at(r2, c2)}});
  };
  Submatrices<T> s;
  s.E = pair(1, 1, 3, 2);
  s.F = pair(3, 1, 3, 4);
  s.Ecal = pair(1, 2, 4, 2);
  s.Fcal = pair(3, 2, 4, 4);
  return s;
}

/// Max-norm residuals of E^T F - F^T E = J, Ecal^T Fcal - Fcal^T Ecal = J and
/// E^T Fcal - F^T Ecal = 0.
template <class T>
std::array<double, 3> submatrix_residuals(const Submatrices<T>& s) {
  const std::size_t d = s.E.rows() / 2;
  const Matrix<T> j = make_J<T>(d);
  const Matrix<T> zero(2 * d, 2 * d);
  return {max_abs_diff(Matrix<T>(s.E.transpose() * s.F - s.F.transpose() * s.E), j),
          max_abs_diff(Matrix<T>(s.Ecal.transpose() * s.Fcal - s.Fcal.transpose() * s.Ecal), j),
          max_abs_diff(Matrix<T>(s.E.transpose() * s.Fcal - s.F.transpose() * s.Ecal), zero)};
}

template <class T>
bool submatrix_relations_hold(const Submatrices<T>& s, double tol = 1e-12) {
  for (double r : submatrix_residuals(s)) {
    if constexpr (ScalarTraits<T>::exact) {
      if (r != 0.0) return false;
    } else {
      if (r > tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Named-matrix dispatch used by the command line.
// ---------------------------------------------------------------------------

enum class NamedKind { J, D_E, V_C, V_C_T, L, K, A_ST, A_tau, A_FT2, Lift };

std::optional<NamedKind> parse_named_kind(const std::string& name);
std::string to_string(NamedKind kind);

/// Parameters for make_named. `param` is E, C or G depending on the kind.
template <class T>
struct NamedSpec {
  NamedKind kind = NamedKind::J;
  std::size_t d = 1;
  Matrix<T> param;
  T tau = T(0);
};

template <class T>
Matrix<T> make_named(const NamedSpec<T>& spec) {
  switch (spec.kind) {
    case NamedKind::J: return make_J<T>(spec.d);
    case NamedKind::D_E: return make_dilation(spec.param);
    case NamedKind::V_C: return make_chirp(spec.param);
    case NamedKind::V_C_T: return make_chirp_transpose(spec.param);
    case NamedKind::L: return make_L<T>(spec.d);
    case NamedKind::K: return make_K<T>(spec.d);
    case NamedKind::A_ST: return make_A_ST<T>(spec.d);
    case NamedKind::A_tau: return make_A_tau<T>(spec.tau, spec.d);
    case NamedKind::A_FT2: return make_A_FT2<T>(spec.d);
    case NamedKind::Lift: return make_lift(spec.param);
  }
  throw InvalidArgumentError("unknown named matrix");
}

inline std::optional<NamedKind> parse_named_kind(const std::string& name) {
  if (name == "J") return NamedKind::J;
  if (name == "D_E" || name == "D") return NamedKind::D_E;
  if (name == "V_C" || name == "V") return NamedKind::V_C;
  if (name == "V_C_T" || name == "VT") return NamedKind::V_C_T;
  if (name == "L") return NamedKind::L;
  if (name == "K") return NamedKind::K;
  if (name == "A_ST" || name == "AST") return NamedKind::A_ST;
  if (name == "A_tau" || name == "Atau") return NamedKind::A_tau;
  if (name == "A_FT2" || name == "AFT2") return NamedKind::A_FT2;
  if (name == "Lift") return NamedKind::Lift;
  return std::nullopt;
}

inline std::string to_string(NamedKind kind) {
  switch (kind) {
    case NamedKind::J: return "J";
    case NamedKind::D_E: return "D_E";
    case NamedKind::V_C: return "V_C";
    case NamedKind::V_C_T: return "V_C_T";
    case NamedKind::L: return "L";
    case NamedKind::K: return "K";
    case NamedKind::A_ST: return "A_ST";
    case NamedKind::A_tau: return "A_tau";
    case NamedKind::A_FT2: return "A_FT2";
    case NamedKind::Lift: return "Lift";
  }
  return "?";
}

}  // namespace metaplectic
