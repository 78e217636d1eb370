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

// Shift-invertible Wigner-level matrices A in Sp(2d): those whose block E_A is
// invertible. Such an A factors uniquely as
//
//   A = D_{E^{-1}} V_C V_L^T Lift(S),   (E, C, S) in GL(2d) x Sym(2d) x Sp(d),
//
// with E = E_A, C = M_A and S = G_A = L E_A^{-1} Ecal_A. `alpha` builds A from
// a triple and `factorize` recovers the triple.

#include "metaplectic/symplectic.hpp"

namespace metaplectic {

/// An element of GL(2d) x Sym(2d) x Sp(d).
template <class T>
struct CGTriple {
  Matrix<T> E;
  Matrix<T> C;
  Matrix<T> S;
};

template <class T>
struct ShiftInvertibleData {
  Matrix<T> E;
  Matrix<T> M;
  Matrix<T> G;
  /// J conj(G): projection of the window-side deformation operator.
  Matrix<T> deformation;
};

namespace detail {

template <class T>
void require_wigner_symplectic(const Matrix<T>& a, double tol) {
  if (!a.square() || a.rows() == 0 || a.rows() % 4 != 0)
    throw DimensionError("expected a 4d x 4d matrix, got " + a.shape_string());
  if (!is_symplectic(a, a.rows() / 2, tol)) throw NotSymplecticError("matrix is not symplectic");
}

/// [[0, I], [0, 0]] (upper) or [[0, 0], [I, 0]] (lower), 2d x 2d.
template <class T>
Matrix<T> corner_identity(std::size_t d, bool upper) {
  Matrix<T> out(2 * d, 2 * d);
  if (upper)
    out.set_block(0, d, Matrix<T>::identity(d));
  else
    out.set_block(d, 0, Matrix<T>::identity(d));
  return out;
}

}  // namespace detail

template <class T>
bool is_shift_invertible(const Matrix<T>& a, double tol = 1e-12) {
  detail::require_wigner_symplectic(a, tol);
  return is_invertible(submatrices(a).E);
}

/// The symmetric matrix M_A, built blockwise from A's 16 blocks.
template <class T>
Matrix<T> compute_MA(const Matrix<T>& a) {
  if (!a.square() || a.rows() == 0 || a.rows() % 4 != 0)
    throw DimensionError("compute_MA: expected a 4d x 4d matrix, got " + a.shape_string());
  const BlockView<T> v = blocks(a);
  auto t = [](const Matrix<T>& m) { return m.transpose(); };
  const Matrix<T> m11 = t(v.at(1, 1)) * v.at(3, 1) + t(v.at(2, 1)) * v.at(4, 1);
  const Matrix<T> m12 = t(v.at(3, 1)) * v.at(1, 3) + t(v.at(4, 1)) * v.at(2, 3);
  const Matrix<T> m21 = t(v.at(1, 3)) * v.at(3, 1) + t(v.at(2, 3)) * v.at(4, 1);
  const Matrix<T> m22 = t(v.at(1, 3)) * v.at(3, 3) + t(v.at(2, 3)) * v.at(4, 3);
  return from_blocks<T>({{m11, m12}, {m21, m22}});
}

/// G_A = L E_A^{-1} Ecal_A, symplectic whenever A is.
template <class T>
Matrix<T> compute_GA(const Matrix<T>& a, double tol = 1e-12) {
  detail::require_wigner_symplectic(a, tol);
  const Submatrices<T> s = submatrices(a);
  if (!is_invertible(s.E)) throw NotShiftInvertibleError("E_A is singular");
  const std::size_t d = a.rows() / 4;
  return make_L<T>(d) * inverse(s.E) * s.Ecal;
}

/// D_{E^{-1}} V_C V_L^T Lift(S).
template <class T>
Matrix<T> alpha(const CGTriple<T>& t, double tol = 1e-12) {
  if (!t.E.square() || t.E.rows() % 2 != 0 || t.E.rows() == 0)
    throw DimensionError("alpha: E must be 2d x 2d");
  const std::size_t n = t.E.rows();
  const std::size_t d = n / 2;
  if (t.C.rows() != n || t.C.cols() != n || t.S.rows() != n || t.S.cols() != n)
    throw DimensionError("alpha: E, C and S must share the shape " + t.E.shape_string());
  if (!is_invertible(t.E)) throw InvalidArgumentError("alpha: E is not invertible");
  if (!is_symmetric(t.C, tol)) throw InvalidArgumentError("alpha: C is not symmetric");
  if (!is_symplectic(t.S, d, tol)) throw InvalidArgumentError("alpha: S is not symplectic");
  return make_dilation(inverse(t.E)) * make_chirp(t.C, tol) *
         make_chirp_transpose(make_L<T>(d)) * make_lift(t.S, tol);
}

/// Recovers (E_A, C, G_A) with alpha(E_A, C, G_A) == A.
///
/// Two chirp slots are in circulation for this factorization, C = M_A and
/// C = M_A + L. Both are tried and the one that reproduces A is returned;
/// on A_ST only M_A does.
template <class T>
CGTriple<T> factorize(const Matrix<T>& a, double tol = 1e-12) {
  detail::require_wigner_symplectic(a, tol);
  const Submatrices<T> s = submatrices(a);
  if (!is_invertible(s.E)) throw NotShiftInvertibleError("factorize: E_A is singular");
  const std::size_t d = a.rows() / 4;
  const Matrix<T> m = compute_MA(a);
  const Matrix<T> g = make_L<T>(d) * inverse(s.E) * s.Ecal;
  const double scale = std::max(1.0, max_abs(a));
  for (const Matrix<T>& c : {m, Matrix<T>(m + make_L<T>(d))}) {
    CGTriple<T> candidate{s.E, c, g};
    if (approx_equal(alpha(candidate, tol), a, tol * scale)) return candidate;
  }
  throw DecompositionError("factorize: no chirp candidate reproduces A");
}

/// The four submatrices of alpha(E, M, G) computed directly from the triple.
template <class T>
Submatrices<T> reconstruct_blocks(const Matrix<T>& e, const Matrix<T>& m, const Matrix<T>& g) {
  if (!is_invertible(e)) throw SingularMatrixError("reconstruct_blocks: E is singular");
  const std::size_t d = e.rows() / 2;
  const Matrix<T> l = make_L<T>(d);
  const Matrix<T> e_inv_t = inverse(e).transpose();
  Submatrices<T> s;
  s.E = e;
  s.Ecal = e * l * g;
  s.F = e_inv_t * (m + detail::corner_identity<T>(d, true));
  s.Fcal = e_inv_t * (m + detail::corner_identity<T>(d, false)) * l * g;
  return s;
}

/// J conj(G_A), the symplectic projection of the deformation operator.
template <class T>
Matrix<T> deformation(const Matrix<T>& a, double tol = 1e-12) {
  const Matrix<T> g = compute_GA(a, tol);
  return make_J<T>(g.rows() / 2) * conj_blocks(g);
}

template <class T>
ShiftInvertibleData<T> analyze_shift_invertible(const Matrix<T>& a, double tol = 1e-12) {
  ShiftInvertibleData<T> out;
  const Submatrices<T> s = submatrices(a);
  out.G = compute_GA(a, tol);
  out.E = s.E;
  out.M = compute_MA(a);
  out.deformation = make_J<T>(out.G.rows() / 2) * conj_blocks(out.G);
  return out;
}

}  // namespace metaplectic
