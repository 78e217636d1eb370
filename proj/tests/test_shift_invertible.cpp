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

#include "metaplectic/random.hpp"
#include "metaplectic/shift_invertible.hpp"
#include "oracles.hpp"

using namespace metaplectic;
using Q = Rational;

namespace {

CGTriple<Q> random_triple(std::size_t d, Rng& rng) {
  return {random_invertible<Q>(2 * d, rng), random_symmetric<Q>(2 * d, rng),
          random_symplectic<Q>(d, rng)};
}

Matrix<Q> neg(const Matrix<Q>& m) { return -m; }

}  // namespace

TEST_SUITE("shift_invertible") {

TEST_CASE("shift-invertibility of named matrices") {
  CHECK(is_shift_invertible(make_A_ST<Q>(1)));
  CHECK(is_shift_invertible(make_A_tau<Q>(Q(1, 2), 1)));
  CHECK_FALSE(is_shift_invertible(make_A_tau<Q>(Q(0), 1)));
  CHECK_FALSE(is_shift_invertible(make_A_FT2<Q>(1)));
  CHECK_THROWS_AS(is_shift_invertible(make_K<Q>(1)), NotSymplecticError);
}

TEST_CASE("A_ST cubed is not shift-invertible") {
  const Matrix<Q> a = make_A_ST<Q>(1);
  CHECK(is_shift_invertible(a));
  CHECK_FALSE(is_shift_invertible(Matrix<Q>(a * a * a)));
}

TEST_CASE("M_A of A_ST and A_tau") {
  CHECK(compute_MA(make_A_ST<Q>(1)) == neg(make_L<Q>(1)));
  CHECK(compute_MA(make_A_ST<Q>(2)) == neg(make_L<Q>(2)));
  for (Q tau : {Q(1, 2), Q(1, 3), Q(3, 4)})
    CHECK(compute_MA(make_A_tau<Q>(tau, 1)) == Matrix<Q>(-tau * make_L<Q>(1)));
}

TEST_CASE("G_A of A_ST and A_tau") {
  CHECK(compute_GA(make_A_ST<Q>(1)) == make_J<Q>(1));
  for (Q tau : {Q(1, 2), Q(1, 4), Q(2, 3)}) {
    const Q a = (1 - tau) / tau;
    const Q b = tau / (1 - tau);
    CHECK(compute_GA(make_A_tau<Q>(tau, 1)) == Matrix<Q>{{Q(0), Q(-a)}, {b, Q(0)}});
  }
  CHECK_THROWS_AS(compute_GA(make_A_FT2<Q>(1)), NotShiftInvertibleError);
}

TEST_CASE("factorize anchors") {
  const CGTriple<Q> st = factorize(make_A_ST<Q>(1));
  CHECK(st.E == Matrix<Q>::identity(2));
  CHECK(st.C == neg(make_L<Q>(1)));
  CHECK(st.S == make_J<Q>(1));
  const CGTriple<Q> half = factorize(make_A_tau<Q>(Q(1, 2), 1));
  CHECK(half.E == Matrix<Q>(Q(1, 2) * Matrix<Q>::identity(2)));
  CHECK(half.C == Matrix<Q>(Q(-1, 2) * make_L<Q>(1)));
  CHECK(half.S == Matrix<Q>{{Q(0), Q(-1)}, {Q(1), Q(0)}});
  CHECK_THROWS_AS(factorize(make_A_FT2<Q>(1)), NotShiftInvertibleError);
}

TEST_CASE("A_ST from the literal generator product") {
  // V_{-L} V_L^T Lift(J) assembled by the nested-vector oracle.
  const oracle::Table v_neg_l = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 1, 0}, {-1, 0, 0, 1}};
  const oracle::Table v_l_t = {{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const oracle::Table prod =
      oracle::multiply(oracle::multiply(v_neg_l, v_l_t), oracle::A_FT2_4());
  CHECK(oracle::to_matrix(prod) == make_A_ST<Q>(1));
}

TEST_CASE("alpha anchors") {
  const std::size_t d = 1;
  const Matrix<Q> v_lt = make_chirp_transpose(make_L<Q>(d));
  const Matrix<Q> a = alpha(CGTriple<Q>{Matrix<Q>::identity(2), Matrix<Q>(2, 2), Matrix<Q>::identity(2)});
  CHECK(a == v_lt);
  CHECK(submatrices(a).E == Matrix<Q>::identity(2));
  CHECK(alpha(CGTriple<Q>{Matrix<Q>::identity(2), neg(make_L<Q>(1)), make_J<Q>(1)}) ==
        make_A_ST<Q>(1));
  CHECK_THROWS_AS(alpha(CGTriple<Q>{Matrix<Q>(2, 2), Matrix<Q>(2, 2), Matrix<Q>::identity(2)}),
                  InvalidArgumentError);
  CHECK_THROWS_AS(alpha(CGTriple<Q>{Matrix<Q>::identity(2), Matrix<Q>(2, 2), make_L<Q>(1)}),
                  InvalidArgumentError);
}

TEST_CASE("alpha and factorize are mutually inverse") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 2;
    const CGTriple<Q> t = random_triple(d, rng);
    const Matrix<Q> a = alpha(t);
    REQUIRE(is_symplectic(a, 2 * d, 0.0));
    CHECK(is_shift_invertible(a));
    const CGTriple<Q> back = factorize(a);
    CHECK(back.E == t.E);
    CHECK(back.C == t.C);
    CHECK(back.S == t.S);
    CHECK(alpha(back) == a);
    CHECK(compute_MA(a) == t.C);
    CHECK(is_symmetric(compute_MA(a), 0.0));
  }
}

TEST_CASE("alpha is injective on random pairs") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const CGTriple<Q> t1 = random_triple(1, rng);
    const CGTriple<Q> t2 = random_triple(1, rng);
    const bool same = t1.E == t2.E && t1.C == t2.C && t1.S == t2.S;
    CHECK((alpha(t1) == alpha(t2)) == same);
  }
}

TEST_CASE("determinant relation between the E blocks") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 2;
    const Matrix<Q> a = alpha(random_triple(d, rng));
    const Submatrices<Q> s = submatrices(a);
    const Q sign = d % 2 == 0 ? Q(1) : Q(-1);
    CHECK(determinant(s.Ecal) == sign * determinant(s.E));
    CHECK(is_symplectic(compute_GA(a), d, 0.0));
  }
}

TEST_CASE("reconstruct_blocks matches submatrices of alpha") {
  const Submatrices<Q> st = reconstruct_blocks(Matrix<Q>::identity(2), neg(make_L<Q>(1)), make_J<Q>(1));
  CHECK(st.Ecal == Matrix<Q>{{Q(-1), Q(0)}, {Q(0), Q(1)}});
  CHECK(st.Ecal == submatrices(make_A_ST<Q>(1)).Ecal);
  const Submatrices<Q> id = reconstruct_blocks(Matrix<Q>::identity(2), Matrix<Q>(2, 2), Matrix<Q>::identity(2));
  CHECK(id.F == submatrices(make_chirp_transpose(make_L<Q>(1))).F);
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const CGTriple<Q> t = random_triple(1 + trial % 2, rng);
    const Submatrices<Q> r = reconstruct_blocks(t.E, t.C, t.S);
    const Submatrices<Q> s = submatrices(alpha(t));
    CHECK(r.E == s.E);
    CHECK(r.F == s.F);
    CHECK(r.Ecal == s.Ecal);
    CHECK(r.Fcal == s.Fcal);
    CHECK(submatrix_relations_hold(r, 0.0));
  }
}

TEST_CASE("deformation") {
  CHECK(deformation(make_A_ST<Q>(1)) == Matrix<Q>::identity(2));
  CHECK(deformation(make_A_tau<Q>(Q(1, 2), 1)) == Matrix<Q>(-Matrix<Q>::identity(2)));
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix<Q> g = random_symplectic<Q>(1 + trial % 2, rng);
    CHECK(conj_blocks(conj_blocks(g)) == g);
    const Matrix<Q> a = alpha(random_triple(1 + trial % 2, rng));
    CHECK(is_symplectic(deformation(a), a.rows() / 4, 0.0));
  }
  const ShiftInvertibleData<Q> data = analyze_shift_invertible(make_A_ST<Q>(1));
  CHECK(data.deformation == Matrix<Q>::identity(2));
  CHECK(data.M == neg(make_L<Q>(1)));
}

TEST_CASE("float mode factorization") {
  const CGTriple<double> t = factorize(make_A_tau<double>(0.5, 1));
  CHECK(max_abs_diff(t.E, Matrix<double>(0.5 * Matrix<double>::identity(2))) < 1e-12);
  CHECK(max_abs_diff(alpha(t), make_A_tau<double>(0.5, 1)) < 1e-12);
}

}
