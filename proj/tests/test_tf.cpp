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

#include "metaplectic/random.hpp"
#include "metaplectic/shift_invertible.hpp"
#include "metaplectic/tf_distributions.hpp"
#include "oracles.hpp"

using namespace metaplectic;
using Mat = Matrix<double>;

namespace {

DiscreteSignal atom(const GridSpec& spec, double x0, double xi0, double width = 1.0) {
  return gaussian(spec, GaussianAtom{{x0}, {xi0}, width});
}

double modulus_gap(const TFGrid& a, const TFGrid& b) {
  return max_modulus_deviation(a.values, b.values);
}

/// (x, xi) of flat index i on a d = 1 phase-space grid.
std::pair<double, double> point(const TFGrid& w, std::size_t i) {
  const int n = w.spec.n();
  return {w.spec.coordinate(static_cast<int>(i) / n), w.spec.coordinate(static_cast<int>(i) % n)};
}

}  // namespace

TEST_SUITE("tf_distributions") {

TEST_CASE("stft of the standard Gaussian has the closed-form modulus") {
  const GridSpec g(1, 64);
  const DiscreteSignal phi = standard_gaussian(g);
  const TFGrid v = stft(phi, phi);
  CHECK(v.spec == g.with_dim(2));
  double worst = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const auto [x, xi] = point(v, i);
    worst = std::max(worst, std::abs(std::abs(v.values[i]) - oracle::gaussian_stft_modulus(x, xi)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("stft is an isometry up to the window norm") {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  CHECK(std::abs(stft(f, w).norm() - f.norm() * w.norm()) < 1e-8);
  const DiscreteSignal wide = 2.5 * atom(g, 0.0, 0.5, 1.4);
  CHECK(std::abs(stft(f, wide).norm() - f.norm() * wide.norm()) < 1e-8);
}

TEST_CASE("tau-Wigner at one half reproduces the Gaussian Wigner function") {
  const GridSpec g(1, 64);
  const DiscreteSignal phi = standard_gaussian(g);
  const TFGrid w = tau_wigner(0.5, phi, phi);
  double worst = 0.0;
  double imag = 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const auto [x, xi] = point(w, i);
    worst = std::max(worst, std::abs(w.values[i] - oracle::gaussian_wigner(x, xi)));
    imag = std::max(imag, std::abs(w.values[i].imag()));
  }
  CHECK(worst < 1e-9);
  CHECK(imag < 1e-12);
}

TEST_CASE("tau-Wigner endpoints factor into f and the Fourier transform of g") {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  const std::vector<cplx> f_hat = oracle::dft1({f.samples().begin(), f.samples().end()});
  const std::vector<cplx> w_hat = oracle::dft1({w.samples().begin(), w.samples().end()});
  const TFGrid w0 = tau_wigner(0.0, f, w);
  const TFGrid w1 = tau_wigner(1.0, f, w);
  const int n = g.n();
  double gap0 = 0.0;
  double gap1 = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const std::size_t i = static_cast<std::size_t>(j) * n + k;
      gap0 = std::max(gap0, std::abs(std::abs(w0.values[i]) - std::abs(f[j]) * std::abs(w_hat[k])));
      gap1 = std::max(gap1, std::abs(std::abs(w1.values[i]) - std::abs(f_hat[k]) * std::abs(w[j])));
    }
  CHECK(gap0 < 1e-12);
  CHECK(gap1 < 1e-12);
}

TEST_CASE("tau refinement accepts dyadic tau only") {
  CHECK(tau_refinement(0.0) == 1);
  CHECK(tau_refinement(1.0) == 1);
  CHECK(tau_refinement(0.5) == 2);
  CHECK(tau_refinement(0.75) == 4);
  CHECK(tau_refinement(3.0 / 16.0) == 16);
  CHECK_THROWS_AS(tau_refinement(1.0 / 3.0), InvalidArgumentError);
  CHECK_THROWS_AS(tau_refinement(1.5), InvalidArgumentError);
  CHECK_THROWS_AS(tau_refinement(-0.25), InvalidArgumentError);
}

TEST_CASE("pipeline agrees with the direct sums") {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  CHECK(modulus_gap(stft(f, w), wigner_general(make_A_ST<double>(1), f, w)) < 1e-3);
  CHECK(modulus_gap(tau_wigner(0.5, f, w), wigner_general(make_A_tau<double>(0.5, 1), f, w)) <
        1e-3);
}

TEST_CASE("normal form agrees with the pipeline on the anchors") {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  for (const Mat& a : {make_A_ST<double>(1), make_A_tau<double>(0.5, 1)}) {
    const TFGrid via = wigner(a, f, w, WignerRoute::normal_form);
    CHECK(via.provenance == "normal_form");
    CHECK(modulus_gap(via, wigner_general(a, f, w)) < 1e-2);
  }
}

TEST_CASE("normal form parameters of A_ST") {
  const NormalForm nf = normal_form(make_A_ST<double>(1));
  CHECK(approx_equal(nf.e, Mat::identity(2), 1e-14));
  CHECK(approx_equal(nf.c, Mat(2, 2), 1e-14));
  CHECK(approx_equal(nf.deformation, Mat::identity(2), 1e-14));
}

TEST_CASE("normal form agrees with the pipeline on an alpha image") {
  const GridSpec g(1, 64);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  Matrix<Rational> e = Matrix<Rational>::identity(2);
  e(0, 1) = Rational(1);
  Matrix<Rational> c(2, 2);
  c(0, 0) = Rational(1, 2);
  c(0, 1) = c(1, 0) = Rational(-1);
  const Matrix<Rational> s = make_chirp(oracle::to_matrix({{1}}));
  const Mat a = to_double(alpha(CGTriple<Rational>{e, c, s}));
  CHECK(modulus_gap(wigner(a, f, w, WignerRoute::normal_form), wigner_general(a, f, w)) < 1e-2);
}

TEST_CASE("normal form validates its inputs") {
  const GridSpec g(1, 16);
  const DiscreteSignal f = standard_gaussian(g);
  const Mat i2 = Mat::identity(2);
  CHECK_THROWS_AS(wigner_via_normal_form(Mat(2, 2), Mat(2, 2), i2, f, f), SingularMatrixError);
  Mat skew(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(wigner_via_normal_form(i2, skew, i2, f, f), InvalidArgumentError);
  CHECK_THROWS_AS(wigner_via_normal_form(Mat::identity(4), Mat(4, 4), Mat::identity(4), f, f),
                  DimensionError);
}

TEST_CASE("route parsing and automatic dispatch") {
  CHECK(parse_route("auto") == WignerRoute::automatic);
  CHECK(parse_route("direct") == WignerRoute::direct);
  CHECK(parse_route("pipeline") == WignerRoute::pipeline);
  CHECK(parse_route("normal-form") == WignerRoute::normal_form);
  CHECK_FALSE(parse_route("fastest").has_value());
  CHECK(to_string(WignerRoute::normal_form) == "normal-form");

  const GridSpec g(1, 16);
  const DiscreteSignal f = standard_gaussian(g);
  CHECK(wigner(make_A_ST<double>(1), f, f).provenance == "stft");
  CHECK(wigner(make_A_tau<double>(0.25, 1), f, f).provenance.rfind("tau_wigner", 0) == 0);
  CHECK_THROWS_AS(wigner(make_A_FT2<double>(1), f, f, WignerRoute::direct),
                  InvalidArgumentError);
  CHECK_THROWS_AS(wigner(Mat::identity(2), f, f), DimensionError);
}

TEST_CASE("detect_tau recognises A_tau and nothing else") {
  CHECK(detect_tau(make_A_tau<double>(0.25, 1)).value() == doctest::Approx(0.25));
  CHECK(detect_tau(make_A_tau<double>(0.5, 2)).value() == doctest::Approx(0.5));
  CHECK_FALSE(detect_tau(make_A_ST<double>(1)).has_value());
  CHECK_FALSE(detect_tau(Mat::identity(3)).has_value());
}

TEST_CASE("Moyal identity") {
  const GridSpec g(1, 32);
  const DiscreteSignal f1 = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal f2 = atom(g, -0.2, 0.2, 0.9);
  const DiscreteSignal g1 = atom(g, 0.1, 0.5, 1.2);
  const DiscreteSignal g2 = atom(g, -0.5, -0.1, 0.8);
  CHECK(moyal_check(make_A_ST<double>(1), f1, f2, g1, g2).error < 1e-12);
  CHECK(moyal_check(make_A_tau<double>(0.5, 1), f1, f2, g1, g2, WignerRoute::pipeline).error <
        1e-3);
  const MoyalResult r = moyal_check(make_A_ST<double>(1), f1, f1, f1, f1);
  CHECK(std::abs(r.rhs - 1.0) < 1e-12);
}

TEST_CASE("covariance under on-grid shifts") {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  const double h = g.spacing();
  const Mat ast = make_A_ST<double>(1);
  for (const std::vector<double>& z : std::vector<std::vector<double>>{{h, 0}, {0, 3 * h}, {-2 * h, h}}) {
    CHECK(covariance_check(ast, z, f, w) < 1e-8);
    CHECK(covariance_check(ast, z, f, w, CovarianceForm::phase) < 1e-8);
  }
  const std::vector<double> even{2 * h, 2 * h};
  const Mat at = make_A_tau<double>(0.5, 1);
  CHECK(covariance_check(at, even, f, w) < 1e-3);
  CHECK(covariance_check(at, even, f, w, CovarianceForm::phase) < 1e-3);
  const std::vector<double> odd{h, 0};
  CHECK_THROWS_AS(covariance_check(at, odd, f, w), GridError);
  CHECK_THROWS_AS(covariance_check(make_A_FT2<double>(1), even, f, w),
                  NotShiftInvertibleError);
}

TEST_CASE("reproducing formula") {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  const DiscreteSignal gamma = atom(g, 0.3, 0.1, 1.3);
  CHECK(reproducing_check(make_A_ST<double>(1), f, w, gamma) < 1e-2);
  CHECK(reproducing_check(make_A_tau<double>(0.5, 1), f, w, gamma) < 1e-2);
  const DiscreteSignal far = atom(g, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(reproducing_check(make_A_ST<double>(1), f, w, 0.0 * far), InvalidArgumentError);
}

TEST_CASE("grid mismatches are rejected") {
  const DiscreteSignal a = standard_gaussian(GridSpec(1, 16));
  const DiscreteSignal b = standard_gaussian(GridSpec(1, 32));
  CHECK_THROWS_AS(stft(a, b), GridError);
  CHECK_THROWS_AS(tau_wigner(0.5, a, b), GridError);
  CHECK_THROWS_AS(stft(a, 0.0 * a), InvalidArgumentError);
}

TEST_CASE("TFGrid shifts are periodic") {
  const GridSpec g(2, 4);
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  const std::vector<int> steps{1, -1};
  const std::vector<cplx> s = shift_periodic(v, g, steps);
  CHECK(s[0] == cplx(13.0));
  CHECK(s[5] == cplx(2.0));
  const std::vector<int> bad{1};
  CHECK_THROWS_AS(shift_periodic(v, g, bad), DimensionError);
}

}  // TEST_SUITE
