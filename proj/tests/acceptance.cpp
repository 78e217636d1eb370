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

// Runs the twelve acceptance checks and prints one PASS/FAIL line for each.
// Exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "metaplectic/discrete_metaplectic.hpp"
#include "metaplectic/mixed_norms.hpp"
#include "metaplectic/random.hpp"
#include "metaplectic/shift_invertible.hpp"
#include "metaplectic/tf_distributions.hpp"
#include "oracles.hpp"

using namespace metaplectic;
using Q = Rational;
using QMat = Matrix<Q>;
using Mat = Matrix<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

DiscreteSignal atom(const GridSpec& g, double x0, double xi0, double w) {
  return gaussian(g, GaussianAtom{{x0}, {xi0}, w});
}

double modulus_gap(const TFGrid& a, const TFGrid& b) {
  return max_modulus_deviation(a.values, b.values);
}

QMat table(const oracle::Table& t) { return oracle::to_matrix(t); }

Outcome exact_symplectic_suite() {
  Rng rng(101);
  int checked = 0;
  bool ok = true;
  for (std::size_t d = 1; d <= 3; ++d) {
    std::vector<QMat> mats{make_J<Q>(d), make_A_ST<Q>(d), make_A_FT2<Q>(d),
                           make_A_tau<Q>(Q(0), d), make_A_tau<Q>(Q(1, 2), d),
                           make_A_tau<Q>(Q(1, 3), d), make_A_tau<Q>(Q(1), d)};
    for (int k = 0; k < 5; ++k) {
      mats.push_back(make_dilation(random_invertible<Q>(d, rng)));
      mats.push_back(make_chirp(random_symmetric<Q>(d, rng)));
      mats.push_back(make_chirp_transpose(random_symmetric<Q>(d, rng)));
      mats.push_back(make_lift(random_symplectic<Q>(d, rng)));
    }
    for (const QMat& m : mats) {
      ok = ok && is_symplectic(m, m.rows() / 2, 0.0);
      ++checked;
    }
    ok = ok && !is_symplectic(make_K<Q>(d), 2 * d, 0.0);
  }
  return {ok, std::to_string(checked) + " named matrices symplectic, K rejected for d = 1..3"};
}

Outcome round_trips() {
  Rng rng(202);
  int good = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + t % 2;
    const CGTriple<Q> x{random_invertible<Q>(2 * d, rng), random_symmetric<Q>(2 * d, rng),
                        random_symplectic<Q>(d, rng)};
    const QMat a = alpha(x);
    const CGTriple<Q> y = factorize(a);
    if (y.E == x.E && y.C == x.C && y.S == x.S && alpha(y) == a) ++good;
  }
  return {good == 1000, std::to_string(good) + "/1000 exact round trips"};
}

Outcome anchors() {
  const Q h(1, 2);
  const CGTriple<Q> st = factorize(make_A_ST<Q>(1));
  const CGTriple<Q> tau = factorize(make_A_tau<Q>(h, 1));
  bool ok = st.E == table({{1, 0}, {0, 1}}) && st.C == table({{0, -1}, {-1, 0}}) &&
            st.S == table(oracle::J2());
  ok = ok && tau.E == table({{h, 0}, {0, h}}) && tau.C == table({{0, -h}, {-h, 0}}) &&
       tau.S == table({{0, -1}, {1, 0}});
  ok = ok && !is_invertible(submatrices(make_A_FT2<Q>(1)).E);
  const QMat a = make_A_ST<Q>(1);
  ok = ok && is_shift_invertible(a) && !is_shift_invertible(QMat(a * a * a));
  return {ok, "A_ST, A_1/2, A_FT2 and A_ST^3 anchors"};
}

Outcome decomposition() {
  Rng rng(303);
  double worst = 0.0;
  std::size_t longest = 0;
  for (std::size_t d : {1, 2})
    for (int t = 0; t < 1000; ++t) {
      const Mat s = random_symplectic<double>(d, rng);
      const GeneratorWord w = decompose_generators(s);
      worst = std::max(worst, max_abs_diff(word_product(w), s));
      longest = std::max(longest, w.factors.size());
    }
  return {worst <= 1e-10,
          fmt("2000 matrices, max |word - S| = %.2e, longest word %.0f", worst, double(longest))};
}

Outcome moyal() {
  const GridSpec g(1, 32);
  Rng rng(404);
  std::uniform_real_distribution<double> pos(-0.8, 0.8), width(0.7, 1.4);
  double stft_gap = 0.0;
  double moyal_gap = 0.0;
  for (int t = 0; t < 10; ++t) {
    std::vector<DiscreteSignal> s;
    for (int k = 0; k < 4; ++k) s.push_back(atom(g, pos(rng), pos(rng), width(rng)));
    stft_gap = std::max(stft_gap, std::abs(stft(s[0], s[1]).norm() - s[0].norm() * s[1].norm()));
    for (const Mat& a : {make_A_ST<double>(1), make_A_tau<double>(0.5, 1)})
      moyal_gap = std::max(moyal_gap,
                           moyal_check(a, s[0], s[1], s[2], s[3], WignerRoute::pipeline).error);
  }
  return {stft_gap <= 1e-8 && moyal_gap <= 1e-3,
          fmt("N = 32: STFT norm gap %.2e, Moyal relative error %.2e", stft_gap, moyal_gap)};
}

Outcome pipeline_agreement() {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  const double a = modulus_gap(stft(f, w), wigner_general(make_A_ST<double>(1), f, w));
  const double b =
      modulus_gap(tau_wigner(0.5, f, w), wigner_general(make_A_tau<double>(0.5, 1), f, w));
  return {a <= 1e-3 && b <= 1e-3, fmt("N = 32: A_ST %.2e, A_1/2 %.2e", a, b)};
}

Mat random_unimodular_alpha(Rng& rng) {
  std::uniform_int_distribution<int> u(-1, 1), side(0, 1);
  QMat e = QMat::identity(2);
  if (side(rng))
    e(0, 1) = Q(u(rng));
  else
    e(1, 0) = Q(u(rng));
  const QMat c = random_symmetric<Q>(2, rng, RandomHeight{1, 2});
  const QMat s = random_symplectic<Q>(1, rng, 3, RandomHeight{1, 2});
  return to_double(alpha(CGTriple<Q>{e, c, s}));
}

Outcome normal_form_agreement() {
  double anchors = 0.0;
  {
    const GridSpec g(1, 32);
    const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
    const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
    for (const Mat& a : {make_A_ST<double>(1), make_A_tau<double>(0.5, 1)})
      anchors = std::max(anchors, modulus_gap(wigner(a, f, w, WignerRoute::normal_form),
                                              wigner_general(a, f, w)));
  }
  double random = 0.0;
  {
    const GridSpec g(1, 64);
    const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
    const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
    Rng rng(505);
    for (int t = 0; t < 5; ++t) {
      const Mat a = random_unimodular_alpha(rng);
      random = std::max(random, modulus_gap(wigner(a, f, w, WignerRoute::normal_form),
                                            wigner_general(a, f, w)));
    }
  }
  return {anchors <= 1e-2 && random <= 1e-2,
          fmt("anchors at N = 32: %.2e; 5 random alpha images at N = 64: %.2e", anchors, random)};
}

Outcome covariance() {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  const double h = g.spacing();
  double st = 0.0;
  for (const std::vector<double>& z :
       std::vector<std::vector<double>>{{h, 0}, {0, h}, {-3 * h, 2 * h}, {5 * h, -4 * h}})
    st = std::max(st, covariance_check(make_A_ST<double>(1), z, f, w));
  double tau = 0.0;
  for (const std::vector<double>& z : std::vector<std::vector<double>>{{2 * h, 2 * h}, {-4 * h, 2 * h}})
    tau = std::max(tau, covariance_check(make_A_tau<double>(0.5, 1), z, f, w));
  return {st <= 1e-8 && tau <= 1e-3, fmt("A_ST %.2e, A_1/2 %.2e", st, tau)};
}

Outcome reproducing() {
  const GridSpec g(1, 32);
  const DiscreteSignal f = atom(g, 0.4, -0.3, 1.1);
  const DiscreteSignal w = atom(g, -0.2, 0.2, 0.9);
  const DiscreteSignal gamma = atom(g, 0.3, 0.1, 1.3);
  const double a = reproducing_check(make_A_ST<double>(1), f, w, gamma);
  const double b = reproducing_check(make_A_tau<double>(0.5, 1), f, w, gamma);
  return {a <= 1e-2 && b <= 1e-2, fmt("N = 32: A_ST %.2e, A_1/2 %.2e", a, b)};
}

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

Outcome dilation() {
  struct Case {
    Mat s;
    double p, q;
  };
  const std::vector<Case> cases{{mat2(2, 0, 0, 1), 1, 2}, {mat2(1, 1, 0, 1), 2, 1},
                                {mat2(2, 1, 0, 3), 4, 1}};
  bool ok = true;
  double spread = 0.0;
  double off = 0.0;
  for (const Case& c : cases) {
    MixedNormParams params;
    params.p = c.p;
    params.q = c.q;
    DilationOptions opts;
    opts.trials = 100;
    const RatioReport r = dilation_norm_ratio(c.s, params, opts);
    ok = ok && r.pass;
    spread = std::max(spread, r.stddev / r.mean);
    off = std::max(off, std::abs(r.mean / *r.expected - 1.0));
  }
  return {ok && spread <= 0.02 && off <= 0.02,
          fmt("3 matrices x 100 F: max std/mean %.2e, max |mean/C_S - 1| %.2e", spread, off)};
}

Outcome counterexample() {
  bool ok = true;
  double worst = 0.0;
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{2, 1}, {1, 2}, {4, 2}}) {
    const RatioReport r = counterexample_DJ(p, q);
    ok = ok && r.pass;
    worst = std::max(worst, std::abs(*r.slope - *r.expected) / std::abs(*r.expected));
  }
  return {ok && worst <= 0.05, fmt("max relative slope error %.2e", worst)};
}

Outcome equivalence() {
  const GridSpec g(1, 32);
  const DiscreteSignal window = standard_gaussian(g);
  std::vector<Mat> family{make_A_tau<double>(0.5, 1)};
  Rng rng(606);
  std::uniform_int_distribution<int> diag(0, 3), shear(-1, 1);
  const Q diag_values[] = {Q(1, 2), Q(1), Q(2), Q(-1)};
  while (family.size() < 4) {
    QMat e(2, 2);
    e(0, 0) = diag_values[diag(rng)];
    e(1, 1) = diag_values[diag(rng)];
    e(0, 1) = Q(shear(rng));
    const QMat c = random_symmetric<Q>(2, rng, RandomHeight{1, 2});
    const QMat s = random_symplectic<Q>(1, rng, 3, RandomHeight{1, 2});
    family.push_back(to_double(alpha(CGTriple<Q>{e, c, s})));
  }
  bool ok = true;
  double spread = 0.0;
  for (const Mat& a : family)
    for (const auto& [p, q] : std::vector<std::pair<double, double>>{{2, 2}, {1, 2}}) {
      MixedNormParams params;
      params.p = p;
      params.q = q;
      const RatioReport r = equivalence_check(a, window, params);
      ok = ok && r.pass;
      spread = std::max(spread, r.max_ratio / r.min_ratio);
    }
  double st = 0.0;
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{2, 2}, {1, 2}, {3, 1}}) {
    MixedNormParams params;
    params.p = p;
    params.q = q;
    const RatioReport r = equivalence_check(make_A_ST<double>(1), window, params);
    st = std::max({st, std::abs(r.min_ratio - 1.0), std::abs(r.max_ratio - 1.0)});
  }
  return {ok && spread <= 10.0 && st <= 1e-6,
          fmt("%.0f upper-triangular matrices: max spread %.3f; A_ST |ratio - 1| %.2e",
              double(family.size()), spread, st)};
}

}  // namespace

int main() {
  struct Check {
    const char* name;
    std::function<Outcome()> run;
    double time_limit;
  };
  const std::vector<Check> checks{
      {"exact symplectic suite", exact_symplectic_suite, 1.0},
      {"factorization round trips", round_trips, 30.0},
      {"regression anchors", anchors, 0.0},
      {"generator decomposition", decomposition, 0.0},
      {"discrete unitarity and Moyal", moyal, 60.0},
      {"pipeline agreement", pipeline_agreement, 0.0},
      {"normal-form agreement", normal_form_agreement, 0.0},
      {"covariance", covariance, 0.0},
      {"reproducing formula", reproducing, 0.0},
      {"dilation invariance", dilation, 0.0},
      {"D_J counterexample", counterexample, 0.0},
      {"norm equivalence", equivalence, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (checks[i].time_limit > 0.0 && secs >= checks[i].time_limit) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s budget)", checks[i].time_limit);
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-30s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu acceptance checks passed\n", static_cast<int>(checks.size()) - failures,
              checks.size());
  return failures == 0 ? 0 : 1;
}
