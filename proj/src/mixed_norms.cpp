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

#include "metaplectic/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "metaplectic/kernels.hpp"
#include "metaplectic/shift_invertible.hpp"

namespace metaplectic {

namespace {

using Mat = Matrix<double>;

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void require_exponents(double p, double q, const char* what) {
  if (!(p > 0.0) || !(q > 0.0))
    throw InvalidArgumentError(std::string(what) + ": exponents must be > 0");
}

std::size_t half_size(const GridSpec& spec) {
  std::size_t s = 1;
  for (int a = 0; a < spec.dim() / 2; ++a) s *= static_cast<std::size_t>(spec.n());
  return s;
}

struct Stats {
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

Stats summarize(const std::vector<double>& r) {
  Stats s;
  for (double v : r) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    s.mean += v;
  }
  s.mean /= static_cast<double>(r.size());
  for (double v : r) s.stddev += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(s.stddev / static_cast<double>(r.size()));
  return s;
}

void fill(RatioReport& rep, const std::vector<double>& ratios) {
  const Stats s = summarize(ratios);
  rep.trials = ratios.size();
  rep.min_ratio = s.min;
  rep.max_ratio = s.max;
  rep.mean = s.mean;
  rep.stddev = s.stddev;
}

/// A sum of one to three complex Gaussian bumps on phase space.
TFGrid random_bumps(const GridSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> centre(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 1.0);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  struct Bump {
    std::vector<double> c;
    double w;
    cplx a;
  };
  std::vector<Bump> bumps(count(rng));
  for (Bump& b : bumps) {
    b.c.resize(spec.dim());
    for (double& v : b.c) v = centre(rng);
    b.w = width(rng);
    b.a = std::polar(amp(rng), angle(rng));
  }
  TFGrid out{spec, std::vector<cplx>(spec.size()), "random bumps"};
  std::vector<int> idx(spec.dim());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    spec.unravel(i, idx);
    for (const Bump& b : bumps) {
      double r2 = 0.0;
      for (int a = 0; a < spec.dim(); ++a) {
        const double t = spec.coordinate(idx[a]) - b.c[a];
        r2 += t * t;
      }
      out.values[i] += b.a * std::exp(-kPi * r2 / (b.w * b.w));
    }
  }
  return out;
}

}  // namespace

double mixed_norm(const TFGrid& f, const MixedNormParams& params) {
  require_exponents(params.p, params.q, "mixed_norm");
  if (f.values.empty()) throw InvalidArgumentError("mixed_norm: empty grid");
  if (f.spec.dim() % 2 != 0)
    throw DimensionError("mixed_norm: phase-space grid must have even dimension");
  if (f.values.size() != f.spec.size()) throw GridError("mixed_norm: size mismatch");
  const std::size_t half = half_size(f.spec);
  std::vector<double> values(f.values.size());
  const long long total = static_cast<long long>(values.size());
  if (params.weight.trivial()) {
    for (long long i = 0; i < total; ++i) values[i] = std::abs(f.values[i]);
  } else {
#pragma omp parallel
    {
      std::vector<int> idx(f.spec.dim());
      std::vector<double> z(f.spec.dim());
#pragma omp for schedule(static)
      for (long long i = 0; i < total; ++i) {
        f.spec.unravel(static_cast<std::size_t>(i), idx);
        for (int a = 0; a < f.spec.dim(); ++a) z[a] = f.spec.coordinate(idx[a]);
        values[i] = std::abs(f.values[i]) * params.weight(z);
      }
    }
  }
  const double cell = params.measure == Measure::counting
                          ? 1.0
                          : std::pow(f.spec.spacing(), f.spec.dim() / 2);
  return kernels::mixed_norm({values, half, half, params.p, params.q, cell, cell});
}

double modulation_norm(const DiscreteSignal& f, const DiscreteSignal& g,
                       const MixedNormParams& params) {
  return mixed_norm(stft(f, g), params);
}

TFGrid dilate_phase_space(const Matrix<double>& s, const TFGrid& f) {
  const std::size_t n = f.spec.dim();
  if (s.rows() != n || s.cols() != n)
    throw DimensionError("dilate_phase_space: matrix must be " + std::to_string(n) + "x" +
                         std::to_string(n) + ", got " + s.shape_string());
  if (!is_grid_compatible(s))
    throw GridError("dilate_phase_space: S must be an invertible integer matrix");
  TFGrid out{f.spec, reindex(f.values, f.spec, s), f.provenance};
  const double amp = std::sqrt(std::abs(determinant(s)));
  for (cplx& v : out.values) v *= amp;
  return out;
}

bool is_block_upper_triangular(const Matrix<double>& s, double tol) {
  if (!s.square() || s.rows() % 2 != 0) return false;
  const std::size_t d = s.rows() / 2;
  for (std::size_t i = d; i < 2 * d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (std::abs(s(i, j)) > tol) return false;
  return true;
}

double dilation_constant(const Matrix<double>& s, double p, double q) {
  require_exponents(p, q, "dilation_constant");
  if (!is_block_upper_triangular(s))
    throw InvalidArgumentError("dilation_constant: lower-left block must vanish");
  const std::size_t d = s.rows() / 2;
  const double da = std::abs(determinant(s.block(0, 0, d, d)));
  const double dd = std::abs(determinant(s.block(d, d, d, d)));
  if (da == 0.0 || dd == 0.0) throw SingularMatrixError("dilation_constant: A or D is singular");
  return std::pow(da, 0.5 - reciprocal(p)) * std::pow(dd, 0.5 - reciprocal(q));
}

RatioReport dilation_norm_ratio(const Matrix<double>& s, const MixedNormParams& params,
                                const DilationOptions& opts) {
  if (!s.square() || s.rows() == 0 || s.rows() % 2 != 0)
    throw DimensionError("dilation_norm_ratio: S must be 2d x 2d, got " + s.shape_string());
  if (!is_block_upper_triangular(s))
    throw InvalidArgumentError("dilation_norm_ratio: lower-left block of S must vanish");
  if (!is_grid_compatible(s))
    throw GridError("dilation_norm_ratio: S must be an invertible integer matrix");
  if (opts.trials == 0) throw InvalidArgumentError("dilation_norm_ratio: need at least one trial");
  const int dim = static_cast<int>(s.rows());
  int n = opts.n;
  if (n == 0) n = dim == 2 ? 256 : dim == 4 ? 16 : 8;
  const GridSpec spec(dim, n);
  if (spec.size() > (std::size_t{1} << 26))
    throw ResourceError("dilation_norm_ratio: phase-space grid too large");

  const double c_s = dilation_constant(s, params.p, params.q);
  std::vector<double> ratios(opts.trials);
  const long long trials = static_cast<long long>(opts.trials);
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < trials; ++t) {
    const TFGrid f = random_bumps(spec, opts.seed * 1000003ULL + static_cast<std::uint64_t>(t));
    ratios[t] = mixed_norm(dilate_phase_space(s, f), params) / mixed_norm(f, params);
  }

  RatioReport rep;
  rep.theorem = "mixed-norm dilation invariance";
  rep.hypothesis = "S block upper triangular with integer entries; weight " +
                   params.weight.describe();
  fill(rep, ratios);
  rep.expected = c_s;
  const bool constant = rep.stddev <= opts.tolerance * rep.mean;
  const bool matches = !params.weight.trivial() || std::abs(rep.mean / c_s - 1.0) <= opts.tolerance;
  rep.pass = constant && matches;
  return rep;
}

DiscreteSignal random_test_signal(const GridSpec& spec, std::uint64_t seed, double noise) {
  std::mt19937_64 rng(seed);
  const double t = spec.extent();
  const double lo = std::log(4.0 * spec.spacing());
  const double hi = std::log(std::max(0.25 * t, 4.0 * spec.spacing()));
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> shift(-t / 8.0, t / 8.0);
  std::uniform_real_distribution<double> log_width(lo, hi);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::normal_distribution<double> white;
  DiscreteSignal f(spec);
  const int atoms = count(rng);
  for (int k = 0; k < atoms; ++k) {
    GaussianAtom a;
    a.center.resize(spec.dim());
    a.frequency.resize(spec.dim());
    for (double& v : a.center) v = shift(rng);
    for (double& v : a.frequency) v = shift(rng);
    a.width = std::exp(log_width(rng));
    f += std::polar(1.0, angle(rng)) * gaussian(spec, a);
  }
  if (noise > 0.0) {
    DiscreteSignal w(spec);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = {white(rng), white(rng)};
    f += (noise * f.norm() / w.norm()) * w;
  }
  return f;
}

RatioReport equivalence_check(const Matrix<double>& a, const DiscreteSignal& g,
                              const MixedNormParams& params, const EquivalenceOptions& opts) {
  require_exponents(params.p, params.q, "equivalence_check");
  if (g.norm() == 0.0) throw InvalidArgumentError("equivalence_check: window is zero");
  if (opts.trials == 0) throw InvalidArgumentError("equivalence_check: need at least one trial");
  const std::size_t d = static_cast<std::size_t>(g.spec().dim());
  if (a.rows() != 4 * d || a.cols() != 4 * d)
    throw DimensionError("equivalence_check: matrix must be " + std::to_string(4 * d) + "x" +
                         std::to_string(4 * d) + " for this window, got " + a.shape_string());
  const double scale = std::max(1.0, max_abs(a));
  if (!is_symplectic(a, 2 * d, 1e-9 * scale * scale))
    throw NotSymplecticError("equivalence_check: matrix is not symplectic");

  RatioReport rep;
  rep.theorem = "metaplectic Wigner norm equivalence";
  const Mat e = submatrices(a).E;
  std::string hyp;
  if (!is_invertible(e)) {
    rep.hypothesis_ok = false;
    hyp = "violated: E_A is singular";
  } else {
    const bool upper = is_block_upper_triangular(e, 1e-12 * scale);
    hyp = std::string("shift-invertible; E_A ") + (upper ? "" : "not ") + "upper triangular";
    if (!upper && params.p != params.q) {
      rep.hypothesis_ok = false;
      hyp = "violated: p != q needs E_A upper triangular; " + hyp;
    }
    if (!params.weight.trivial()) {
      const Mat e_inv = inverse(e);
      const GridSpec phase = g.spec().with_dim(static_cast<int>(2 * d));
      std::mt19937_64 rng(opts.seed);
      std::uniform_int_distribution<int> pick(0, phase.n() - 1);
      std::vector<double> z(2 * d), w(2 * d);
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (int k = 0; k < 2000; ++k) {
        for (double& v : z) v = phase.coordinate(pick(rng));
        for (std::size_t i = 0; i < 2 * d; ++i) {
          w[i] = 0.0;
          for (std::size_t j = 0; j < 2 * d; ++j) w[i] += e_inv(i, j) * z[j];
        }
        const double r = params.weight(w) / params.weight(z);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      char buf[96];
      std::snprintf(buf, sizeof buf, "; m(E^-1 z)/m(z) sampled in [%.3g, %.3g]", lo, hi);
      hyp += buf;
      if (!(lo > 0.0) || !std::isfinite(hi)) rep.hypothesis_ok = false;
    }
  }
  rep.hypothesis = hyp + "; weight " + params.weight.describe();

  std::vector<double> ratios(opts.trials);
  const long long trials = static_cast<long long>(opts.trials);
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < trials; ++t) {
    const DiscreteSignal f =
        random_test_signal(g.spec(), opts.seed * 1000003ULL + static_cast<std::uint64_t>(t),
                           opts.noise);
    ratios[t] = mixed_norm(wigner(a, f, g, opts.route), params) / modulation_norm(f, g, params);
  }
  fill(rep, ratios);
  rep.pass = rep.hypothesis_ok && rep.max_ratio <= opts.bound * rep.min_ratio;
  return rep;
}

RatioReport counterexample_DJ(double p, double q, const CounterexampleOptions& opts) {
  require_exponents(p, q, "counterexample_DJ");
  if (p == q)
    throw InvalidArgumentError("counterexample_DJ: p == q gives a constant ratio, not a counterexample");
  if (opts.widths.size() < 2)
    throw InvalidArgumentError("counterexample_DJ: need at least two widths");
  const GridSpec spec(2, opts.n);
  const double half = 0.5 * spec.extent();
  const double h = spec.spacing();
  const Mat j = make_J<double>(1);
  MixedNormParams params;
  params.p = p;
  params.q = q;

  RatioReport rep;
  rep.theorem = "D_J unbounded on L^{p,q} for p != q";
  rep.hypothesis = "F_a indicator of [0,a) x [0,1), N = " + std::to_string(opts.n);
  std::vector<double> ratios;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double a : opts.widths) {
    if (!(a > 0.0) || a > half || std::abs(a / h - std::round(a / h)) > 1e-9)
      throw InvalidArgumentError("counterexample_DJ: width " + std::to_string(a) +
                                 " must be a positive multiple of the spacing at most T/2");
    TFGrid f{spec, std::vector<cplx>(spec.size()), "indicator"};
    const int n = spec.n();
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const double x = spec.coordinate(k);
        const double y = spec.coordinate(l);
        if (x > -0.5 * h && x < a - 0.5 * h && y > -0.5 * h && y < 1.0 - 0.5 * h)
          f.values[static_cast<std::size_t>(k) * n + l] = 1.0;
      }
    const double r = mixed_norm(dilate_phase_space(j, f), params) / mixed_norm(f, params);
    ratios.push_back(r);
    rep.table.emplace_back(a, r);
    const double lx = std::log(a);
    const double ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(opts.widths.size());
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) throw InvalidArgumentError("counterexample_DJ: widths must differ");
  fill(rep, ratios);
  rep.slope = (m * sxy - sx * sy) / denom;
  rep.expected = reciprocal(q) - reciprocal(p);
  rep.pass = std::abs(*rep.slope - *rep.expected) <= opts.tolerance * std::abs(*rep.expected);
  return rep;
}

}  // namespace metaplectic
