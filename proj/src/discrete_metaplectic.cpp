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

#include "metaplectic/discrete_metaplectic.hpp"

#include <cmath>
#include <sstream>

#include "metaplectic/fft.hpp"
#include "metaplectic/kernels.hpp"

namespace metaplectic {

namespace {

using Mat = Matrix<double>;

void require_self_dual(const GridSpec& spec, const char* what) {
  if (!spec.self_dual())
    throw GridError(std::string(what) + ": grid is not self-dual (extent must be sqrt(N))");
}

std::vector<std::size_t> shape_of(const GridSpec& spec) {
  return std::vector<std::size_t>(spec.dim(), static_cast<std::size_t>(spec.n()));
}

DiscreteSignal transform_axes(const DiscreteSignal& f, int first_axis, int sign) {
  require_self_dual(f.spec(), "fourier");
  std::vector<cplx> data(f.samples().begin(), f.samples().end());
  fft::centered(data, shape_of(f.spec()), static_cast<std::size_t>(first_axis), sign);
  const double scale = std::pow(f.spec().spacing(), f.spec().dim() - first_axis);
  for (cplx& v : data) v *= scale;
  return DiscreteSignal(f.spec(), std::move(data));
}

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

double inf_norm(const Mat& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

struct Quarter {
  Mat a, b, c, d;
};

Quarter quarters(const Mat& s) {
  const std::size_t d = s.rows() / 2;
  return {s.block(0, 0, d, d), s.block(0, d, d, d), s.block(d, 0, d, d), s.block(d, d, d, d)};
}

void require_symplectic_double(const Mat& s, const char* what) {
  if (!s.square() || s.rows() == 0 || s.rows() % 2 != 0)
    throw DimensionError(std::string(what) + ": expected a 2d x 2d matrix, got " + s.shape_string());
  const double scale = std::max(1.0, max_abs(s));
  if (!is_symplectic(s, s.rows() / 2, 1e-9 * scale * scale))
    throw NotSymplecticError(std::string(what) + ": matrix is not symplectic");
}

/// Appends the free factorization of s (B invertible), fused when requested.
void append_free(const Mat& s, bool executable, double tol, std::vector<Factor>& out) {
  const Quarter q = quarters(s);
  const Mat binv = inverse(q.b);
  const Mat left = symmetrize(q.d * binv);
  const Mat right = symmetrize(binv * q.a);
  const double scale = std::max(1.0, max_abs(s));
  if (executable && !(is_zero_matrix(right, tol * scale) && is_grid_compatible(binv))) {
    out.push_back(FreeKernelFactor{s});
    return;
  }
  if (!is_zero_matrix(left, tol * scale)) out.push_back(ChirpFactor{left});
  out.push_back(DilationFactor{binv});
  out.push_back(FourierFactor{});
  if (!is_zero_matrix(right, tol * scale)) out.push_back(ChirpFactor{right});
}

}  // namespace

DiscreteSignal fourier(const DiscreteSignal& f) { return transform_axes(f, 0, -1); }

DiscreteSignal inverse_fourier(const DiscreteSignal& f) { return transform_axes(f, 0, +1); }

DiscreteSignal partial_fourier_2(const DiscreteSignal& f) {
  if (f.spec().dim() % 2 != 0)
    throw DimensionError("partial_fourier_2: signal dimension must be even");
  return transform_axes(f, f.spec().dim() / 2, -1);
}

DiscreteSignal chirp_mul(const Matrix<double>& c, const DiscreteSignal& f) {
  const int d = f.spec().dim();
  if (c.rows() != static_cast<std::size_t>(d) || c.cols() != static_cast<std::size_t>(d))
    throw DimensionError("chirp_mul: C must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!is_symmetric(c, 1e-12 * std::max(1.0, max_abs(c))))
    throw InvalidArgumentError("chirp_mul: C is not symmetric");
  DiscreteSignal out = f;
  std::vector<int> idx(d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.spec().unravel(i, idx);
    for (int a = 0; a < d; ++a) x[a] = f.spec().coordinate(idx[a]);
    double q = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) q += x[a] * c(a, b) * x[b];
    out[i] *= std::polar(1.0, kPi * q);
  }
  return out;
}

bool is_grid_compatible(const Matrix<double>& e) {
  if (!e.square() || e.rows() == 0) return false;
  for (double v : e.entries())
    if (std::abs(v - std::round(v)) > 1e-12) return false;
  return std::abs(determinant(e)) > 0.5;
}

std::vector<cplx> reindex(std::span<const cplx> values, const GridSpec& spec,
                          const Matrix<double>& m) {
  const int d = spec.dim();
  if (m.rows() != static_cast<std::size_t>(d) || m.cols() != static_cast<std::size_t>(d))
    throw DimensionError("reindex: matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!is_grid_compatible(m)) throw GridError("reindex: matrix is not integer invertible");
  if (values.size() != spec.size()) throw GridError("reindex: size mismatch");
  const bool periodic = std::abs(std::abs(determinant(m)) - 1.0) < 0.5;
  const long n = spec.n();
  std::vector<long> mi(m.entries().size());
  for (std::size_t k = 0; k < mi.size(); ++k) mi[k] = std::lround(m.entries()[k]);
  std::vector<cplx> out(values.size());
  std::vector<int> idx(d);
  std::vector<int> src(d);
  for (std::size_t i = 0; i < values.size(); ++i) {
    spec.unravel(i, idx);
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      long t = 0;
      for (int b = 0; b < d; ++b) t += mi[a * d + b] * (idx[b] - n / 2);
      t += n / 2;
      if (periodic) {
        t = ((t % n) + n) % n;
      } else if (t < 0 || t >= n) {
        inside = false;
        break;
      }
      src[a] = static_cast<int>(t);
    }
    out[i] = inside ? values[spec.ravel(src)] : cplx{};
  }
  return out;
}

DiscreteSignal dilate(const Matrix<double>& e, const DiscreteSignal& f, bool kernel_fallback) {
  const std::size_t d = f.spec().dim();
  if (e.rows() != d || e.cols() != d)
    throw DimensionError("dilate: E must be " + std::to_string(d) + "x" + std::to_string(d));
  if (!is_invertible(e)) throw SingularMatrixError("dilate: E is singular");
  if (is_grid_compatible(e)) {
    DiscreteSignal out(f.spec(), reindex(f.samples(), f.spec(), e));
    out *= std::sqrt(std::abs(determinant(e)));
    return out;
  }
  if (!kernel_fallback)
    throw GridError("dilate: E does not map the grid to itself and kernel fallback is off");
  return metaplectic_apply(make_dilation(e), f);
}

std::vector<int> grid_steps(std::span<const double> z, const GridSpec& spec) {
  const int d = spec.dim();
  if (z.size() != static_cast<std::size_t>(2 * d))
    throw DimensionError("phase-space point must have " + std::to_string(2 * d) + " coordinates");
  std::vector<int> steps(2 * d);
  for (int a = 0; a < 2 * d; ++a) {
    const double unit = a < d ? spec.spacing() : spec.dual_spacing();
    const double v = z[a] / unit;
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)))
      throw GridError("phase-space point is off the grid");
    steps[a] = static_cast<int>(r);
  }
  return steps;
}

DiscreteSignal tf_shift(std::span<const double> z, const DiscreteSignal& f) {
  const GridSpec& spec = f.spec();
  const int d = spec.dim();
  const int n = spec.n();
  const std::vector<int> steps = grid_steps(z, spec);
  DiscreteSignal out(spec);
  std::vector<int> idx(d);
  std::vector<int> src(d);
  for (std::size_t i = 0; i < f.size(); ++i) {
    spec.unravel(i, idx);
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      src[a] = (((idx[a] - steps[a]) % n) + n) % n;
      phase += static_cast<double>(steps[d + a]) * (idx[a] - n / 2) / n;
    }
    out[i] = f[spec.ravel(src)] * std::polar(1.0, 2.0 * kPi * phase);
  }
  return out;
}

DiscreteSignal schrodinger(std::span<const double> z, double tau, const DiscreteSignal& f) {
  const std::vector<int> steps = grid_steps(z, f.spec());
  const int d = f.spec().dim();
  double xi_x = 0.0;
  for (int a = 0; a < d; ++a)
    xi_x += static_cast<double>(steps[a]) * steps[d + a] / f.spec().n();
  DiscreteSignal out = tf_shift(z, f);
  out *= std::polar(1.0, 2.0 * kPi * tau - kPi * xi_x);
  return out;
}

Matrix<double> factor_matrix(const Factor& f, std::size_t d) {
  return std::visit(
      [d](const auto& v) -> Mat {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, FourierFactor>) return make_J<double>(d);
        else if constexpr (std::is_same_v<V, DilationFactor>) return make_dilation(v.e);
        else if constexpr (std::is_same_v<V, ChirpFactor>) return make_chirp(v.c, 1e-9 * std::max(1.0, max_abs(v.c)));
        else return v.s;
      },
      f);
}

Matrix<double> word_product(const GeneratorWord& w) {
  Mat out = Mat::identity(2 * w.d);
  for (const Factor& f : w.factors) out = out * factor_matrix(f, w.d);
  return out;
}

std::string describe(const GeneratorWord& w) {
  std::ostringstream os;
  if (w.factors.empty()) return "I";
  for (std::size_t k = 0; k < w.factors.size(); ++k) {
    if (k > 0) os << " * ";
    std::visit(
        [&os](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, FourierFactor>) os << "J";
          else if constexpr (std::is_same_v<V, DilationFactor>) os << "D_E";
          else if constexpr (std::is_same_v<V, ChirpFactor>) os << "V_C";
          else os << "FreeKernel";
        },
        w.factors[k]);
  }
  return os.str();
}

GeneratorWord decompose_generators(const Matrix<double>& s, const DecomposeOptions& opts) {
  require_symplectic_double(s, "decompose_generators");
  const std::size_t d = s.rows() / 2;
  const double scale = std::max(1.0, max_abs(s));
  const double tol = opts.tol * scale;
  GeneratorWord w;
  w.d = d;
  if (approx_equal(s, make_J<double>(d), tol)) {
    w.factors.push_back(FourierFactor{});
    return w;
  }
  const Quarter q = quarters(s);
  const Mat id = Mat::identity(d);
  if (is_zero_matrix(q.b, tol)) {
    if (approx_equal(q.a, id, tol) && approx_equal(q.d, id, tol)) {
      if (!is_zero_matrix(q.c, tol)) w.factors.push_back(ChirpFactor{symmetrize(q.c)});
      return w;
    }
    const Mat e = inverse(q.a);
    if (!opts.executable || is_grid_compatible(e)) {
      if (!is_zero_matrix(q.c, tol)) w.factors.push_back(ChirpFactor{symmetrize(q.c * e)});
      w.factors.push_back(DilationFactor{e});
      return w;
    }
  }
  if (is_invertible(q.b)) {
    append_free(s, opts.executable, opts.tol, w.factors);
    return w;
  }
  for (int t = 1; t <= opts.max_shift; ++t) {
    const Mat p = static_cast<double>(t) * id;
    const Mat shifted = s * make_chirp_transpose(p);
    if (!is_invertible(quarters(shifted).b)) continue;
    // s = shifted * J^{-1} V_p J and J^{-1} = -J; the sign moves into the free part.
    append_free(-shifted, opts.executable, opts.tol, w.factors);
    w.factors.push_back(FourierFactor{});
    w.factors.push_back(ChirpFactor{p});
    w.factors.push_back(FourierFactor{});
    return w;
  }
  throw DecompositionError("decompose_generators: no shift t <= " + std::to_string(opts.max_shift) +
                           " makes AP + B invertible");
}

int free_kernel_oversample(const Matrix<double>& s) {
  const Quarter q = quarters(s);
  const Mat binv = inverse(q.b);
  const double need = 1.25 * 0.5 * (1.0 + inf_norm(binv * q.a) + inf_norm(binv));
  int r = 1;
  while (r < need) r *= 2;
  return r;
}

DiscreteSignal apply_free_kernel(const Matrix<double>& s, const DiscreteSignal& f,
                                 const FreeKernelOptions& opts) {
  const GridSpec& spec = f.spec();
  const int d = spec.dim();
  if (s.rows() != static_cast<std::size_t>(2 * d) || !s.square())
    throw DimensionError("apply_free_kernel: matrix must be " + std::to_string(2 * d) + "x" +
                         std::to_string(2 * d));
  require_self_dual(spec, "apply_free_kernel");
  const Quarter q = quarters(s);
  if (!is_invertible(q.b)) throw DecompositionError("apply_free_kernel: B block is singular");
  const Mat binv = inverse(q.b);
  const Mat left = symmetrize(q.d * binv);
  const Mat right = symmetrize(binv * q.a);

  const int r = free_kernel_oversample(s);
  if (r > opts.max_oversample)
    throw ResourceError("apply_free_kernel: needs oversampling " + std::to_string(r) +
                        ", cap is " + std::to_string(opts.max_oversample));
  const std::size_t m = static_cast<std::size_t>(spec.n()) * r;
  std::size_t fine_size = 1;
  for (int a = 0; a < d; ++a) fine_size *= m;
  if (static_cast<double>(fine_size) * static_cast<double>(spec.size()) > opts.max_terms)
    throw ResourceError("apply_free_kernel: dense kernel exceeds the work cap");

  const double h = spec.spacing();
  const double fine_h = h / r;
  std::vector<double> nodes(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = -0.5 * spec.extent() + k * fine_h;

  std::vector<cplx> u = fft::upsample(f.samples(), d, spec.n(), r);
  const double cell = std::pow(fine_h, d);
  std::vector<int> idx(d);
  std::vector<double> y(d);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t k = i, a = d; a-- > 0;) {
      y[a] = nodes[k % m];
      k /= m;
    }
    double quad = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) quad += y[a] * right(a, b) * y[b];
    u[i] *= cell * std::polar(1.0, kPi * quad);
  }

  std::vector<double> freq(spec.size() * d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.unravel(i, idx);
    for (int a = 0; a < d; ++a) x[a] = spec.coordinate(idx[a]);
    for (int a = 0; a < d; ++a) {
      double eta = 0.0;
      for (int b = 0; b < d; ++b) eta += binv(a, b) * x[b];
      freq[i * d + a] = eta;
    }
  }
  std::vector<cplx> out(spec.size());
  kernels::nonuniform_dft({u, d, m, nodes, freq}, out);

  const double amplitude = 1.0 / std::sqrt(std::abs(determinant(q.b)));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.unravel(i, idx);
    for (int a = 0; a < d; ++a) x[a] = spec.coordinate(idx[a]);
    double quad = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) quad += x[a] * left(a, b) * x[b];
    out[i] *= amplitude * std::polar(1.0, kPi * quad);
  }
  return DiscreteSignal(spec, std::move(out));
}

MetaplecticOperator::MetaplecticOperator(const Matrix<double>& s, const GridSpec& grid)
    : s_(s), grid_(grid) {
  if (s.rows() != static_cast<std::size_t>(2 * grid.dim()) || !s.square())
    throw DimensionError("metaplectic operator: matrix must be " + std::to_string(2 * grid.dim()) +
                         "x" + std::to_string(2 * grid.dim()) + " for this grid, got " +
                         s.shape_string());
  DecomposeOptions opts;
  opts.executable = true;
  plan_ = decompose_generators(s, opts);
}

DiscreteSignal MetaplecticOperator::apply(const DiscreteSignal& f) const {
  require_same_grid(f.spec(), grid_, "metaplectic operator");
  DiscreteSignal cur = f;
  for (auto it = plan_.factors.rbegin(); it != plan_.factors.rend(); ++it) {
    cur = std::visit(
        [&cur](const auto& v) -> DiscreteSignal {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, FourierFactor>) return fourier(cur);
          else if constexpr (std::is_same_v<V, DilationFactor>) return dilate(v.e, cur);
          else if constexpr (std::is_same_v<V, ChirpFactor>) return chirp_mul(v.c, cur);
          else return apply_free_kernel(v.s, cur);
        },
        *it);
  }
  cur *= plan_.phase;
  return cur;
}

DiscreteSignal metaplectic_apply(const Matrix<double>& s, const DiscreteSignal& f) {
  return MetaplecticOperator(s, f.spec()).apply(f);
}

}  // namespace metaplectic
