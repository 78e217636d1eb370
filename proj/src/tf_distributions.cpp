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

#include "metaplectic/tf_distributions.hpp"

#include <cmath>
#include <cstdio>

#include "metaplectic/fft.hpp"
#include "metaplectic/kernels.hpp"
#include "metaplectic/shift_invertible.hpp"

namespace metaplectic {

namespace {

using Mat = Matrix<double>;

GridSpec phase_space(const GridSpec& spec) { return spec.with_dim(2 * spec.dim()); }

void require_pair(const DiscreteSignal& f, const DiscreteSignal& g, const char* what) {
  require_same_grid(f.spec(), g.spec(), what);
  if (g.norm() == 0.0) throw InvalidArgumentError(std::string(what) + ": window is zero");
}

void require_level(const Mat& a, const DiscreteSignal& f, const char* what) {
  const std::size_t n = 4 * static_cast<std::size_t>(f.spec().dim());
  if (a.rows() != n || a.cols() != n)
    throw DimensionError(std::string(what) + ": matrix must be " + std::to_string(n) + "x" +
                         std::to_string(n) + " for this signal, got " + a.shape_string());
}

std::vector<double> coordinates_of(const GridSpec& spec, std::size_t flat) {
  std::vector<int> idx(spec.dim());
  spec.unravel(flat, idx);
  std::vector<double> z(spec.dim());
  for (int a = 0; a < spec.dim(); ++a) z[a] = spec.coordinate(idx[a]);
  return z;
}

std::vector<double> mat_vec(const Mat& m, std::span<const double> v) {
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

double quadratic(const Mat& m, std::span<const double> v) {
  double q = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q += v[i] * m(i, j) * v[j];
  return q;
}

/// Integer steps of a phase-space vector on the grid of spacing h; throws if off-grid.
std::vector<int> steps_of(std::span<const double> v, double h, const char* what) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double s = v[i] / h;
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9 * std::max(1.0, std::abs(s)))
      throw GridError(std::string(what) + ": image point is off the grid");
    out[i] = static_cast<int>(r);
  }
  return out;
}

bool is_A_ST(const Mat& a) {
  return a.rows() % 4 == 0 && approx_equal(a, make_A_ST<double>(a.rows() / 4), 1e-12);
}

}  // namespace

double TFGrid::norm() const {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return std::sqrt(s * std::pow(spec.spacing(), spec.dim()));
}

cplx inner(const TFGrid& a, const TFGrid& b) {
  require_same_grid(a.spec, b.spec, "TFGrid inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * std::conj(b.values[i]);
  return s * std::pow(a.spec.spacing(), a.spec.dim());
}

std::vector<cplx> shift_periodic(std::span<const cplx> values, const GridSpec& spec,
                                 std::span<const int> steps) {
  if (steps.size() != static_cast<std::size_t>(spec.dim()))
    throw DimensionError("shift_periodic: step count mismatch");
  std::vector<cplx> out(values.size());
  std::vector<int> idx(spec.dim());
  const int n = spec.n();
  for (std::size_t i = 0; i < values.size(); ++i) {
    spec.unravel(i, idx);
    for (int a = 0; a < spec.dim(); ++a) idx[a] = (((idx[a] - steps[a]) % n) + n) % n;
    out[i] = values[spec.ravel(idx)];
  }
  return out;
}

TFGrid stft(const DiscreteSignal& f, const DiscreteSignal& g) {
  require_pair(f, g, "stft");
  TFGrid out{phase_space(f.spec()), std::vector<cplx>(f.size() * f.size()), "stft"};
  kernels::stft({f.samples(), g.samples(), f.spec().dim(), f.spec().n(), f.spec().spacing()},
                out.values);
  return out;
}

int tau_refinement(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw InvalidArgumentError("tau_wigner: tau must lie in [0, 1]");
  for (int r = 1; r <= 16; r *= 2) {
    const double steps = tau * r;
    if (std::abs(steps - std::round(steps)) < 1e-12) return r;
  }
  throw InvalidArgumentError("tau_wigner: tau must be a dyadic rational k/2^m with m <= 4");
}

TFGrid tau_wigner(double tau, const DiscreteSignal& f, const DiscreteSignal& g) {
  require_pair(f, g, "tau_wigner");
  const int r = tau_refinement(tau);
  const GridSpec& spec = f.spec();
  const std::vector<cplx> ff = fft::upsample(f.samples(), spec.dim(), spec.n(), r);
  const std::vector<cplx> gf = fft::upsample(g.samples(), spec.dim(), spec.n(), r);
  char label[48];
  std::snprintf(label, sizeof label, "tau_wigner(%g)", tau);
  TFGrid out{phase_space(spec), std::vector<cplx>(f.size() * f.size()), label};
  kernels::tau_wigner({ff, gf, spec.dim(), spec.n(), r, static_cast<int>(std::lround(tau * r)),
                       spec.spacing()},
                      out.values);
  return out;
}

TFGrid wigner_general(const Matrix<double>& a, const DiscreteSignal& f, const DiscreteSignal& g) {
  require_pair(f, g, "wigner_general");
  require_level(a, f, "wigner_general");
  const DiscreteSignal fg = tensor(f, g.conj());
  const DiscreteSignal w = MetaplecticOperator(a, fg.spec()).apply(fg);
  return {w.spec(), std::vector<cplx>(w.samples().begin(), w.samples().end()), "pipeline"};
}

TFGrid wigner_via_normal_form(const Matrix<double>& e, const Matrix<double>& c,
                              const Matrix<double>& deformation, const DiscreteSignal& f,
                              const DiscreteSignal& g) {
  require_pair(f, g, "wigner_via_normal_form");
  const std::size_t n = 2 * static_cast<std::size_t>(f.spec().dim());
  if (e.rows() != n || e.cols() != n || c.rows() != n || c.cols() != n || deformation.rows() != n ||
      deformation.cols() != n)
    throw DimensionError("wigner_via_normal_form: E, C and the deformation must be " +
                         std::to_string(n) + "x" + std::to_string(n));
  if (!is_invertible(e)) throw SingularMatrixError("wigner_via_normal_form: E is singular");
  if (!is_symmetric(c, 1e-10 * std::max(1.0, max_abs(c))))
    throw InvalidArgumentError("wigner_via_normal_form: C is not symmetric");

  const bool trivial = approx_equal(deformation, Mat::identity(n), 1e-14);
  const DiscreteSignal window = trivial ? g : metaplectic_apply(deformation, g);
  const TFGrid v = stft(f, window);
  const GridSpec& spec = v.spec;
  const Mat e_inv = inverse(e);
  const double amplitude = 1.0 / std::sqrt(std::abs(determinant(e)));

  TFGrid out{spec, std::vector<cplx>(v.values.size()), "normal_form"};
  if (is_grid_compatible(e_inv)) {
    out.values = reindex(v.values, spec, e_inv);
  } else {
    std::vector<int> idx(spec.dim());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      const std::vector<double> w = mat_vec(e_inv, coordinates_of(spec, i));
      bool inside = true;
      for (int a = 0; a < spec.dim(); ++a) {
        const long k = std::lround(w[a] / spec.spacing()) + spec.n() / 2;
        if (k < 0 || k >= spec.n()) {
          inside = false;
          break;
        }
        idx[a] = static_cast<int>(k);
      }
      out.values[i] = inside ? v.values[spec.ravel(idx)] : cplx{};
    }
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const std::vector<double> w = mat_vec(e_inv, coordinates_of(spec, i));
    out.values[i] *= amplitude * std::polar(1.0, kPi * quadratic(c, w));
  }
  return out;
}

NormalForm normal_form(const Matrix<double>& a) {
  const CGTriple<double> t = factorize(a, 1e-10);
  const std::size_t d = a.rows() / 4;
  return {t.E, t.C + make_L<double>(d), deformation(a, 1e-10)};
}

std::optional<double> detect_tau(const Matrix<double>& a) {
  if (!a.square() || a.rows() == 0 || a.rows() % 4 != 0) return std::nullopt;
  const double tau = 1.0 - a(0, 0);
  if (approx_equal(a, make_A_tau<double>(tau, a.rows() / 4), 1e-12)) return tau;
  return std::nullopt;
}

std::optional<WignerRoute> parse_route(const std::string& name) {
  if (name == "auto" || name == "automatic") return WignerRoute::automatic;
  if (name == "direct") return WignerRoute::direct;
  if (name == "pipeline") return WignerRoute::pipeline;
  if (name == "normal" || name == "normal-form" || name == "normal_form")
    return WignerRoute::normal_form;
  return std::nullopt;
}

std::string to_string(WignerRoute route) {
  switch (route) {
    case WignerRoute::automatic: return "auto";
    case WignerRoute::direct: return "direct";
    case WignerRoute::pipeline: return "pipeline";
    case WignerRoute::normal_form: return "normal-form";
  }
  return "?";
}

TFGrid wigner(const Matrix<double>& a, const DiscreteSignal& f, const DiscreteSignal& g,
              WignerRoute route) {
  require_level(a, f, "wigner");
  auto direct = [&]() -> std::optional<TFGrid> {
    if (is_A_ST(a)) return stft(f, g);
    if (const auto tau = detect_tau(a)) {
      try {
        tau_refinement(*tau);
      } catch (const InvalidArgumentError&) {
        return std::nullopt;
      }
      return tau_wigner(*tau, f, g);
    }
    return std::nullopt;
  };
  auto via_normal = [&]() {
    const NormalForm nf = normal_form(a);
    return wigner_via_normal_form(nf.e, nf.c, nf.deformation, f, g);
  };
  switch (route) {
    case WignerRoute::direct:
      if (auto w = direct()) return *w;
      throw InvalidArgumentError("wigner: no direct sum for this matrix");
    case WignerRoute::pipeline: return wigner_general(a, f, g);
    case WignerRoute::normal_form: return via_normal();
    case WignerRoute::automatic: break;
  }
  if (auto w = direct()) return *w;
  if (is_shift_invertible(a, 1e-9 * std::max(1.0, max_abs(a) * max_abs(a))) &&
      is_grid_compatible(inverse(submatrices(a).E)))
    return via_normal();
  return wigner_general(a, f, g);
}

double covariance_check(const Matrix<double>& a, std::span<const double> w,
                        const DiscreteSignal& f, const DiscreteSignal& g, CovarianceForm form,
                        WignerRoute route) {
  require_level(a, f, "covariance_check");
  const Submatrices<double> s = submatrices(a);
  if (!is_invertible(s.E)) throw NotShiftInvertibleError("covariance_check: E_A is singular");
  const TFGrid base = wigner(a, f, g, route);
  const TFGrid moved = wigner(a, tf_shift(w, f), g, route);
  const GridSpec& spec = base.spec;
  const std::vector<double> ew = mat_vec(s.E, w);
  const std::vector<int> steps = steps_of(ew, spec.spacing(), "covariance_check");
  std::vector<cplx> predicted = shift_periodic(base.values, spec, steps);
  if (form == CovarianceForm::modulus) return max_modulus_deviation(moved.values, predicted);

  const std::vector<double> fw = mat_vec(s.F, w);
  steps_of(fw, spec.dual_spacing(), "covariance_check");
  const double chirp = -kPi * quadratic(compute_MA(a), w);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const std::vector<double> z = coordinates_of(spec, i);
    double mod = 0.0;
    for (int k = 0; k < spec.dim(); ++k) mod += fw[k] * z[k];
    predicted[i] *= std::polar(1.0, chirp + 2.0 * kPi * mod);
  }
  const std::vector<cplx> aligned = align_global_phase(moved.values, predicted);
  return max_abs_deviation(moved.values, aligned);
}

double reproducing_check(const Matrix<double>& a, const DiscreteSignal& f, const DiscreteSignal& g,
                         const DiscreteSignal& gamma, WignerRoute route) {
  require_pair(f, g, "reproducing_check");
  require_same_grid(f.spec(), gamma.spec(), "reproducing_check");
  const cplx pairing = inner(gamma, g);
  if (std::abs(pairing) <= 1e-8 * gamma.norm() * g.norm())
    throw InvalidArgumentError("reproducing_check: <gamma, g> vanishes");
  const TFGrid lhs = wigner(a, f, g, route);
  const TFGrid coeff = stft(f, g);
  const GridSpec& spec = coeff.spec;
  const double cell = std::pow(spec.spacing(), spec.dim());
  std::vector<cplx> rhs(lhs.values.size());
  for (std::size_t i = 0; i < coeff.values.size(); ++i) {
    const std::vector<double> w = coordinates_of(spec, i);
    const TFGrid term = wigner(a, tf_shift(w, gamma), g, route);
    const cplx weight = coeff.values[i] * cell / pairing;
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += weight * term.values[k];
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    num += std::norm(lhs.values[k] - rhs[k]);
    den += std::norm(lhs.values[k]);
  }
  return std::sqrt(num / den);
}

MoyalResult moyal_check(const Matrix<double>& a, const DiscreteSignal& f1, const DiscreteSignal& f2,
                        const DiscreteSignal& g1, const DiscreteSignal& g2, WignerRoute route) {
  MoyalResult r;
  r.lhs = inner(wigner(a, f1, f2, route), wigner(a, g1, g2, route));
  r.rhs = inner(f1, g1) * std::conj(inner(f2, g2));
  r.error = std::abs(r.lhs - r.rhs) / (f1.norm() * f2.norm() * g1.norm() * g2.norm());
  return r;
}

}  // namespace metaplectic
