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

#include "metaplectic/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace metaplectic {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(int dim, int n) : GridSpec(dim, n, std::sqrt(static_cast<double>(n))) {}

GridSpec::GridSpec(int dim, int n, double extent) : dim_(dim), n_(n), extent_(extent) {
  if (dim < 1) throw GridError("grid dimension must be >= 1");
  if (n < 4 || !is_power_of_two(n))
    throw GridError("samples per axis must be a power of two >= 4, got " + std::to_string(n));
  if (!(extent > 0.0) || !std::isfinite(extent)) throw GridError("grid extent must be positive");
  size_ = 1;
  for (int a = 0; a < dim; ++a) {
    if (size_ > (std::size_t{1} << 40) / static_cast<std::size_t>(n))
      throw ResourceError("grid too large");
    size_ *= static_cast<std::size_t>(n);
  }
}

bool GridSpec::self_dual() const {
  return std::abs(extent_ * extent_ - n_) <= 1e-12 * n_;
}

void GridSpec::unravel(std::size_t flat, std::span<int> index) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    index[a] = static_cast<int>(flat % n_);
    flat /= n_;
  }
}

std::size_t GridSpec::ravel(std::span<const int> index) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat = flat * n_ + static_cast<std::size_t>(index[a]);
  return flat;
}

DiscreteSignal::DiscreteSignal(GridSpec spec) : spec_(spec), samples_(spec.size()) {}

DiscreteSignal::DiscreteSignal(GridSpec spec, std::vector<cplx> samples)
    : spec_(spec), samples_(std::move(samples)) {
  if (samples_.size() != spec_.size())
    throw GridError("signal has " + std::to_string(samples_.size()) + " samples, grid needs " +
                    std::to_string(spec_.size()));
  for (const cplx& v : samples_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw GridError("signal samples must be finite");
}

DiscreteSignal DiscreteSignal::sample(const GridSpec& spec,
                                      const std::function<cplx(std::span<const double>)>& fn) {
  DiscreteSignal out(spec);
  std::vector<int> idx(spec.dim());
  std::vector<double> x(spec.dim());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.unravel(i, idx);
    for (int a = 0; a < spec.dim(); ++a) x[a] = spec.coordinate(idx[a]);
    out.samples_[i] = fn(x);
  }
  return out;
}

double DiscreteSignal::norm() const {
  double sum = 0.0;
  for (const cplx& v : samples_) sum += std::norm(v);
  return std::sqrt(sum * std::pow(spec_.spacing(), spec_.dim()));
}

DiscreteSignal DiscreteSignal::conj() const {
  DiscreteSignal out(spec_);
  for (std::size_t i = 0; i < samples_.size(); ++i) out.samples_[i] = std::conj(samples_[i]);
  return out;
}

DiscreteSignal& DiscreteSignal::operator*=(cplx s) {
  for (cplx& v : samples_) v *= s;
  return *this;
}

DiscreteSignal& DiscreteSignal::operator+=(const DiscreteSignal& o) {
  require_same_grid(spec_, o.spec_, "signal addition");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
  return *this;
}

DiscreteSignal operator*(cplx s, DiscreteSignal f) { return f *= s; }

DiscreteSignal operator+(DiscreteSignal a, const DiscreteSignal& b) { return a += b; }

DiscreteSignal operator-(DiscreteSignal a, const DiscreteSignal& b) {
  require_same_grid(a.spec(), b.spec(), "signal subtraction");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw GridError(std::string(what) + ": grid mismatch");
}

cplx inner(const DiscreteSignal& f, const DiscreteSignal& g) {
  require_same_grid(f.spec(), g.spec(), "inner product");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]);
  return sum * std::pow(f.spec().spacing(), f.spec().dim());
}

DiscreteSignal tensor(const DiscreteSignal& f, const DiscreteSignal& g) {
  if (f.spec().n() != g.spec().n() || f.spec().extent() != g.spec().extent())
    throw GridError("tensor: factors must share samples per axis and extent");
  DiscreteSignal out(f.spec().with_dim(f.spec().dim() + g.spec().dim()));
  const std::size_t inner_size = g.size();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < inner_size; ++j) out[i * inner_size + j] = f[i] * g[j];
  return out;
}

DiscreteSignal gaussian(const GridSpec& spec, const GaussianAtom& atom) {
  const int d = spec.dim();
  auto coord = [](const std::vector<double>& v, int a) { return v.empty() ? 0.0 : v.at(a); };
  const double w2 = atom.width * atom.width;
  const double amplitude = std::pow(2.0 / w2, 0.25 * d);
  return DiscreteSignal::sample(spec, [&](std::span<const double> x) {
    double r2 = 0.0;
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      const double dx = x[a] - coord(atom.center, a);
      r2 += dx * dx;
      phase += coord(atom.frequency, a) * x[a];
    }
    return amplitude * std::exp(-kPi * r2 / w2) * std::polar(1.0, 2.0 * kPi * phase);
  });
}

DiscreteSignal standard_gaussian(const GridSpec& spec) { return gaussian(spec, GaussianAtom{}); }

double max_abs_deviation(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw GridError("deviation: size mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double max_modulus_deviation(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw GridError("deviation: size mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    best = std::max(best, std::abs(std::abs(a[i]) - std::abs(b[i])));
  return best;
}

std::vector<cplx> align_global_phase(std::span<const cplx> ref, std::span<const cplx> x) {
  if (ref.size() != x.size()) throw GridError("align: size mismatch");
  std::vector<cplx> out(x.begin(), x.end());
  if (ref.empty()) return out;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < ref.size(); ++i)
    if (std::abs(ref[i]) > std::abs(ref[peak])) peak = i;
  if (std::abs(x[peak]) == 0.0 || std::abs(ref[peak]) == 0.0) return out;
  const cplx rot = (ref[peak] / std::abs(ref[peak])) / (x[peak] / std::abs(x[peak]));
  for (cplx& v : out) v *= rot;
  return out;
}

}  // namespace metaplectic
