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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "metaplectic/errors.hpp"

namespace metaplectic {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid on the cube [-T/2, T/2)^dim with n samples per axis.
///
/// Sample points are x_k = -T/2 + k T/n. The dual grid has spacing 1/T and
/// extent n/T; the grid is self-dual when T = sqrt(n), which every Fourier
/// operation requires.
class GridSpec {
 public:
  GridSpec(int dim, int n);
  GridSpec(int dim, int n, double extent);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double extent() const { return extent_; }
  double spacing() const { return extent_ / n_; }
  double dual_spacing() const { return 1.0 / extent_; }
  std::size_t size() const { return size_; }
  double coordinate(int k) const { return -0.5 * extent_ + k * spacing(); }
  bool self_dual() const;

  GridSpec with_dim(int dim) const { return GridSpec(dim, n_, extent_); }

  /// Multi-index of a flat row-major index.
  void unravel(std::size_t flat, std::span<int> index) const;
  std::size_t ravel(std::span<const int> index) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.extent_ == b.extent_;
  }

 private:
  int dim_;
  int n_;
  double extent_;
  std::size_t size_;
};

/// Complex samples of a function on a GridSpec, row-major.
class DiscreteSignal {
 public:
  explicit DiscreteSignal(GridSpec spec);
  DiscreteSignal(GridSpec spec, std::vector<cplx> samples);

  /// Samples fn(x) at every grid point; x has spec.dim() coordinates.
  static DiscreteSignal sample(const GridSpec& spec,
                               const std::function<cplx(std::span<const double>)>& fn);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const cplx> samples() const { return samples_; }
  std::span<cplx> samples() { return samples_; }
  cplx& operator[](std::size_t i) { return samples_[i]; }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }

  /// Discrete L2 norm with cell weight spacing^dim.
  double norm() const;
  DiscreteSignal conj() const;
  DiscreteSignal& operator*=(cplx s);
  DiscreteSignal& operator+=(const DiscreteSignal& o);

 private:
  GridSpec spec_;
  std::vector<cplx> samples_;
};

DiscreteSignal operator*(cplx s, DiscreteSignal f);
DiscreteSignal operator+(DiscreteSignal a, const DiscreteSignal& b);
DiscreteSignal operator-(DiscreteSignal a, const DiscreteSignal& b);

/// <f, g> = sum f conj(g) spacing^dim, conjugate-linear in g.
cplx inner(const DiscreteSignal& f, const DiscreteSignal& g);

/// (f (x) g)(x, y) = f(x) g(y) on the grid of dimension dim_f + dim_g.
DiscreteSignal tensor(const DiscreteSignal& f, const DiscreteSignal& g);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

/// L2-normalized Gaussian atom e^{2 pi i xi0.t} exp(-pi |t - x0|^2 / width^2).
struct GaussianAtom {
  std::vector<double> center;
  std::vector<double> frequency;
  double width = 1.0;
};

DiscreteSignal gaussian(const GridSpec& spec, const GaussianAtom& atom);
DiscreteSignal standard_gaussian(const GridSpec& spec);

double max_abs_deviation(std::span<const cplx> a, std::span<const cplx> b);
/// max | |a| - |b| |, the comparison used wherever only moduli are defined.
double max_modulus_deviation(std::span<const cplx> a, std::span<const cplx> b);
/// Rotates `x` by a unit phase so that it agrees in phase with `ref` at the
/// largest-magnitude sample of `ref`.
std::vector<cplx> align_global_phase(std::span<const cplx> ref, std::span<const cplx> x);

}  // namespace metaplectic
