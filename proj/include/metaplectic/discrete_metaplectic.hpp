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

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "metaplectic/grid.hpp"
#include "metaplectic/symplectic.hpp"

namespace metaplectic {

/// Unitary Fourier transform f^(xi) = int f(x) e^{-2 pi i x.xi} dx on a
/// self-dual grid.
DiscreteSignal fourier(const DiscreteSignal& f);
DiscreteSignal inverse_fourier(const DiscreteSignal& f);

/// Fourier transform in the second half of the variables only.
DiscreteSignal partial_fourier_2(const DiscreteSignal& f);

/// Pointwise product with the chirp e^{i pi t.Ct}.
DiscreteSignal chirp_mul(const Matrix<double>& c, const DiscreteSignal& f);

/// True if E is invertible with integer entries, so that x -> Ex maps grid
/// points to grid points.
bool is_grid_compatible(const Matrix<double>& e);

/// Samples of F(Mz) on the grid for integer M. Unimodular M permutes the grid
/// periodically; otherwise points leaving the grid read as zero.
std::vector<cplx> reindex(std::span<const cplx> values, const GridSpec& spec,
                          const Matrix<double>& m);

/// |det E|^{1/2} f(E x). Grid-incompatible E are evaluated through the free
/// kernel when `kernel_fallback` is set and rejected otherwise.
DiscreteSignal dilate(const Matrix<double>& e, const DiscreteSignal& f,
                      bool kernel_fallback = false);

/// pi(x, xi) f = M_xi T_x f with periodic translation. z = (x, xi) must lie on
/// the grid and its dual.
DiscreteSignal tf_shift(std::span<const double> z, const DiscreteSignal& f);

/// rho(x, xi; tau) f = e^{2 pi i tau} e^{-pi i xi.x} pi(x, xi) f.
DiscreteSignal schrodinger(std::span<const double> z, double tau, const DiscreteSignal& f);

/// Integer step counts of a phase-space point; throws if z is off-grid.
std::vector<int> grid_steps(std::span<const double> z, const GridSpec& spec);

struct FourierFactor {};
struct DilationFactor {
  Matrix<double> e;
};
struct ChirpFactor {
  Matrix<double> c;
};
/// A free symplectic matrix (invertible upper-right block) applied as one
/// dense oscillatory kernel.
struct FreeKernelFactor {
  Matrix<double> s;
};

using Factor = std::variant<FourierFactor, DilationFactor, ChirpFactor, FreeKernelFactor>;

/// Product of factors, leftmost first; acting on signals the rightmost factor
/// is applied first.
struct GeneratorWord {
  std::size_t d = 0;
  std::vector<Factor> factors;
  cplx phase{1.0, 0.0};
};

struct DecomposeOptions {
  /// Produce a plan `MetaplecticOperator` can run: dilations are integer,
  /// and free runs without an exact realization become FreeKernel factors.
  bool executable = false;
  int max_shift = 16;
  double tol = 1e-10;
};

GeneratorWord decompose_generators(const Matrix<double>& s, const DecomposeOptions& opts = {});
Matrix<double> factor_matrix(const Factor& f, std::size_t d);
Matrix<double> word_product(const GeneratorWord& w);
std::string describe(const GeneratorWord& w);

struct FreeKernelOptions {
  int max_oversample = 16;
  double max_terms = 4e9;
};

/// Oversampling factor the free kernel uses for S at unit grid extent.
int free_kernel_oversample(const Matrix<double>& s);

/// |det B|^{-1/2} int e^{i pi (DB^{-1}x.x - 2 B^{-1}x.y + B^{-1}Ay.y)} f(y) dy
/// for S = [[A, B], [C, D]] with B invertible, evaluated as a Riemann sum on a
/// band-limited refinement of f.
DiscreteSignal apply_free_kernel(const Matrix<double>& s, const DiscreteSignal& f,
                                 const FreeKernelOptions& opts = {});

/// A discrete metaplectic operator compiled for one grid.
class MetaplecticOperator {
 public:
  MetaplecticOperator(const Matrix<double>& s, const GridSpec& grid);

  DiscreteSignal apply(const DiscreteSignal& f) const;
  const GeneratorWord& plan() const { return plan_; }
  const Matrix<double>& matrix() const { return s_; }

 private:
  Matrix<double> s_;
  GridSpec grid_;
  GeneratorWord plan_;
};

/// Applies a metaplectic operator projecting to S; the result is fixed only
/// up to a unit-modulus constant.
DiscreteSignal metaplectic_apply(const Matrix<double>& s, const DiscreteSignal& f);

}  // namespace metaplectic
