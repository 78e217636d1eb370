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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metaplectic/discrete_metaplectic.hpp"

namespace metaplectic {

/// Samples of a phase-space function, row-major over (x-block, xi-block).
struct TFGrid {
  GridSpec spec;
  std::vector<cplx> values;
  std::string provenance;

  double norm() const;
};

cplx inner(const TFGrid& a, const TFGrid& b);

/// Periodic translation of a TFGrid by integer steps per axis.
std::vector<cplx> shift_periodic(std::span<const cplx> values, const GridSpec& spec,
                                 std::span<const int> steps);

/// Direct discrete short-time Fourier transform.
TFGrid stft(const DiscreteSignal& f, const DiscreteSignal& g);

/// Refinement factor 2^m with tau 2^m an integer; throws for other tau.
int tau_refinement(double tau);

/// Cross tau-Wigner distribution for dyadic tau in [0, 1].
TFGrid tau_wigner(double tau, const DiscreteSignal& f, const DiscreteSignal& g);

/// A applied to f (x) conj(g) through the generator pipeline.
TFGrid wigner_general(const Matrix<double>& a, const DiscreteSignal& f, const DiscreteSignal& g);

/// |det E|^{-1/2} Phi_C(E^{-1} z) V_{delta g} f(E^{-1} z) with delta g the
/// metaplectic image of g under `deformation`. E^{-1} z is exact re-indexing
/// for integer E^{-1} and nearest-sample lookup otherwise.
TFGrid wigner_via_normal_form(const Matrix<double>& e, const Matrix<double>& c,
                              const Matrix<double>& deformation, const DiscreteSignal& f,
                              const DiscreteSignal& g);

/// Normal-form parameters of a shift-invertible A: (E_A, M_A + L, J conj(G_A)).
struct NormalForm {
  Matrix<double> e;
  Matrix<double> c;
  Matrix<double> deformation;
};

NormalForm normal_form(const Matrix<double>& a);

/// The tau with A == A_tau, if any.
std::optional<double> detect_tau(const Matrix<double>& a);

enum class WignerRoute { automatic, direct, pipeline, normal_form };

std::optional<WignerRoute> parse_route(const std::string& name);
std::string to_string(WignerRoute route);

/// Dispatches W_A(f, g). `automatic` prefers the direct sums for A_ST and
/// A_tau, then the normal form when E_A^{-1} is integer, then the pipeline.
TFGrid wigner(const Matrix<double>& a, const DiscreteSignal& f, const DiscreteSignal& g,
              WignerRoute route = WignerRoute::automatic);

enum class CovarianceForm { modulus, phase };

/// Max deviation between W_A(pi(w) f, g) and the shifted W_A(f, g). The phase
/// form multiplies in Phi_{-M_A}(w) and the modulation by F_A w and aligns
/// the global phase first.
double covariance_check(const Matrix<double>& a, std::span<const double> w,
                        const DiscreteSignal& f, const DiscreteSignal& g,
                        CovarianceForm form = CovarianceForm::modulus,
                        WignerRoute route = WignerRoute::automatic);

/// ||W_A(f, g) - <gamma, g>^{-1} sum_w V_g f(w) W_A(pi(w) gamma, g) dw|| / ||W_A(f, g)||.
double reproducing_check(const Matrix<double>& a, const DiscreteSignal& f, const DiscreteSignal& g,
                         const DiscreteSignal& gamma, WignerRoute route = WignerRoute::automatic);

struct MoyalResult {
  cplx lhs;
  cplx rhs;
  /// |lhs - rhs| divided by the product of the four input norms.
  double error = 0.0;
};

MoyalResult moyal_check(const Matrix<double>& a, const DiscreteSignal& f1, const DiscreteSignal& f2,
                        const DiscreteSignal& g1, const DiscreteSignal& g2,
                        WignerRoute route = WignerRoute::automatic);

}  // namespace metaplectic
