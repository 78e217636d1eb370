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

// Hot loops of the library. Every kernel comes in two flavours with the same
// signature: the default one is OpenMP-parallel and uses FFTs or phase tables
// where possible, the one in `reference` is a serial literal evaluation of the
// defining sum. Tests compare the two; bench/ times them.

#include <cstddef>
#include <span>

#include "metaplectic/grid.hpp"

namespace metaplectic::kernels {

/// V_g f(x_m, xi_n) = sum_k f[k] conj(g[k - m + n/2 mod n]) e^{-2 pi i xi_n t_k} h^dim.
/// Output is row-major over (x-block, xi-block), size n^{2 dim}.
struct StftProblem {
  std::span<const cplx> f;
  std::span<const cplx> g;
  int dim = 1;
  int n = 0;
  double spacing = 0.0;
};

/// Cross tau-Wigner sum on band-limited refinements of f and g.
///
/// f_fine and g_fine live on the grid refined by `refine`. With a = tau_steps
/// and b = refine - a,
///   W(x_m, xi_v) = sum_j f_fine[m R + a j] conj(g_fine[m R - b j]) e^{-2 pi i (v - n/2).j / n} h^dim
/// where out-of-range samples count as zero.
struct TauWignerProblem {
  std::span<const cplx> f_fine;
  std::span<const cplx> g_fine;
  int dim = 1;
  int n = 0;
  int refine = 1;
  int tau_steps = 0;
  double spacing = 0.0;
};

/// out[p] = sum_y input[y] exp(-2 pi i eta_p . y_nodes) over a tensor grid with
/// `m` nodes per axis. `frequencies` holds count * dim values.
struct NonuniformDftProblem {
  std::span<const cplx> input;
  int dim = 1;
  std::size_t m = 0;
  std::span<const double> nodes;
  std::span<const double> frequencies;
};

/// ( sum_y ( sum_x |F(x,y)|^p w_x )^{q/p} w_y )^{1/q}; values are |F| m laid out
/// as x * outer + y. Infinite exponents take the maximum.
struct MixedNormProblem {
  std::span<const double> values;
  std::size_t inner = 0;
  std::size_t outer = 0;
  double p = 2.0;
  double q = 2.0;
  double inner_cell = 1.0;
  double outer_cell = 1.0;
};

void stft(const StftProblem& prob, std::span<cplx> out);
void tau_wigner(const TauWignerProblem& prob, std::span<cplx> out);
void nonuniform_dft(const NonuniformDftProblem& prob, std::span<cplx> out);
double mixed_norm(const MixedNormProblem& prob);

namespace reference {

void stft(const StftProblem& prob, std::span<cplx> out);
void tau_wigner(const TauWignerProblem& prob, std::span<cplx> out);
void nonuniform_dft(const NonuniformDftProblem& prob, std::span<cplx> out);
double mixed_norm(const MixedNormProblem& prob);

}  // namespace reference

}  // namespace metaplectic::kernels
