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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metaplectic/tf_distributions.hpp"
#include "metaplectic/weights.hpp"

namespace metaplectic {

enum class Measure {
  /// Cell weight spacing^d on each of the two variables.
  riemann,
  /// Plain sums over samples.
  counting,
};

struct MixedNormParams {
  double p = 2.0;
  double q = 2.0;
  Weight weight;
  Measure measure = Measure::riemann;
};

/// Weighted L^{p,q} norm of a TFGrid over (x, xi): inner p-norm in x, outer
/// q-norm in xi. A quasi-norm when min(p, q) < 1; infinite exponents take the
/// maximum over samples.
double mixed_norm(const TFGrid& f, const MixedNormParams& params);

/// mixed_norm(stft(f, g)).
double modulation_norm(const DiscreteSignal& f, const DiscreteSignal& g,
                       const MixedNormParams& params);

/// |det S|^{1/2} F(S z) for an integer phase-space matrix S, by re-indexing.
TFGrid dilate_phase_space(const Matrix<double>& s, const TFGrid& f);

/// Block upper triangular: the lower-left d x d block of a 2d x 2d matrix vanishes.
bool is_block_upper_triangular(const Matrix<double>& s, double tol = 0.0);

/// Summary of a randomized or tabulated norm-ratio experiment.
struct RatioReport {
  std::string theorem;
  std::string hypothesis;
  bool hypothesis_ok = true;
  std::size_t trials = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  /// Closed-form constant or slope the ratios are compared against.
  std::optional<double> expected;
  std::optional<double> slope;
  /// (parameter, ratio) rows for sweeps.
  std::vector<std::pair<double, double>> table;
  bool pass = false;
};

struct DilationOptions {
  /// Points per axis; 0 picks 256 for d = 1 and 16 for d = 2.
  int n = 0;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  /// Bound on std/mean and on |mean / C_S - 1|.
  double tolerance = 0.02;
};

/// |det A|^{1/2 - 1/p} |det D|^{1/2 - 1/q} for S = [[A, B], [0, D]].
double dilation_constant(const Matrix<double>& s, double p, double q);

/// Ratios mixed_norm(T_S F) / mixed_norm(F) over random smooth F for an
/// integer block upper triangular S.
RatioReport dilation_norm_ratio(const Matrix<double>& s, const MixedNormParams& params,
                                const DilationOptions& opts = {});

struct EquivalenceOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  double bound = 10.0;
  /// Relative amplitude of the complex white noise added to each test signal.
  double noise = 0.02;
  WignerRoute route = WignerRoute::automatic;
};

/// Random test signal: one to three Gaussian atoms with log-uniform widths
/// between 4 grid steps and a quarter of the extent, plus white noise.
DiscreteSignal random_test_signal(const GridSpec& spec, std::uint64_t seed, double noise);

/// Ratios mixed_norm(W_A(f, g)) / modulation_norm(f, g) over random f. Passes
/// when the hypotheses hold and max/min stays within `bound`.
RatioReport equivalence_check(const Matrix<double>& a, const DiscreteSignal& g,
                              const MixedNormParams& params, const EquivalenceOptions& opts = {});

struct CounterexampleOptions {
  int n = 256;
  std::vector<double> widths{1.0, 2.0, 4.0, 8.0};
  double tolerance = 0.05;
};

/// mixed_norm(D_J F_a) / mixed_norm(F_a) for F_a the indicator of [0, a) x [0, 1),
/// with the log-log slope over a compared against 1/q - 1/p.
RatioReport counterexample_DJ(double p, double q, const CounterexampleOptions& opts = {});

}  // namespace metaplectic
