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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "metaplectic/fft.hpp"
#include "metaplectic/grid.hpp"
#include "metaplectic/kernels.hpp"

namespace mk = metaplectic::kernels;
using metaplectic::cplx;

namespace {

std::vector<cplx> random_signal(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> out(n);
  for (cplx& v : out) v = {g(rng), g(rng)};
  return out;
}

template <bool Parallel>
void BM_Stft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = random_signal(n, 1);
  const auto g = random_signal(n, 2);
  std::vector<cplx> out(static_cast<std::size_t>(n) * n);
  const mk::StftProblem prob{f, g, 1, n, 1.0 / std::sqrt(static_cast<double>(n))};
  for (auto _ : state) {
    if constexpr (Parallel) mk::stft(prob, out);
    else mk::reference::stft(prob, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_TauWigner(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int refine = 2;
  const auto f = metaplectic::fft::upsample(random_signal(n, 3), 1, n, refine);
  const auto g = metaplectic::fft::upsample(random_signal(n, 4), 1, n, refine);
  std::vector<cplx> out(static_cast<std::size_t>(n) * n);
  const mk::TauWignerProblem prob{f, g, 1, n, refine, 1, 1.0 / std::sqrt(static_cast<double>(n))};
  for (auto _ : state) {
    if constexpr (Parallel) mk::tau_wigner(prob, out);
    else mk::reference::tau_wigner(prob, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_NonuniformDft(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const auto input = random_signal(m * m, 5);
  std::vector<double> nodes(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = -0.5 + static_cast<double>(k) / m;
  std::vector<double> freq(2 * 256);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (double& v : freq) v = u(rng);
  std::vector<cplx> out(256);
  const mk::NonuniformDftProblem prob{input, 2, m, nodes, freq};
  for (auto _ : state) {
    if constexpr (Parallel) mk::nonuniform_dft(prob, out);
    else mk::reference::nonuniform_dft(prob, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_MixedNorm(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> values(n * n);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : values) v = u(rng);
  const mk::MixedNormProblem prob{values, n, n, 1.5, 3.0, 0.1, 0.1};
  for (auto _ : state) {
    double r = Parallel ? mk::mixed_norm(prob) : mk::reference::mixed_norm(prob);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_Stft<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_Stft<true>)->Arg(32)->Arg(64)->Arg(256);
BENCHMARK(BM_TauWigner<false>)->Arg(16)->Arg(32);
BENCHMARK(BM_TauWigner<true>)->Arg(16)->Arg(32)->Arg(128);
BENCHMARK(BM_NonuniformDft<false>)->Arg(32);
BENCHMARK(BM_NonuniformDft<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_MixedNorm<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_MixedNorm<true>)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
