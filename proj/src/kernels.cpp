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

#include "metaplectic/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "metaplectic/fft.hpp"

namespace metaplectic::kernels {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void unravel(std::size_t flat, int dim, std::size_t n, int* index) {
  for (int a = dim - 1; a >= 0; --a) {
    index[a] = static_cast<int>(flat % n);
    flat /= n;
  }
}

long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
long ceil_div(long a, long b) { return -floor_div(-a, b); }

void check_stft(const StftProblem& p, std::span<cplx> out) {
  if (p.dim < 1 || p.n < 2 || p.n % 2 != 0) throw GridError("stft: bad grid");
  const std::size_t nd = ipow(p.n, p.dim);
  if (p.f.size() != nd || p.g.size() != nd) throw GridError("stft: signal size mismatch");
  if (out.size() != nd * nd) throw GridError("stft: output size mismatch");
}

void check_tau(const TauWignerProblem& p, std::span<cplx> out) {
  if (p.dim < 1 || p.n < 2 || p.n % 2 != 0) throw GridError("tau_wigner: bad grid");
  if (p.refine < 1 || p.tau_steps < 0 || p.tau_steps > p.refine)
    throw InvalidArgumentError("tau_wigner: tau_steps must lie in [0, refine]");
  const std::size_t fine = ipow(static_cast<std::size_t>(p.n) * p.refine, p.dim);
  if (p.f_fine.size() != fine || p.g_fine.size() != fine)
    throw GridError("tau_wigner: refined signal size mismatch");
  if (out.size() != ipow(p.n, 2 * p.dim)) throw GridError("tau_wigner: output size mismatch");
}

void check_nudft(const NonuniformDftProblem& p, std::span<cplx> out) {
  if (p.dim < 1 || p.m == 0) throw GridError("nonuniform_dft: bad grid");
  if (p.nodes.size() != p.m) throw GridError("nonuniform_dft: node count mismatch");
  if (p.input.size() != ipow(p.m, p.dim)) throw GridError("nonuniform_dft: input size mismatch");
  if (p.frequencies.size() != out.size() * static_cast<std::size_t>(p.dim))
    throw GridError("nonuniform_dft: frequency count mismatch");
}

void check_mixed(const MixedNormProblem& p) {
  if (p.inner == 0 || p.outer == 0) throw InvalidArgumentError("mixed_norm: empty grid");
  if (p.values.size() != p.inner * p.outer) throw GridError("mixed_norm: size mismatch");
  if (!(p.p > 0.0) || !(p.q > 0.0)) throw InvalidArgumentError("mixed_norm: exponents must be > 0");
}

/// Inclusive range of j with 0 <= base + a j < fine and 0 <= base - b j < fine.
void tau_range(long base, long a, long b, long fine, long& lo, long& hi) {
  lo = std::numeric_limits<long>::min() / 4;
  hi = std::numeric_limits<long>::max() / 4;
  if (a > 0) {
    lo = std::max(lo, ceil_div(-base, a));
    hi = std::min(hi, floor_div(fine - 1 - base, a));
  }
  if (b > 0) {
    lo = std::max(lo, ceil_div(base - fine + 1, b));
    hi = std::min(hi, floor_div(base, b));
  }
}

}  // namespace

void stft(const StftProblem& p, std::span<cplx> out) {
  check_stft(p, out);
  const std::size_t n = p.n;
  const std::size_t nd = ipow(n, p.dim);
  const double cell = std::pow(p.spacing, p.dim);
  const std::vector<std::size_t> shape(p.dim, n);
  const long long rows = static_cast<long long>(nd);
#pragma omp parallel
  {
    std::vector<int> mi(p.dim);
    std::vector<int> ki(p.dim);
#pragma omp for schedule(static)
    for (long long m = 0; m < rows; ++m) {
      unravel(static_cast<std::size_t>(m), p.dim, n, mi.data());
      std::span<cplx> row = out.subspan(static_cast<std::size_t>(m) * nd, nd);
      for (std::size_t k = 0; k < nd; ++k) {
        unravel(k, p.dim, n, ki.data());
        std::size_t gi = 0;
        for (int a = 0; a < p.dim; ++a)
          gi = gi * n + static_cast<std::size_t>((ki[a] - mi[a] + static_cast<int>(n + n / 2)) %
                                                 static_cast<int>(n));
        row[k] = p.f[k] * std::conj(p.g[gi]);
      }
      fft::centered(row, shape, 0, -1);
      for (cplx& v : row) v *= cell;
    }
  }
}

void tau_wigner(const TauWignerProblem& p, std::span<cplx> out) {
  check_tau(p, out);
  const std::size_t n = p.n;
  const std::size_t nd = ipow(n, p.dim);
  const long fine = static_cast<long>(n) * p.refine;
  const long a = p.tau_steps;
  const long b = p.refine - p.tau_steps;
  const double cell = std::pow(p.spacing, p.dim);
  const std::vector<std::size_t> shape(p.dim, n);
  const long long rows = static_cast<long long>(nd);
#pragma omp parallel
  {
    std::vector<int> mi(p.dim);
    std::vector<long> lo(p.dim);
    std::vector<long> hi(p.dim);
    std::vector<long> j(p.dim);
#pragma omp for schedule(dynamic)
    for (long long m = 0; m < rows; ++m) {
      unravel(static_cast<std::size_t>(m), p.dim, n, mi.data());
      std::span<cplx> row = out.subspan(static_cast<std::size_t>(m) * nd, nd);
      std::fill(row.begin(), row.end(), cplx{});
      bool empty = false;
      for (int ax = 0; ax < p.dim; ++ax) {
        tau_range(static_cast<long>(mi[ax]) * p.refine, a, b, fine, lo[ax], hi[ax]);
        if (lo[ax] > hi[ax]) empty = true;
      }
      if (!empty) {
        std::copy(lo.begin(), lo.end(), j.begin());
        for (;;) {
          std::size_t fi = 0;
          std::size_t gi = 0;
          std::size_t bin = 0;
          for (int ax = 0; ax < p.dim; ++ax) {
            const long base = static_cast<long>(mi[ax]) * p.refine;
            fi = fi * fine + static_cast<std::size_t>(base + a * j[ax]);
            gi = gi * fine + static_cast<std::size_t>(base - b * j[ax]);
            const long nl = static_cast<long>(n);
            bin = bin * n + static_cast<std::size_t>(((j[ax] + nl / 2) % nl + nl) % nl);
          }
          row[bin] += p.f_fine[fi] * std::conj(p.g_fine[gi]);
          int ax = p.dim - 1;
          while (ax >= 0 && j[ax] == hi[ax]) {
            j[ax] = lo[ax];
            --ax;
          }
          if (ax < 0) break;
          ++j[ax];
        }
      }
      fft::centered(row, shape, 0, -1);
      for (cplx& v : row) v *= cell;
    }
  }
}

void nonuniform_dft(const NonuniformDftProblem& p, std::span<cplx> out) {
  check_nudft(p, out);
  const std::size_t m = p.m;
  const std::size_t total = p.input.size();
  const long long count = static_cast<long long>(out.size());
#pragma omp parallel
  {
    std::vector<cplx> phase(m * p.dim);
    std::vector<cplx> buf_a(total / m);
    std::vector<cplx> buf_b(total / m);
#pragma omp for schedule(static)
    for (long long q = 0; q < count; ++q) {
      for (int ax = 0; ax < p.dim; ++ax) {
        const double eta = p.frequencies[static_cast<std::size_t>(q) * p.dim + ax];
        for (std::size_t k = 0; k < m; ++k)
          phase[ax * m + k] = std::polar(1.0, -2.0 * kPi * eta * p.nodes[k]);
      }
      // Contract the last axis first, shrinking the working array by m each time.
      std::span<const cplx> cur = p.input;
      std::size_t size = total;
      std::vector<cplx>* dst = &buf_a;
      for (int ax = p.dim - 1; ax >= 0; --ax) {
        const std::size_t next = size / m;
        const cplx* ph = &phase[ax * m];
        if (ax == 0) {
          cplx acc = 0.0;
          for (std::size_t k = 0; k < m; ++k) acc += cur[k] * ph[k];
          out[static_cast<std::size_t>(q)] = acc;
          break;
        }
        for (std::size_t i = 0; i < next; ++i) {
          cplx acc = 0.0;
          const cplx* src = &cur[i * m];
          for (std::size_t k = 0; k < m; ++k) acc += src[k] * ph[k];
          (*dst)[i] = acc;
        }
        cur = std::span<const cplx>(dst->data(), next);
        size = next;
        dst = (dst == &buf_a) ? &buf_b : &buf_a;
      }
    }
  }
}

double mixed_norm(const MixedNormProblem& p) {
  check_mixed(p);
  const bool p_inf = std::isinf(p.p);
  const bool q_inf = std::isinf(p.q);
  const long long outer = static_cast<long long>(p.outer);
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (!q_inf)
  for (long long y = 0; y < outer; ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < p.inner; ++x) {
      const double v = p.values[x * p.outer + static_cast<std::size_t>(y)];
      s = p_inf ? std::max(s, v) : s + std::pow(v, p.p);
    }
    const double inner = p_inf ? s : std::pow(s * p.inner_cell, 1.0 / p.p);
    if (!q_inf) acc += std::pow(inner, p.q);
  }
  if (!q_inf) return std::pow(acc * p.outer_cell, 1.0 / p.q);
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (long long y = 0; y < outer; ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < p.inner; ++x) {
      const double v = p.values[x * p.outer + static_cast<std::size_t>(y)];
      s = p_inf ? std::max(s, v) : s + std::pow(v, p.p);
    }
    best = std::max(best, p_inf ? s : std::pow(s * p.inner_cell, 1.0 / p.p));
  }
  return best;
}

namespace reference {

void stft(const StftProblem& p, std::span<cplx> out) {
  check_stft(p, out);
  const int n = p.n;
  const std::size_t nd = ipow(n, p.dim);
  const double h = p.spacing;
  const double extent = n * h;
  const double cell = std::pow(h, p.dim);
  std::vector<int> mi(p.dim), vi(p.dim), ki(p.dim);
  for (std::size_t m = 0; m < nd; ++m) {
    unravel(m, p.dim, n, mi.data());
    for (std::size_t v = 0; v < nd; ++v) {
      unravel(v, p.dim, n, vi.data());
      cplx sum = 0.0;
      for (std::size_t k = 0; k < nd; ++k) {
        unravel(k, p.dim, n, ki.data());
        std::size_t gi = 0;
        double phase = 0.0;
        for (int a = 0; a < p.dim; ++a) {
          int shifted = ki[a] - mi[a] + n / 2;
          shifted = ((shifted % n) + n) % n;
          gi = gi * n + static_cast<std::size_t>(shifted);
          const double t = -0.5 * extent + ki[a] * h;
          const double xi = (vi[a] - n / 2) / extent;
          phase += xi * t;
        }
        sum += p.f[k] * std::conj(p.g[gi]) * std::polar(1.0, -2.0 * kPi * phase);
      }
      out[m * nd + v] = sum * cell;
    }
  }
}

void tau_wigner(const TauWignerProblem& p, std::span<cplx> out) {
  check_tau(p, out);
  const int n = p.n;
  const std::size_t nd = ipow(n, p.dim);
  const long fine = static_cast<long>(n) * p.refine;
  const long a = p.tau_steps;
  const long b = p.refine - p.tau_steps;
  const double cell = std::pow(p.spacing, p.dim);
  const std::size_t span = static_cast<std::size_t>(4 * n + 1);
  const std::size_t jcount = ipow(span, p.dim);
  std::vector<int> mi(p.dim), vi(p.dim), ji(p.dim);
  for (std::size_t m = 0; m < nd; ++m) {
    unravel(m, p.dim, n, mi.data());
    for (std::size_t v = 0; v < nd; ++v) {
      unravel(v, p.dim, n, vi.data());
      cplx sum = 0.0;
      for (std::size_t jf = 0; jf < jcount; ++jf) {
        unravel(jf, p.dim, span, ji.data());
        std::size_t fi = 0;
        std::size_t gi = 0;
        double phase = 0.0;
        bool inside = true;
        for (int ax = 0; ax < p.dim; ++ax) {
          const long j = ji[ax] - 2L * n;
          const long base = static_cast<long>(mi[ax]) * p.refine;
          const long fk = base + a * j;
          const long gk = base - b * j;
          if (fk < 0 || fk >= fine || gk < 0 || gk >= fine) {
            inside = false;
            break;
          }
          fi = fi * fine + static_cast<std::size_t>(fk);
          gi = gi * fine + static_cast<std::size_t>(gk);
          phase += static_cast<double>(vi[ax] - n / 2) * static_cast<double>(j) / n;
        }
        if (inside) sum += p.f_fine[fi] * std::conj(p.g_fine[gi]) * std::polar(1.0, -2.0 * kPi * phase);
      }
      out[m * nd + v] = sum * cell;
    }
  }
}

void nonuniform_dft(const NonuniformDftProblem& p, std::span<cplx> out) {
  check_nudft(p, out);
  std::vector<int> yi(p.dim);
  for (std::size_t q = 0; q < out.size(); ++q) {
    cplx sum = 0.0;
    for (std::size_t y = 0; y < p.input.size(); ++y) {
      unravel(y, p.dim, p.m, yi.data());
      double phase = 0.0;
      for (int a = 0; a < p.dim; ++a) phase += p.frequencies[q * p.dim + a] * p.nodes[yi[a]];
      sum += p.input[y] * std::polar(1.0, -2.0 * kPi * phase);
    }
    out[q] = sum;
  }
}

double mixed_norm(const MixedNormProblem& p) {
  check_mixed(p);
  std::vector<double> inner(p.outer, 0.0);
  for (std::size_t x = 0; x < p.inner; ++x)
    for (std::size_t y = 0; y < p.outer; ++y) {
      const double v = p.values[x * p.outer + y];
      inner[y] = std::isinf(p.p) ? std::max(inner[y], v) : inner[y] + std::pow(v, p.p) * p.inner_cell;
    }
  double total = 0.0;
  for (std::size_t y = 0; y < p.outer; ++y) {
    const double s = std::isinf(p.p) ? inner[y] : std::pow(inner[y], 1.0 / p.p);
    total = std::isinf(p.q) ? std::max(total, s) : total + std::pow(s, p.q) * p.outer_cell;
  }
  return std::isinf(p.q) ? total : std::pow(total, 1.0 / p.q);
}

}  // namespace reference

}  // namespace metaplectic::kernels
