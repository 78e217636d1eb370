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

#include "metaplectic/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <vector>

namespace metaplectic::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void centered_axis(std::span<cplx> data, std::span<const std::size_t> shape, std::size_t axis,
                   int sign) {
  if (axis >= shape.size()) throw DimensionError("fft: axis out of range");
  std::size_t total = 1;
  for (std::size_t s : shape) total *= s;
  if (total != data.size()) throw DimensionError("fft: shape does not match data");
  const std::size_t m = shape[axis];
  if (m % 2 != 0) throw GridError("fft: axis length must be even");
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];

  // Centering on both sides: (-1)^k before, (-1)^j after, times e^{sign i pi M/2}.
  for (std::size_t i = 0; i < data.size(); ++i)
    if ((i / stride) % m % 2 == 1) data[i] = -data[i];

  std::vector<fftw_iodim> howmany;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (a == axis || shape[a] == 1) continue;
    std::size_t st = 1;
    for (std::size_t b = a + 1; b < shape.size(); ++b) st *= shape[b];
    howmany.push_back({static_cast<int>(shape[a]), static_cast<int>(st), static_cast<int>(st)});
  }
  fftw_iodim dim{static_cast<int>(m), static_cast<int>(stride), static_cast<int>(stride)};
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_guru_dft(1, &dim, static_cast<int>(howmany.size()), howmany.data(), ptr, ptr,
                              sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw ResourceError("fft: planner failed");
  fftw_execute_dft(plan, ptr, ptr);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double global = (m % 4 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool odd = (i / stride) % m % 2 == 1;
    data[i] *= odd ? -global : global;
  }
}

void centered(std::span<cplx> data, std::span<const std::size_t> shape, std::size_t first_axis,
              int sign) {
  for (std::size_t a = first_axis; a < shape.size(); ++a) centered_axis(data, shape, a, sign);
}

std::vector<cplx> upsample(std::span<const cplx> f, int dim, int n, int factor) {
  if (factor < 1 || (factor & (factor - 1)) != 0)
    throw InvalidArgumentError("upsample: factor must be a power of two");
  if (factor == 1) return std::vector<cplx>(f.begin(), f.end());
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t mm = nn * static_cast<std::size_t>(factor);
  std::vector<std::size_t> shape(dim, nn);
  std::vector<cplx> cur(f.begin(), f.end());
  // Refine one axis at a time; earlier axes already have length mm.
  for (int a = 0; a < dim; ++a) {
    std::vector<std::size_t> in_shape(dim);
    for (int b = 0; b < dim; ++b) in_shape[b] = b < a ? mm : nn;
    centered_axis(cur, in_shape, a, -1);
    std::vector<std::size_t> out_shape = in_shape;
    out_shape[a] = mm;
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (int b = 0; b < a; ++b) outer *= in_shape[b];
    for (int b = a + 1; b < dim; ++b) inner *= in_shape[b];
    std::vector<cplx> next(outer * mm * inner);
    const std::size_t offset = (mm - nn) / 2;
    const double scale = 1.0 / static_cast<double>(nn);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t k = 0; k < nn; ++k)
        for (std::size_t i = 0; i < inner; ++i) {
          const cplx v = cur[(o * nn + k) * inner + i] * scale;
          if (k == 0) {
            next[(o * mm + offset) * inner + i] += 0.5 * v;
            next[(o * mm + offset + nn) * inner + i] += 0.5 * v;
          } else {
            next[(o * mm + offset + k) * inner + i] += v;
          }
        }
    centered_axis(next, out_shape, a, +1);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace metaplectic::fft
