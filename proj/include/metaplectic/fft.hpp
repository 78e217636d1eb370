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

#include <cstddef>
#include <span>

#include "metaplectic/grid.hpp"

namespace metaplectic::fft {

/// In-place centered DFT along one axis of a row-major array:
///
///   out[j] = sum_k in[k] exp(sign 2 pi i (j - M/2)(k - M/2) / M),  M = shape[axis].
///
/// Unnormalized. M must be even.
void centered_axis(std::span<cplx> data, std::span<const std::size_t> shape, std::size_t axis,
                   int sign);

/// Centered DFT along every axis in [first_axis, shape.size()).
void centered(std::span<cplx> data, std::span<const std::size_t> shape, std::size_t first_axis,
              int sign);

/// Band-limited refinement by an integer power-of-two factor: returns samples of
/// the trigonometric interpolant of f on the grid with spacing / factor.
/// The Nyquist coefficient is split evenly between the two new band edges.
std::vector<cplx> upsample(std::span<const cplx> f, int dim, int n, int factor);

}  // namespace metaplectic::fft
