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

#include <filesystem>
#include <string>

#include "metaplectic/matrix.hpp"
#include "metaplectic/mixed_norms.hpp"
#include "metaplectic/scalar.hpp"
#include "metaplectic/tf_distributions.hpp"

namespace metaplectic::io {

enum class MatrixMode { rational, float64 };

/// A matrix as read from disk. `exact` is filled in rational mode only.
struct MatrixFile {
  MatrixMode mode = MatrixMode::float64;
  Matrix<Rational> exact;
  Matrix<double> value;
};

/// {"rows": R, "cols": C, "mode": "rational"|"float64", "entries": [[...]]};
/// rational entries are strings "p/q" (bare integers are accepted).
MatrixFile parse_matrix(const std::string& json_text);
MatrixFile read_matrix(const std::filesystem::path& path);
std::string matrix_json(const Matrix<Rational>& m);
std::string matrix_json(const Matrix<double>& m);
void write_matrix(const std::filesystem::path& path, const Matrix<Rational>& m);
void write_matrix(const std::filesystem::path& path, const Matrix<double>& m);

/// The JSON sidecar that travels with a data file: `<path>.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& data);

/// CSV of "re,im" lines with a {"d", "N", "T"} sidecar.
void write_signal(const std::filesystem::path& path, const DiscreteSignal& f);
DiscreteSignal read_signal(const std::filesystem::path& path);

/// Raw little-endian float64 (re, im) pairs, row-major over (x-block, xi-block),
/// with a {"d", "N", "T", "provenance"} sidecar; d counts signal dimensions.
void write_tfgrid(const std::filesystem::path& path, const TFGrid& w);
TFGrid read_tfgrid(const std::filesystem::path& path);
void write_tfgrid_csv(const std::filesystem::path& path, const TFGrid& w);

/// 8-bit P5 image of 20 log10(|W| / max |W|) clipped to `range_db`; x runs
/// left to right and xi bottom to top. d = 1 only.
void write_pgm(const std::filesystem::path& path, const TFGrid& w, double range_db = 60.0);

std::string report_json(const RatioReport& r);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace metaplectic::io
