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

#include <stdexcept>
#include <string>

namespace metaplectic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class NotSymplecticError : public Error {
 public:
  using Error::Error;
};

class NotShiftInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition on a matrix argument (non-symmetric chirp, bad triple, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Grid mismatch, off-grid shift, non-self-dual grid or grid-incompatible dilation.
class GridError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// A dense kernel would exceed the configured work cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace metaplectic
