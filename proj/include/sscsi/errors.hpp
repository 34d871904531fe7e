// Copyright 2026 the sscsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sscsi {

/// Geometry parameters violate an invariant (non-integer pitch ratio,
/// mismatched full widths, out-of-range s, ...).
class InvalidGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// s = 0 or alpha = 0: no dispersion at the mask, the band count is zero.
class DegenerateSpectral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operator has too few nonzero columns for a coherence value.
class DegenerateOperator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An overlap quantity was requested for a regime where it is undefined.
class WrongRegime : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative computation produced a non-finite value.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad experiment configuration or command-line value.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or truncated file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sscsi
