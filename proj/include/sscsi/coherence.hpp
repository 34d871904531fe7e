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

#include <cstddef>
#include <cstdint>

#include "sscsi/linear_operator.hpp"
#include "sscsi/sensing_matrix.hpp"
#include "sscsi/sparsity.hpp"

namespace sscsi {

enum class CoherenceRoute {
  kAuto,
  kDense,       ///< materialize A, then all column dot products
  kColumnwise,  ///< one A and one A^T application per column
  kPointwise,   ///< H couples only voxels at the detector pixel's own (x, y)
};

const char* to_string(CoherenceRoute route);

struct CoherenceOptions {
  CoherenceRoute route = CoherenceRoute::kAuto;
  std::size_t memory_budget_bytes = std::size_t{256} << 20;
  /// Columns with norm <= zero_tol * (largest column norm) count as zero.
  double zero_tol = 1e-9;
};

struct CoherenceReport {
  /// Equals mu_nonzero unless some column is annihilated, in which case 1:
  /// a zero column means a basis atom is invisible to the system.
  double mu = 0.0;
  /// Max |<a_i, a_j>| / (|a_i| |a_j|) over distinct nonzero columns.
  double mu_nonzero = 0.0;
  std::int64_t columns = 0;
  std::int64_t zero_columns = 0;
  std::int64_t pair_i = -1;  ///< columns attaining mu_nonzero
  std::int64_t pair_j = -1;
  CoherenceRoute route = CoherenceRoute::kAuto;
};

/// Exact mutual coherence of a generic operator (dense or columnwise route).
CoherenceReport coherence(const LinearOperator& a, const CoherenceOptions& opts = {});

/// Coherence of A = H Psi. kAuto picks the pointwise route when H allows it,
/// dense when A fits the memory budget, columnwise otherwise.
CoherenceReport coherence(const SensingMatrix& h, const SparsityOperator& psi,
                          const CoherenceOptions& opts = {});

/// True when every entry of H links detector pixel (m, n) only to voxels at
/// (x, y) = (m, n) and the cube is detector-sized.
bool is_pointwise(const SensingMatrix& h);

}  // namespace sscsi
