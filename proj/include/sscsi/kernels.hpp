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

namespace sscsi::kernels {

/// Hot loops used by the operators and the solver. Every variant computes the
/// same result up to floating-point reassociation.
struct KernelTable {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y += a x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// y[r] = sum_j val[j] x[col[j]] for r in [row_lo, row_hi)
  void (*csr_matvec)(const std::int64_t* row_ptr, const std::int32_t* col, const double* val,
                     const double* x, double* y, std::int64_t row_lo, std::int64_t row_hi);
  /// delta = max(z - step * grad, 0) - z
  void (*projected_step)(const double* z, const double* grad, double step, double* delta,
                         std::size_t n);
};

const KernelTable& scalar_table();
/// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

/// True when the running CPU has AVX2 and FMA and the variant was built.
bool avx2_available();

/// Table in use: AVX2 when available, unless SSCSI_SIMD=scalar is set or
/// force_variant() was called.
const KernelTable& active();

/// "scalar" or "avx2"; throws std::invalid_argument for anything else or when
/// the variant is unavailable.
void force_variant(const char* name);

}  // namespace sscsi::kernels
