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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "sscsi/kernels.hpp"

namespace sscsi::kernels {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double acc = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void csr_matvec(const std::int64_t* row_ptr, const std::int32_t* col, const double* val,
                const double* x, double* y, std::int64_t row_lo, std::int64_t row_hi) {
  for (std::int64_t r = row_lo; r < row_hi; ++r) {
    std::int64_t j = row_ptr[r];
    const std::int64_t end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; j + 4 <= end; j += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + j));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + j), xv, acc);
    }
    double s = hsum(acc);
    for (; j < end; ++j) s += val[j] * x[col[j]];
    y[r] = s;
  }
}

void projected_step(const double* z, const double* grad, double step, double* delta,
                    std::size_t n) {
  const __m256d vs = _mm256_set1_pd(step);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d t = _mm256_fnmadd_pd(vs, _mm256_loadu_pd(grad + i), vz);
    _mm256_storeu_pd(delta + i, _mm256_sub_pd(_mm256_max_pd(t, zero), vz));
  }
  for (; i < n; ++i) {
    const double t = z[i] - step * grad[i];
    delta[i] = (t > 0.0 ? t : 0.0) - z[i];
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", dot, axpy, csr_matvec, projected_step};
  return &table;
}

}  // namespace sscsi::kernels
