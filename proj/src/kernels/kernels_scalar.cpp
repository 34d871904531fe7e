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

#include "sscsi/kernels.hpp"

namespace sscsi::kernels {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void csr_matvec(const std::int64_t* row_ptr, const std::int32_t* col, const double* val,
                const double* x, double* y, std::int64_t row_lo, std::int64_t row_hi) {
  for (std::int64_t r = row_lo; r < row_hi; ++r) {
    double acc = 0.0;
    for (std::int64_t j = row_ptr[r]; j < row_ptr[r + 1]; ++j) acc += val[j] * x[col[j]];
    y[r] = acc;
  }
}

void projected_step(const double* z, const double* grad, double step, double* delta,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = z[i] - step * grad[i];
    delta[i] = (t > 0.0 ? t : 0.0) - z[i];
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", dot, axpy, csr_matvec, projected_step};
  return table;
}

}  // namespace sscsi::kernels
