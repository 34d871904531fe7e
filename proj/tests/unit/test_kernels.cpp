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


#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sscsi/kernels.hpp"
#include "sscsi/random.hpp"

namespace sscsi {
namespace {

using kernels::KernelTable;

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> out{&kernels::scalar_table()};
  if (kernels::avx2_available()) out.push_back(kernels::avx2_table());
  return out;
}

std::vector<double> draw(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
  return v;
}

TEST(Kernels, ForceVariant) {
  kernels::force_variant("scalar");
  EXPECT_STREQ(kernels::active().name, "scalar");
  EXPECT_THROW(kernels::force_variant("neon"), std::invalid_argument);
  if (kernels::avx2_available()) {
    kernels::force_variant("avx2");
    EXPECT_STREQ(kernels::active().name, "avx2");
  } else {
    EXPECT_THROW(kernels::force_variant("avx2"), std::invalid_argument);
  }
}

TEST(Kernels, DotAndAxpyAgree) {
  const auto& ref = kernels::scalar_table();
  Rng rng(1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u}) {
    const auto x = draw(rng, n), y = draw(rng, n);
    const double d0 = ref.dot(x.data(), y.data(), n);
    std::vector<double> y0 = y;
    ref.axpy(0.7, x.data(), y0.data(), n);
    for (const auto* t : variants()) {
      EXPECT_NEAR(t->dot(x.data(), y.data(), n), d0, 1e-13 * (1.0 + n)) << t->name << " n=" << n;
      std::vector<double> y1 = y;
      t->axpy(0.7, x.data(), y1.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y0[i], 1e-15) << t->name;
    }
  }
}

TEST(Kernels, ProjectedStepAgrees) {
  const auto& ref = kernels::scalar_table();
  Rng rng(2);
  for (std::size_t n : {1u, 5u, 8u, 131u}) {
    auto z = draw(rng, n);
    for (auto& v : z) v = std::max(v, 0.0);
    const auto g = draw(rng, n);
    std::vector<double> d0(n);
    ref.projected_step(z.data(), g.data(), 0.9, d0.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_DOUBLE_EQ(d0[i], std::max(z[i] - 0.9 * g[i], 0.0) - z[i]);
    for (const auto* t : variants()) {
      std::vector<double> d1(n);
      t->projected_step(z.data(), g.data(), 0.9, d1.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d1[i], d0[i], 1e-15) << t->name;
    }
  }
}

TEST(Kernels, CsrMatvecAgrees) {
  const auto& ref = kernels::scalar_table();
  Rng rng(3);
  const int rows = 57, cols = 40;
  std::vector<std::int64_t> ptr{0};
  std::vector<std::int32_t> col;
  std::vector<double> val;
  for (int r = 0; r < rows; ++r) {
    const int nnz = static_cast<int>(rng.uniform_below(12));
    for (int j = 0; j < nnz; ++j) {
      col.push_back(static_cast<std::int32_t>(rng.uniform_below(cols)));
      val.push_back(2.0 * rng.uniform() - 1.0);
    }
    ptr.push_back(static_cast<std::int64_t>(col.size()));
  }
  const auto x = draw(rng, cols);
  std::vector<double> y0(rows);
  ref.csr_matvec(ptr.data(), col.data(), val.data(), x.data(), y0.data(), 0, rows);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (auto j = ptr[r]; j < ptr[r + 1]; ++j) s += val[j] * x[col[j]];
    EXPECT_NEAR(y0[r], s, 1e-14);
  }
  for (const auto* t : variants()) {
    std::vector<double> y1(rows, -99.0);
    t->csr_matvec(ptr.data(), col.data(), val.data(), x.data(), y1.data(), 5, rows);
    for (int r = 0; r < 5; ++r) EXPECT_EQ(y1[r], -99.0);
    for (int r = 5; r < rows; ++r) EXPECT_NEAR(y1[r], y0[r], 1e-14) << t->name;
  }
}

}  // namespace
}  // namespace sscsi
