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
#include <limits>
#include <stdexcept>
#include <vector>

#include "sscsi/errors.hpp"
#include "sscsi/metrics.hpp"
#include "support/test_support.hpp"

namespace sscsi {
namespace {

using testing::GeometrySpec;
using testing::make_geometry;

TEST(Psnr, IdenticalIsInfinite) {
  Rng rng(1);
  const auto a = testing::random_cube(rng, {4, 4, 2});
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  EXPECT_EQ(format_metric(psnr(a, a)), "inf");
}

TEST(Psnr, ConstantOffset) {
  Datacube ref({4, 4, 2});
  ref.at(1, 2, 1) = 1.0;
  Datacube test = ref;
  for (auto& v : test.values()) v += 0.1;
  EXPECT_NEAR(psnr(ref, test), 20.0, 1e-12);
  for (double b : psnr_per_band(ref, test)) EXPECT_NEAR(b, 20.0, 1e-12);
}

TEST(Psnr, ScaleInvariant) {
  Rng rng(2);
  auto a = testing::random_cube(rng, {5, 3, 3});
  for (auto& v : a.values()) v = std::abs(v);
  auto b = testing::random_cube(rng, {5, 3, 3});
  const double p = psnr(a, b);
  for (auto& v : a.values()) v *= 7.5;
  for (auto& v : b.values()) v *= 7.5;
  EXPECT_NEAR(psnr(a, b), p, 1e-10);
}

TEST(Psnr, Errors) {
  Datacube a({2, 2, 1}), b({2, 2, 2});
  EXPECT_THROW(psnr(a, b), DimensionMismatch);
  EXPECT_THROW(psnr(a, a), std::domain_error);
}

TEST(Correlation, Examples) {
  const std::vector<double> a{1, 2, 3, 4};
  std::vector<double> b{5, 7, 9, 11};
  EXPECT_NEAR(signature_correlation(a, b), 1.0, 1e-15);
  EXPECT_NEAR(signature_correlation(a, std::vector<double>{1, 2, 3, 5}), 0.9827, 1e-4);
  EXPECT_NEAR(signature_correlation(a, std::vector<double>{1, -1, -1, 1}), 0.0, 1e-15);
  EXPECT_NEAR(signature_correlation(a, std::vector<double>{4, 3, 2, 1}), 1.0, 1e-15);
}

TEST(Correlation, AffineInvariant) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = testing::random_vector(rng, 12);
    const auto b = testing::random_vector(rng, 12);
    const double r = signature_correlation(a, b);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    auto c = b;
    const double scale = rng.uniform() * 10 - 5, shift = rng.uniform() * 100;
    for (auto& v : c) v = scale * v + shift;
    EXPECT_NEAR(signature_correlation(a, c), r, 1e-10);
  }
}

TEST(Correlation, Errors) {
  EXPECT_THROW(signature_correlation(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
               std::domain_error);
  EXPECT_THROW(signature_correlation(std::vector<double>{1}, std::vector<double>{2}),
               std::domain_error);
  EXPECT_THROW(signature_correlation(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}),
               DimensionMismatch);
}

TEST(CompressionRatio, Examples) {
  const auto g = make_geometry({.s = "24/256", .n_d = 256, .n_c = 256});
  const CubeDims d = recovered_dims(g);
  EXPECT_EQ(d.bands, 24);
  EXPECT_DOUBLE_EQ(compression_ratio(24, g), 1.0);
  EXPECT_EQ(compression_ratio(0, g), 0.0);
  for (int q = 1; q < 30; ++q) EXPECT_GT(compression_ratio(q + 1, g), compression_ratio(q, g));
}

TEST(CompressionRatio, InvertsToNearestShots) {
  const auto g = make_geometry(
      {.s = "1/10", .delta_c = "1/2", .delta_d = "1", .n_d = 128, .n_c = 256, .beta = "1"});
  const BandGrid grid = BandGrid::uniform(g, 24);
  const CubeDims d = recovered_dims(g, grid);
  const int expect = static_cast<int>(std::lround(0.68 * d.voxels() / (128.0 * 128.0)));
  EXPECT_EQ(shots_for_ratio(0.68, g, grid), expect);
  EXPECT_THROW(shots_for_ratio(0.0, g, grid), std::invalid_argument);
}

TEST(CompressionRatio, FullSizeTarget) {
  const auto g = make_geometry(
      {.s = "23/256", .delta_c = "1/2", .delta_d = "1", .n_d = 128, .n_c = 256, .beta = "1"});
  const BandGrid grid = BandGrid::uniform(g, 24);
  ASSERT_EQ(recovered_dims(g, grid), (CubeDims{233, 256, 24}));
  EXPECT_EQ(shots_for_ratio(0.68, g, grid), 59);
}

TEST(FormatMetric, RoundTrips) {
  EXPECT_EQ(format_metric(20.0), "20");
  EXPECT_EQ(format_metric(-std::numeric_limits<double>::infinity()), "-inf");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_metric(v)), v);
}

}  // namespace
}  // namespace sscsi
