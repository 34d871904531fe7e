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

#include "sscsi/errors.hpp"
#include "sscsi/forward_model.hpp"
#include "sscsi/sensing_matrix.hpp"
#include "support/reference_model.hpp"
#include "support/test_support.hpp"

namespace sscsi {
namespace {

using testing::make_geometry;
using testing::R;

std::vector<double> as_vector(const MeasurementSet& m) {
  return {m.values().begin(), m.values().end()};
}

TEST(Sense, IdentityAtDetector) {
  const auto g = make_geometry({.s = "0"});
  Rng rng(1);
  const Datacube f = testing::random_cube(rng, recovered_dims(g));
  const auto out = sense(f, CodedApertureSet::all_open(8), g);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) EXPECT_DOUBLE_EQ(out.at(0, m, n), f.at(m, n, 0));
}

TEST(Sense, ZeroCube) {
  const auto g = make_geometry({.s = "0.25", .beta = "2"});
  const auto out = sense(Datacube(recovered_dims(g)), generate_boolean_codes(8, 2, 1), g);
  for (double v : out.values()) EXPECT_EQ(v, 0.0);
}

TEST(Sense, RejectsMismatchedInputs) {
  const auto g = make_geometry({.s = "0.25", .beta = "2"});
  EXPECT_THROW(sense(Datacube({8, 8, 3}), generate_boolean_codes(8, 1, 1), g), DimensionMismatch);
  EXPECT_THROW(sense(Datacube(recovered_dims(g)), generate_boolean_codes(4, 1, 1), g),
               DimensionMismatch);
}

TEST(Sense, MatchesReferenceSumsAndMatrix) {
  Rng rng(5);
  // 4x4x2 with delta_c == delta_d and L = 2.
  const auto g = make_geometry({.s = "0.25", .n_d = 4, .n_c = 4, .beta = "2"});
  ASSERT_EQ(recovered_dims(g), (CubeDims{4, 4, 2}));
  const auto codes = generate_boolean_codes(4, 2, 9);
  const Datacube f = testing::random_cube(rng, recovered_dims(g));
  const auto got = as_vector(sense(f, codes, g));
  EXPECT_LE(testing::rel_diff(got, as_vector(testing::reference_sense(f, codes, g))), 1e-12);
  const SensingMatrix h = assemble(codes, g);
  const DenseOperator dense = DenseOperator::from(h);
  EXPECT_LE(testing::rel_diff(got, dense * f.values()), 1e-12);
}

class SenseRegimes : public ::testing::TestWithParam<Regime> {};

TEST_P(SenseRegimes, ResolvableGridMatchesReference) {
  Rng rng(100 + static_cast<int>(GetParam()));
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 20; ++trial) {
    const auto g = testing::random_geometry(rng, GetParam(), 4, 8);
    const BandGrid grid = BandGrid::resolvable(g);
    if (grid.count > 6) continue;
    const auto codes = generate_boolean_codes(g.n_c(), 2, trial);
    const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
    EXPECT_LE(testing::rel_diff(as_vector(sense(f, codes, g)),
                                as_vector(testing::reference_sense(f, codes, g))),
              1e-12)
        << g.canonical();
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST_P(SenseRegimes, MatrixEquivalenceOnUniformGrids) {
  Rng rng(200 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_geometry(rng, GetParam(), 4, 8);
    const BandGrid grid = BandGrid::uniform(g, 2 + static_cast<int>(rng.uniform_below(3)));
    const auto codes = generate_boolean_codes(g.n_c(), 1 + static_cast<int>(rng.uniform_below(3)), trial);
    const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
    const SensingMatrix h = assemble(codes, g, grid);
    EXPECT_LE(testing::rel_diff(as_vector(sense(f, codes, g, grid)), h * f.values()), 1e-12)
        << g.canonical();
  }
}

TEST_P(SenseRegimes, LinearAndNonnegative) {
  Rng rng(300 + static_cast<int>(GetParam()));
  const auto g = testing::random_geometry(rng, GetParam(), 4, 8);
  const BandGrid grid = BandGrid::uniform(g, 3);
  const auto codes = generate_boolean_codes(g.n_c(), 2, 3);
  const CubeDims d = recovered_dims(g, grid);
  const Datacube a = testing::random_cube(rng, d);
  const Datacube b = testing::random_cube(rng, d);
  Datacube mix(d);
  for (std::size_t i = 0; i < mix.size(); ++i) mix.values()[i] = 2.5 * a.values()[i] - 0.75 * b.values()[i];
  const auto ga = sense(a, codes, g, grid);
  const auto gb = sense(b, codes, g, grid);
  const auto gm = sense(mix, codes, g, grid);
  for (std::size_t i = 0; i < gm.size(); ++i) {
    EXPECT_NEAR(gm.values()[i], 2.5 * ga.values()[i] - 0.75 * gb.values()[i], 1e-12);
    EXPECT_GE(ga.values()[i], 0.0);
  }
}

TEST_P(SenseRegimes, BooleanShotsSumToOpenMask) {
  Rng rng(400 + static_cast<int>(GetParam()));
  const auto g = testing::random_geometry(rng, GetParam(), 4, 8);
  const BandGrid grid = BandGrid::uniform(g, 3);
  const auto codes = generate_boolean_codes(g.n_c(), 3, 17);
  const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
  const auto split = sense(f, codes, g, grid);
  const auto open = sense(f, CodedApertureSet::all_open(g.n_c()), g, grid);
  for (int m = 0; m < g.n_d(); ++m)
    for (int n = 0; n < g.n_d(); ++n) {
      double sum = 0.0;
      for (int q = 0; q < 3; ++q) sum += split.at(q, m, n);
      EXPECT_NEAR(sum, open.at(0, m, n), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(AllRegimes, SenseRegimes,
                         ::testing::Values(Regime::kMagnifiedLE, Regime::kMagnifiedGT,
                                           Regime::kCoarseMask));

TEST(ExactShear, NoShearAtDetector) {
  const auto g = make_geometry({.s = "0"});
  const BandGrid grid = BandGrid::uniform(g, 4);
  Rng rng(8);
  const auto codes = generate_boolean_codes(8, 2, 2);
  const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
  EXPECT_LE(testing::rel_diff(as_vector(sense_exact_shear(f, codes, g, grid)),
                              as_vector(sense(f, codes, g, grid))),
            1e-12);
}

TEST(ExactShear, SmallShearGivesSmallDeviation) {
  // One band whose mask moves by a fraction eps of a column across the band.
  for (const char* s : {"0.001", "0.01"}) {
    const auto g = make_geometry({.s = s, .n_d = 16, .n_c = 16});
    const BandGrid grid = BandGrid::uniform(g, 1);
    const double eps = to_double(grid.column_shift(g, 1));
    Rng rng(9);
    const auto codes = generate_boolean_codes(16, 2, 4);
    const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
    const auto a = as_vector(sense_exact_shear(f, codes, g, grid));
    const auto b = as_vector(sense(f, codes, g, grid));
    EXPECT_LE(testing::rel_diff(a, b), 2.0 * eps) << s;
  }
}

TEST(ExactShear, FirstOrderErrorSnapshot) {
  const auto g = make_geometry({.s = "0.25", .beta = "2"});
  const BandGrid grid = BandGrid::resolvable(g);
  ASSERT_EQ(recovered_dims(g, grid), (CubeDims{8, 8, 4}));
  Rng rng(10);
  const auto codes = generate_boolean_codes(8, 2, 6);
  const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
  const auto a = sense_exact_shear(f, codes, g, grid);
  const auto b = sense(f, codes, g, grid);
  double total = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.values()[i] <= 0.0) continue;
    total += std::abs(a.values()[i] - b.values()[i]) / b.values()[i];
    ++count;
  }
  const double mean = total / count;
  EXPECT_GT(mean, 0.0);
  EXPECT_LT(mean, 0.5);
}

TEST(ExactShear, AveragedWeightsAreBandMeans) {
  // With an open mask the sheared footprint stays on the mask except near the
  // right edge, so interior pixels match the staircase exactly.
  const auto g = make_geometry({.s = "0.25", .n_d = 16, .n_c = 16, .beta = "0.5"});
  const BandGrid grid = BandGrid::resolvable(g);
  Rng rng(12);
  const Datacube f = testing::random_cube(rng, recovered_dims(g, grid));
  const auto open = CodedApertureSet::all_open(16);
  const auto a = sense_exact_shear(f, open, g, grid);
  const auto b = sense(f, open, g, grid);
  for (int m = 0; m < 10; ++m)
    for (int n = 0; n < 16; ++n) EXPECT_NEAR(a.at(0, m, n), b.at(0, m, n), 1e-10);
}

TEST(Continuous, ZeroScene) {
  const auto g = make_geometry({.s = "0.25", .beta = "2"});
  const auto out = sense_continuous([](double, double, double) { return 0.0; },
                                    generate_boolean_codes(8, 2, 1), g, {.x_sub = 4, .lambda_sub = 4});
  for (double v : out.values()) EXPECT_EQ(v, 0.0);
}

TEST(Continuous, ConstantSceneOpenMask) {
  const auto g = make_geometry({.s = "0.1", .n_d = 16, .n_c = 16, .beta = "0.5"});
  const double c = 0.37;
  const auto out = sense_continuous([c](double, double, double) { return c; },
                                    CodedApertureSet::all_open(16), g,
                                    {.x_sub = 8, .y_sub = 2, .lambda_sub = 16});
  const double want = 1.0 * 1.0 * 300.0 * c;
  // Rightmost pixels lose light that falls off the mask.
  for (int m = 0; m < 14; ++m)
    for (int n = 0; n < 16; ++n) EXPECT_NEAR(out.at(0, m, n), want, 1e-6 * want);
}

TEST(Continuous, NarrowBandSceneMatchesSense) {
  // delta_c = delta_d, s = 1/2, one column of shear per band: every cell edge
  // falls on the dyadic sample grid.
  const auto g = make_geometry({.s = "0.5", .beta = "0.5"});
  const BandGrid grid = BandGrid::resolvable(g);
  ASSERT_TRUE(grid.integer_shifts(g));
  const int k = 1;
  const double l0 = to_double(grid.start(g, k));
  const double eps = to_double(grid.width_nm) * 1e-5;
  Rng rng(3);
  std::vector<double> pattern(64);
  for (double& v : pattern) v = rng.uniform();
  auto scene = [&](double x, double y, double) {
    return pattern[static_cast<int>(x) * 8 + static_cast<int>(y)];
  };
  const auto codes = generate_boolean_codes(8, 2, 8);
  const auto cont = sense_continuous(scene, codes, g,
                                     {.x_sub = 64, .y_sub = 1, .lambda_sub = 4, .lambda_lo = l0,
                                      .lambda_hi = l0 + eps});
  Datacube f(recovered_dims(g, grid));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) f.at(x, y, k) = pattern[x * 8 + y] * eps;
  const auto disc = sense(f, codes, g, grid);
  EXPECT_LE(testing::rel_diff(as_vector(cont), as_vector(disc)), 1e-3);
}

TEST(Continuous, ConvergesToExactShear) {
  const auto g = make_geometry({.s = "0.3", .beta = "1"});
  const BandGrid grid = BandGrid::uniform(g, 3);
  Rng rng(4);
  std::vector<double> values(8 * 8 * 3);
  for (double& v : values) v = rng.uniform();
  const double width = to_double(grid.width_nm);
  const double lmin = to_double(g.lambda_min());
  auto scene = [&](double x, double y, double lambda) {
    const int k = std::min(2, static_cast<int>((lambda - lmin) / width));
    return values[(k * 8 + static_cast<int>(x)) * 8 + static_cast<int>(y)];
  };
  const auto codes = generate_boolean_codes(8, 2, 5);
  const Datacube f = discretize_scene(scene, g, grid, {.x_sub = 8, .y_sub = 1, .lambda_sub = 3});
  const auto exact = as_vector(sense_exact_shear(f, codes, g, grid));
  const double coarse = testing::rel_diff(
      as_vector(sense_continuous(scene, codes, g, {.x_sub = 16, .lambda_sub = 24})), exact);
  const double fine = testing::rel_diff(
      as_vector(sense_continuous(scene, codes, g, {.x_sub = 128, .lambda_sub = 192})), exact);
  EXPECT_LT(fine, coarse);
  EXPECT_LT(fine, 2e-4);
}

TEST(Cassi, SingleBandIsCodedImage) {
  const auto g = make_geometry({.s = "0"});
  Rng rng(6);
  const Datacube f = testing::random_cube(rng, {8, 8, 1});
  const auto codes = generate_boolean_codes(8, 2, 1);
  const auto out = sense_cassi_baseline(f, codes, g);
  ASSERT_EQ(out.cols(), 8);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) EXPECT_DOUBLE_EQ(out.at(1, m, n), codes.at(1, m, n) * f.at(m, n, 0));
}

TEST(Cassi, OneHotLandsShifted) {
  const auto g = make_geometry({.s = "0", .n_d = 4, .n_c = 4});
  Datacube f({4, 4, 2});
  f.at(2, 1, 1) = 1.0;
  const auto out = sense_cassi_baseline(f, CodedApertureSet::all_open(4), g);
  ASSERT_EQ(out.cols(), 5);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 5; ++n) EXPECT_EQ(out.at(0, m, n), m == 2 && n == 2 ? 1.0 : 0.0);
  const auto zero = sense_cassi_baseline(Datacube({4, 4, 2}), CodedApertureSet::all_open(4), g);
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
}

TEST(Cassi, MatrixMatchesModelAndRejectsRegime) {
  const auto g = make_geometry({.s = "0", .n_d = 6, .n_c = 6});
  Rng rng(7);
  const Datacube f = testing::random_cube(rng, {6, 6, 3});
  const auto codes = generate_boolean_codes(6, 2, 3);
  const SensingMatrix h = assemble_cassi(codes, g, 3);
  EXPECT_LE(testing::rel_diff(as_vector(sense_cassi_baseline(f, codes, g)), h * f.values()), 1e-14);
  const auto le = make_geometry({.s = "0", .delta_c = "1", .delta_d = "2", .n_d = 4, .n_c = 8});
  EXPECT_THROW(sense_cassi_baseline(Datacube({4, 4, 2}), CodedApertureSet::all_open(8), le),
               WrongRegime);
}

}  // namespace
}  // namespace sscsi
