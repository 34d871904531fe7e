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

#include <numeric>

#include "sscsi/coding.hpp"
#include "sscsi/errors.hpp"
#include "support/overlap_oracle.hpp"
#include "support/test_support.hpp"

namespace sscsi {
namespace {

using testing::make_geometry;
using testing::R;

TEST(BooleanCodes, SingleShotIsAllOpen) {
  const auto c = generate_boolean_codes(8, 1, 3);
  EXPECT_DOUBLE_EQ(c.transmittance(0), 1.0);
}

TEST(BooleanCodes, ShotsAreComplementary) {
  for (int q : {2, 3, 5}) {
    const auto c = generate_boolean_codes(16, q, 99);
    for (int x = 0; x < 16; ++x)
      for (int y = 0; y < 16; ++y) {
        int sum = 0;
        for (int k = 0; k < q; ++k) sum += c.at(k, x, y);
        EXPECT_EQ(sum, 1);
      }
  }
}

TEST(BooleanCodes, TransmittanceNearOneOverQ) {
  const auto c = generate_boolean_codes(8, 2, 5);
  // 64 fair coin flips: 4 sigma is 0.25.
  EXPECT_NEAR(c.transmittance(0), 0.5, 0.25);
  const auto big = generate_boolean_codes(128, 4, 5);
  for (int q = 0; q < 4; ++q) EXPECT_NEAR(big.transmittance(q), 0.25, 0.02);
}

TEST(BooleanCodes, DeterministicPerSeed) {
  EXPECT_EQ(generate_boolean_codes(16, 3, 7).mask(1), generate_boolean_codes(16, 3, 7).mask(1));
  EXPECT_NE(generate_boolean_codes(16, 3, 7).mask(1), generate_boolean_codes(16, 3, 8).mask(1));
  EXPECT_THROW(generate_boolean_codes(16, 0, 7), std::invalid_argument);
}

TEST(BooleanCodes, OutOfRangeReadsClosed) {
  const auto c = CodedApertureSet::all_open(4);
  EXPECT_EQ(c.at(0, 4, 0), 0);
  EXPECT_EQ(c.at(0, -1, 0), 0);
  EXPECT_EQ(c.at(0, 3, 3), 1);
}

TEST(RowBand, Examples) {
  const auto same = make_geometry({.s = "0"});
  EXPECT_EQ(row_band(5, same).first, 5);
  EXPECT_EQ(row_band(5, same).last, 5);
  const auto two = make_geometry({.delta_c = "1", .delta_d = "2", .n_d = 8, .n_c = 16});
  EXPECT_EQ(row_band(3, two).first, 6);
  EXPECT_EQ(row_band(3, two).last, 7);
  const auto four = make_geometry({.delta_c = "1", .delta_d = "4", .n_d = 8, .n_c = 32});
  EXPECT_EQ(row_band(0, four).first, 0);
  EXPECT_EQ(row_band(0, four).last, 3);
  EXPECT_THROW(row_band(0, make_geometry({.delta_c = "2", .delta_d = "1", .n_d = 16, .n_c = 8})),
               WrongRegime);
}

TEST(ColumnWeights, WorkedExample) {
  const auto g = make_geometry({.s = "0.2", .delta_c = "1", .delta_d = "2", .n_d = 8, .n_c = 16});
  const auto w = column_weights(0, g.lambda_min(), g);
  EXPECT_EQ(w.m_l, 0);
  EXPECT_EQ(w.m_r, 1);
  ASSERT_EQ(w.w.size(), 2u);
  EXPECT_DOUBLE_EQ(w.w[0], 1.0);
  EXPECT_DOUBLE_EQ(w.w[1], 0.6);
}

TEST(ColumnWeights, AlignedPitches) {
  const auto g = make_geometry({.s = "0"});
  for (int m = 0; m < 8; ++m) {
    const auto w = column_weights(m, g.lambda_min(), g);
    EXPECT_EQ(w.m_l, m);
    EXPECT_EQ(w.m_r, m);
    EXPECT_EQ(w.w, std::vector<double>{1.0});
  }
}

TEST(ColumnWeights, PartitionDetectorPixel) {
  const auto g = make_geometry({.s = "0.3", .delta_c = "1", .delta_d = "3", .n_d = 8, .n_c = 24});
  for (int m = 0; m < 8; ++m) {
    const auto w = column_weights(m, R("517.3"), g);
    const double cell = to_double(g.delta_c() / (1 - g.s()));
    EXPECT_NEAR(std::accumulate(w.w.begin(), w.w.end(), 0.0) * cell, 3.0, 1e-12);
    for (std::size_t i = 1; i + 1 < w.w.size(); ++i) EXPECT_EQ(w.w[i], 1.0);
  }
}

TEST(ColumnWeights, WrongRegimeAndRange) {
  const auto gt = make_geometry({.s = "0.18"});
  EXPECT_THROW(column_weights(0, gt.lambda_min(), gt), WrongRegime);
  const auto le = make_geometry({.s = "0.2", .delta_c = "1", .delta_d = "2", .n_d = 8, .n_c = 16});
  EXPECT_THROW(column_weights(0, R("399"), le), std::invalid_argument);
  EXPECT_THROW(effective_fraction(0, le.lambda_min(), le), WrongRegime);
}

TEST(EffectiveFraction, WorkedExamples) {
  const auto coarse = make_geometry({.s = "0", .delta_c = "2", .delta_d = "1", .n_d = 16, .n_c = 8});
  const auto e0 = effective_fraction(0, coarse.lambda_min(), coarse);
  EXPECT_EQ(e0.m_prime, 1);
  EXPECT_DOUBLE_EQ(e0.p, 1.0);

  const auto gt = make_geometry({.s = "0.18"});
  const auto e1 = effective_fraction(1, gt.lambda_min(), gt);
  EXPECT_EQ(e1.m_prime, 1);
  EXPECT_NEAR(e1.p, 1.0 / 0.82 - 1.0, 1e-15);
  EXPECT_NEAR(e1.p, 0.2195, 1e-4);
}

TEST(EffectiveFraction, FullShearAtSpectralPlane) {
  const auto g = make_geometry({.s = "1", .n_d = 8, .n_c = 8});
  const auto e = effective_fraction(3, R("450"), g);
  EXPECT_DOUBLE_EQ(e.p, 1.0);
}

class OverlapOracle : public ::testing::TestWithParam<Regime> {};

TEST_P(OverlapOracle, ClosedFormsMatchIntersection) {
  Rng rng(1234 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_geometry(rng, GetParam());
    const int m = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(g.n_d())));
    const Rational lambda = g.lambda_min() + g.spectral_range() * testing::random_fraction(rng, 0, 1000, 1000);
    if (GetParam() == Regime::kMagnifiedLE) {
      const auto w = column_weights(m, lambda, g);
      const auto ref = testing::oracle_cell_coverage(m, lambda, g);
      for (std::size_t i = 0; i < w.w.size(); ++i) {
        const auto it = ref.find(w.m_l + static_cast<std::int64_t>(i));
        const long double want = it == ref.end() ? 0.0L : it->second;
        EXPECT_NEAR(w.w[i], static_cast<double>(want), 1e-12) << g.canonical();
      }
      for (const auto& [cell, frac] : ref) {
        EXPECT_GE(cell, w.m_l);
        EXPECT_LE(cell, w.m_r);
      }
    } else {
      const auto e = effective_fraction(m, lambda, g);
      const auto ref = testing::oracle_pixel_coverage(m, lambda, g);
      const auto left = ref.find(e.m_prime - 1);
      const long double want = left == ref.end() ? 0.0L : left->second;
      EXPECT_NEAR(e.p, static_cast<double>(want), 1e-12) << g.canonical();
      for (const auto& [cell, frac] : ref) {
        EXPECT_TRUE(cell == e.m_prime - 1 || cell == e.m_prime) << cell;
        if (cell == e.m_prime) {
          EXPECT_NEAR(1.0 - e.p, static_cast<double>(frac), 1e-12);
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllRegimes, OverlapOracle,
                         ::testing::Values(Regime::kMagnifiedLE, Regime::kMagnifiedGT,
                                           Regime::kCoarseMask));

TEST(EffectivePattern, BandZeroMatchesWeights) {
  const auto g = make_geometry({.s = "0.2", .delta_c = "1", .delta_d = "2", .n_d = 8, .n_c = 16});
  const auto codes = generate_boolean_codes(16, 2, 4);
  for (int m = 0; m < 7; ++m) {
    const auto w = column_weights(m, g.lambda_min(), g);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.w.size(); ++i) {
      num += w.w[i] * codes.at(0, w.m_l + static_cast<std::int64_t>(i), 5);
      den += w.w[i];
    }
    EXPECT_DOUBLE_EQ(effective_pattern_for_band(codes, 0, 0, g, 5, m), num / den);
  }
}

TEST(EffectivePattern, AllOpenIsOne) {
  const auto g = make_geometry({.s = "0.18"});
  const auto codes = CodedApertureSet::all_open(8);
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 4; ++m) EXPECT_DOUBLE_EQ(effective_pattern_for_band(codes, 0, k, g, 2, m), 1.0);
}

TEST(EffectivePattern, CheckerboardSwapsWithShift) {
  const auto g = make_geometry({.s = "0.18"});
  std::vector<std::uint8_t> cells(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) cells[x * 8 + y] = static_cast<std::uint8_t>((x + y) % 2);
  const CodedApertureSet codes(8, {cells});
  for (int m = 1; m < 5; ++m) {
    const double k0 = effective_pattern_for_band(codes, 0, 0, g, 3, m);
    const double k1 = effective_pattern_for_band(codes, 0, 1, g, 3, m);
    EXPECT_NEAR(k0 + k1, 1.0, 1e-15);
  }
}

TEST(EffectivePattern, BandShiftEqualsShiftedMask) {
  const auto g = make_geometry({.s = "0.3", .delta_c = "1", .delta_d = "2", .n_d = 8, .n_c = 16});
  const auto codes = generate_boolean_codes(16, 2, 21);
  for (int k = 0; k < 4; ++k) {
    std::vector<std::uint8_t> shifted(256, 0);
    for (int x = 0; x + k < 16; ++x)
      for (int y = 0; y < 16; ++y) shifted[x * 16 + y] = static_cast<std::uint8_t>(codes.at(1, x + k, y));
    const CodedApertureSet moved(16, {shifted});
    for (int m = 0; m < 8; ++m)
      EXPECT_DOUBLE_EQ(effective_pattern_for_band(codes, 1, k, g, 9, m),
                       effective_pattern_for_band(moved, 0, 0, g, 9, m));
  }
}

TEST(Taps, IntersectionMatchesClosedFormForIntegerShifts) {
  Rng rng(77);
  for (Regime regime : {Regime::kMagnifiedLE, Regime::kMagnifiedGT, Regime::kCoarseMask}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = testing::random_geometry(rng, regime, 4, 10);
      if (g.s() == 0) continue;
      const BandGrid grid = BandGrid::resolvable(g);
      const CubeDims d = recovered_dims(g, grid);
      for (int m = 0; m < g.n_d(); ++m)
        for (int k = 0; k < std::min(grid.count, 3); ++k) {
          auto a = band_x_taps(m, k, g, grid, d.nx);
          auto b = x_taps_by_intersection(m, grid.mask_offset(g, k), g, d.nx);
          std::erase_if(b, [&](const XTap& t) { return t.code_x >= g.n_c(); });
          ASSERT_EQ(a.size(), b.size()) << g.canonical() << " m=" << m << " k=" << k;
          for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].cube_x, b[i].cube_x);
            EXPECT_EQ(a[i].code_x, b[i].code_x);
            EXPECT_NEAR(a[i].weight, b[i].weight, 1e-14);
          }
        }
    }
  }
}

}  // namespace
}  // namespace sscsi
