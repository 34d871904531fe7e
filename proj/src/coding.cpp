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

#include "sscsi/coding.hpp"

#include <algorithm>
#include <stdexcept>

#include "sscsi/errors.hpp"
#include "sscsi/random.hpp"

namespace sscsi {

CodedApertureSet::CodedApertureSet(int n_c, std::vector<std::vector<std::uint8_t>> masks,
                                   std::uint64_t seed)
    : n_c_(n_c), masks_(std::move(masks)), seed_(seed) {
  if (n_c <= 0) throw std::invalid_argument("mask size must be positive");
  for (const auto& m : masks_) {
    if (m.size() != static_cast<std::size_t>(n_c) * n_c)
      throw DimensionMismatch("mask has wrong number of cells");
    for (const auto v : m)
      if (v > 1) throw std::invalid_argument("mask entries must be 0 or 1");
  }
}

double CodedApertureSet::transmittance(int q) const {
  std::size_t open = 0;
  for (const auto v : masks_[q]) open += v;
  return static_cast<double>(open) / static_cast<double>(masks_[q].size());
}

CodedApertureSet CodedApertureSet::all_open(int n_c) {
  return CodedApertureSet(n_c, {std::vector<std::uint8_t>(static_cast<std::size_t>(n_c) * n_c, 1)});
}

CodedApertureSet generate_boolean_codes(int n_c, int shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be at least 1");
  if (n_c < 1) throw std::invalid_argument("mask size must be positive");
  const std::size_t cells = static_cast<std::size_t>(n_c) * n_c;
  std::vector<std::vector<std::uint8_t>> masks(shots, std::vector<std::uint8_t>(cells, 0));
  Rng rng = Rng(seed).split("boolean-codes");
  for (std::size_t i = 0; i < cells; ++i) {
    masks[rng.uniform_below(static_cast<std::uint64_t>(shots))][i] = 1;
  }
  return CodedApertureSet(n_c, std::move(masks), seed);
}

IndexRange row_band(int n, const SystemGeometry& g) {
  if (g.regime() == Regime::kCoarseMask)
    throw WrongRegime("row_band requires delta_d / delta_c to be an integer >= 1");
  const std::int64_t r = g.rows_per_detector();
  return {n * r, (n + 1) * r - 1};
}

namespace {

Rational mask_offset_for(const Rational& lambda_nm, const SystemGeometry& g) {
  if (lambda_nm < g.lambda_min() || lambda_nm > g.lambda_max())
    throw std::invalid_argument("wavelength outside the spectral range");
  return g.s() * g.alpha() * (lambda_nm - g.lambda_min());
}

OverlapWeights column_weights_at(int m, const Rational& offset, const SystemGeometry& g) {
  const Rational one_minus_s = 1 - g.s();
  const Rational a = g.delta_d() * m * one_minus_s + offset;
  const Rational b = g.delta_d() * (m + 1) * one_minus_s + offset;
  OverlapWeights out;
  out.m_l = floor_to_int(a / g.delta_c());
  // Half-open footprint: a pixel edge landing on a cell edge does not touch
  // the next cell.
  out.m_r = std::max(out.m_l, ceil_to_int(b / g.delta_c()) - 1);
  if (out.m_l == out.m_r) {
    out.w.push_back(to_double(g.delta_d() * one_minus_s / g.delta_c()));
    return out;
  }
  out.w.assign(static_cast<std::size_t>(out.m_r - out.m_l + 1), 1.0);
  out.w.front() = to_double(((out.m_l + 1) * g.delta_c() - a) / g.delta_c());
  out.w.back() = to_double((b - out.m_r * g.delta_c()) / g.delta_c());
  return out;
}

EffectiveFraction effective_fraction_at(int m, const Rational& offset, const SystemGeometry& g) {
  const Rational one_minus_s = 1 - g.s();
  EffectiveFraction out;
  out.m_prime = floor_to_int((g.delta_d() * m * one_minus_s + offset) / g.delta_c()) + 1;
  if (one_minus_s == 0) {
    out.p = 1.0;  // infinitely magnified cell covers the whole pixel
    return out;
  }
  const Rational boundary = (out.m_prime * g.delta_c() - offset) / one_minus_s;
  if (g.delta_d() * (m + 1) <= boundary) {
    out.p = 1.0;
  } else {
    out.p = to_double((boundary - g.delta_d() * m) / g.delta_d());
  }
  return out;
}

}  // namespace

OverlapWeights column_weights(int m, const Rational& lambda_nm, const SystemGeometry& g) {
  if (g.regime() != Regime::kMagnifiedLE)
    throw WrongRegime("column_weights applies only when delta_c / (1 - s) <= delta_d");
  return column_weights_at(m, mask_offset_for(lambda_nm, g), g);
}

EffectiveFraction effective_fraction(int m, const Rational& lambda_nm, const SystemGeometry& g) {
  if (g.regime() == Regime::kMagnifiedLE)
    throw WrongRegime("effective_fraction applies only when delta_c / (1 - s) > delta_d");
  return effective_fraction_at(m, mask_offset_for(lambda_nm, g), g);
}

std::vector<XTap> x_taps_by_intersection(int m, const Rational& offset, const SystemGeometry& g,
                                         int cube_nx) {
  std::vector<XTap> taps;
  const Rational one_minus_s = 1 - g.s();
  const Rational& dc = g.delta_c();
  // Work in mask-plane coordinates u = x (1 - s); mask cell c occupies
  // [c dc - offset, (c + 1) dc - offset].
  const Rational lo = g.delta_d() * m * one_minus_s;
  const Rational hi = g.delta_d() * (m + 1) * one_minus_s;

  auto add_code_cells = [&](std::int64_t cube_x, const Rational& a, const Rational& b,
                            const Rational& norm) {
    const std::int64_t c0 = floor_to_int((a + offset) / dc);
    const std::int64_t c1 = floor_to_int((b + offset) / dc);
    for (std::int64_t c = c0; c <= c1; ++c) {
      if (c < 0 || c >= g.n_c()) continue;
      const Rational cell_lo = c * dc - offset;
      const Rational len = min(b, cell_lo + dc) - max(a, cell_lo);
      if (len <= 0) continue;
      taps.push_back({cube_x, c, to_double(len / norm)});
    }
  };

  if (g.regime() == Regime::kMagnifiedLE) {
    const std::int64_t j0 = floor_to_int(lo / dc);
    const std::int64_t j1 = floor_to_int(hi / dc);
    for (std::int64_t j = j0; j <= j1 && j < cube_nx; ++j) {
      const Rational a = max(lo, j * dc);
      const Rational b = min(hi, (j + 1) * dc);
      if (b <= a) continue;
      add_code_cells(j, a, b, dc);
    }
    return taps;
  }
  if (one_minus_s == 0) {
    const std::int64_t c = floor_to_int(offset / dc);
    if (c >= 0 && c < g.n_c()) taps.push_back({m, c, 1.0});
    return taps;
  }
  add_code_cells(m, lo, hi, hi - lo);
  return taps;
}

std::vector<XTap> band_x_taps(int m, int k, const SystemGeometry& g, const BandGrid& grid,
                              int cube_nx) {
  if (!grid.integer_shifts(g)) {
    return x_taps_by_intersection(m, grid.mask_offset(g, k), g, cube_nx);
  }
  const std::int64_t shift = floor_to_int(grid.column_shift(g, k));
  std::vector<XTap> taps;
  if (g.regime() == Regime::kMagnifiedLE) {
    const OverlapWeights ow = column_weights_at(m, Rational(0), g);
    for (std::size_t i = 0; i < ow.w.size(); ++i) {
      const std::int64_t cube_x = ow.m_l + static_cast<std::int64_t>(i);
      const std::int64_t code_x = cube_x + shift;
      if (ow.w[i] <= 0.0 || cube_x >= cube_nx || code_x >= g.n_c()) continue;
      taps.push_back({cube_x, code_x, ow.w[i]});
    }
    return taps;
  }
  const EffectiveFraction ef = effective_fraction_at(m, Rational(0), g);
  const std::int64_t left = ef.m_prime - 1 + shift;
  if (ef.p > 0.0 && left < g.n_c()) taps.push_back({m, left, ef.p});
  const double right_w = 1.0 - ef.p;
  if (right_w > 0.0 && left + 1 < g.n_c()) taps.push_back({m, left + 1, right_w});
  return taps;
}

std::vector<YTap> row_taps(int n, const SystemGeometry& g) {
  if (g.regime() == Regime::kCoarseMask) {
    return {{n, n / g.detectors_per_cell()}};
  }
  const IndexRange r = row_band(n, g);
  std::vector<YTap> taps;
  for (std::int64_t y = r.first; y <= r.last; ++y) taps.push_back({y, y});
  return taps;
}

double effective_pattern_for_band(const CodedApertureSet& codes, int shot, int k,
                                  const SystemGeometry& g, int code_row, int m) {
  if (k < 0) throw std::invalid_argument("band index must be non-negative");
  if (g.regime() == Regime::kMagnifiedLE) {
    const OverlapWeights ow = column_weights_at(m, Rational(0), g);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ow.w.size(); ++i) {
      const std::int64_t x = ow.m_l + static_cast<std::int64_t>(i) + k;
      num += ow.w[i] * codes.at(shot, x, code_row);
      den += ow.w[i];
    }
    return den > 0.0 ? num / den : 0.0;
  }
  const EffectiveFraction ef = effective_fraction_at(m, Rational(0), g);
  return codes.at(shot, ef.m_prime - 1 + k, code_row) * ef.p +
         codes.at(shot, ef.m_prime + k, code_row) * (1.0 - ef.p);
}

}  // namespace sscsi
