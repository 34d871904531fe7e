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

#include <cstdint>
#include <vector>

#include "sscsi/geometry.hpp"

namespace sscsi {

/// Q binary masks of size N_c x N_c, indexed (shot, column x, row y).
class CodedApertureSet {
 public:
  CodedApertureSet() = default;
  /// `masks[q]` is row-major with x outer: masks[q][x * n_c + y].
  CodedApertureSet(int n_c, std::vector<std::vector<std::uint8_t>> masks, std::uint64_t seed = 0);

  int n_c() const { return n_c_; }
  int shots() const { return static_cast<int>(masks_.size()); }
  std::uint64_t seed() const { return seed_; }

  /// Transmission of cell (x, y) in shot q; cells outside the mask read 0.
  int at(int q, std::int64_t x, std::int64_t y) const {
    if (x < 0 || y < 0 || x >= n_c_ || y >= n_c_) return 0;
    return masks_[q][static_cast<std::size_t>(x) * n_c_ + static_cast<std::size_t>(y)];
  }
  const std::vector<std::uint8_t>& mask(int q) const { return masks_[q]; }
  double transmittance(int q) const;

  static CodedApertureSet all_open(int n_c);

 private:
  int n_c_ = 0;
  std::vector<std::vector<std::uint8_t>> masks_;
  std::uint64_t seed_ = 0;
};

/// Complementary ("boolean") random codes: every cell is open in exactly one
/// uniformly chosen shot.
CodedApertureSet generate_boolean_codes(int n_c, int shots, std::uint64_t seed);

struct IndexRange {
  std::int64_t first = 0;
  std::int64_t last = -1;  ///< inclusive
};

/// Mask rows n' overlapping detector row n: [n * r, (n + 1) * r - 1] with
/// r = delta_d / delta_c. Not defined for the coarse-mask regime.
IndexRange row_band(int n, const SystemGeometry& g);

/// Mask columns m_l..m_r feeding detector column m, with the fraction of each
/// projected cell that lands on the detector pixel.
struct OverlapWeights {
  std::int64_t m_l = 0;
  std::int64_t m_r = 0;
  std::vector<double> w;  ///< w[i] belongs to column m_l + i
};

/// Fine-regime overlap weights for a single wavelength. Throws WrongRegime
/// outside kMagnifiedLE.
OverlapWeights column_weights(int m, const Rational& lambda_nm, const SystemGeometry& g);

struct EffectiveFraction {
  std::int64_t m_prime = 0;
  double p = 0.0;  ///< share of the detector pixel under mask column m_prime - 1
};

/// Coarse-projection effective-code split for a single wavelength. Throws
/// WrongRegime in kMagnifiedLE.
EffectiveFraction effective_fraction(int m, const Rational& lambda_nm, const SystemGeometry& g);

/// One contribution along x to detector column m: cube column, mask column,
/// and the overlap weight (fraction of a cube cell in the fine regime, of the
/// detector pixel otherwise).
struct XTap {
  std::int64_t cube_x = 0;
  std::int64_t code_x = 0;
  double weight = 0.0;
};

/// Taps for band k of `grid`. Whole-column shifts use the closed forms above
/// with a +k column offset; fractional shifts intersect the detector pixel,
/// the cube cell and the displaced mask cells exactly. Taps that fall outside
/// the cube or the mask, or have zero weight, are omitted.
std::vector<XTap> band_x_taps(int m, int k, const SystemGeometry& g, const BandGrid& grid,
                              int cube_nx);

/// Exact interval-intersection taps for a mask displaced by `mask_offset_um`.
std::vector<XTap> x_taps_by_intersection(int m, const Rational& mask_offset_um,
                                         const SystemGeometry& g, int cube_nx);

struct YTap {
  std::int64_t cube_y = 0;
  std::int64_t code_y = 0;
};

/// Cube rows and mask rows seen by detector row n.
std::vector<YTap> row_taps(int n, const SystemGeometry& g);

/// Effective code for band k at detector column m and mask row `code_row`,
/// first-order model (lambda_min weights, mask shifted by k columns). For the
/// fine regime this is the overlap-weighted mean transmission.
double effective_pattern_for_band(const CodedApertureSet& codes, int shot, int k,
                                  const SystemGeometry& g, int code_row, int m);

}  // namespace sscsi
