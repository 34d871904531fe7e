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
#include <optional>
#include <string>

#include "sscsi/rational.hpp"

namespace sscsi {

/// Projection regime of one code cell onto the detector.
enum class Regime {
  kMagnifiedLE,  ///< delta_c <= delta_d and delta_c / (1 - s) <= delta_d
  kMagnifiedGT,  ///< delta_c <= delta_d and delta_c / (1 - s) > delta_d (s = 1 included)
  kCoarseMask,   ///< delta_c = C2 * delta_d with integer C2 > 1
};

const char* to_string(Regime regime);

/// Construction inputs. Exactly one of alpha / beta must be set.
struct GeometryParams {
  Rational s;
  Rational delta_c_um;
  Rational delta_d_um;
  int n_d = 0;
  int n_c = 0;
  Rational lambda_min_nm;
  Rational lambda_max_nm;
  std::optional<Rational> alpha;  ///< um per nm on the spectral plane
  std::optional<Rational> beta;   ///< spectral-plane width / mask width
};

/// Physical and discretization parameters of the imager. Immutable once built;
/// every derived quantity is evaluated exactly in rational arithmetic.
class SystemGeometry {
 public:
  /// Validates the invariants and throws InvalidGeometry on violation.
  static SystemGeometry create(const GeometryParams& params);

  const Rational& s() const { return s_; }
  const Rational& delta_c() const { return delta_c_; }
  const Rational& delta_d() const { return delta_d_; }
  int n_d() const { return n_d_; }
  int n_c() const { return n_c_; }
  const Rational& lambda_min() const { return lambda_min_; }
  const Rational& lambda_max() const { return lambda_max_; }
  const Rational& alpha() const { return alpha_; }
  Rational spectral_range() const { return lambda_max_ - lambda_min_; }
  /// alpha * |Lambda| / (delta_c * N_c).
  Rational beta() const;

  /// delta_d / delta_c when that is an integer >= 1, otherwise 1.
  int rows_per_detector() const { return fine_ratio_; }
  /// delta_c / delta_d when that is an integer > 1, otherwise 1.
  int detectors_per_cell() const { return coarse_ratio_; }

  Regime regime() const { return regime_; }

  /// Same geometry with a different mask position.
  SystemGeometry with_s(const Rational& s) const;

  GeometryParams params() const;
  /// Stable text form of every parameter (used for hashing and manifests).
  std::string canonical() const;
  std::uint64_t hash() const;

 private:
  SystemGeometry() = default;

  Rational s_, delta_c_, delta_d_, lambda_min_, lambda_max_, alpha_;
  int n_d_ = 0;
  int n_c_ = 0;
  int fine_ratio_ = 1;
  int coarse_ratio_ = 1;
  Regime regime_ = Regime::kMagnifiedGT;
};

/// Regime classification; throws InvalidGeometry for non-integer pitch ratios.
Regime classify_regime(const GeometryParams& params);
inline Regime classify_regime(const SystemGeometry& g) { return g.regime(); }

/// ceil(s * alpha * |Lambda| / delta_c). Throws DegenerateSpectral when s or
/// alpha is zero.
int band_count(const SystemGeometry& g);
/// The same count through beta: ceil(s * N_d / (delta_c / delta_d) * beta).
int band_count_from_beta(const SystemGeometry& g);

enum class ResolutionKind { kExact, kUpperBound };

struct SpectralResolution {
  double delta_lambda_nm = 0.0;
  ResolutionKind kind = ResolutionKind::kUpperBound;
};

/// delta_c / (s * alpha). Exact only in the fine regime when the partial-cell
/// overlap interval is no shorter, i.e. delta_d (1 - s) - delta_c >= delta_c.
SpectralResolution spectral_resolution(const SystemGeometry& g);
Rational spectral_resolution_exact(const SystemGeometry& g);

/// Spectral partition of the datacube. Band k covers
/// [lambda_min + k * width, lambda_min + (k + 1) * width].
struct BandGrid {
  int count = 1;
  Rational width_nm;

  /// Bands of width delta_c / (s alpha); adjacent bands are coded by the mask
  /// shifted by exactly one column. Degenerate geometries clamp to one band
  /// spanning the whole range.
  static BandGrid resolvable(const SystemGeometry& g);
  /// `count` equal bands covering the spectral range; the per-band mask shift
  /// is generally a fraction of a column.
  static BandGrid uniform(const SystemGeometry& g, int count);

  Rational start(const SystemGeometry& g, int k) const;
  /// Lateral displacement of band k on the mask plane, s * alpha * k * width (um).
  Rational mask_offset(const SystemGeometry& g, int k) const;
  /// mask_offset / delta_c: the band shift in code columns.
  Rational column_shift(const SystemGeometry& g, int k) const;
  /// True when every band shift is a whole number of columns.
  bool integer_shifts(const SystemGeometry& g) const;
};

struct CubeDims {
  int nx = 0;
  int ny = 0;
  int bands = 0;
  std::int64_t voxels() const {
    return static_cast<std::int64_t>(nx) * ny * bands;
  }
  std::int64_t plane() const { return static_cast<std::int64_t>(nx) * ny; }
  bool operator==(const CubeDims&) const = default;
};

/// Spatial size of the recoverable cube plus the resolvable band count
/// (clamped to 1 for degenerate spectral geometries).
CubeDims recovered_dims(const SystemGeometry& g);
CubeDims recovered_dims(const SystemGeometry& g, const BandGrid& grid);

/// Width of the cube cell along x in detector coordinates (um).
Rational cube_cell_width(const SystemGeometry& g);
/// Height of the cube cell along y (um).
Rational cube_cell_height(const SystemGeometry& g);

/// Spectral-plane width R1 = b d / (b + d) * theta.
double spectral_plane_width(double b_mm, double d_mm, double theta_rad);

}  // namespace sscsi
