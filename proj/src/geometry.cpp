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

#include "sscsi/geometry.hpp"

#include <sstream>

#include "sscsi/errors.hpp"

namespace sscsi {

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kMagnifiedLE: return "magnified-le";
    case Regime::kMagnifiedGT: return "magnified-gt";
    case Regime::kCoarseMask: return "coarse-mask";
  }
  return "unknown";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidGeometry(what);
}

}  // namespace

Regime classify_regime(const GeometryParams& p) {
  require(p.delta_c_um > 0 && p.delta_d_um > 0, "pitches must be positive");
  require(p.s >= 0 && p.s <= 1, "s must lie in [0, 1]");
  if (p.delta_c_um > p.delta_d_um) {
    require(is_integer(p.delta_c_um / p.delta_d_um),
            "delta_c / delta_d must be an integer when the mask pitch is coarser");
    return Regime::kCoarseMask;
  }
  require(is_integer(p.delta_d_um / p.delta_c_um), "delta_d / delta_c must be an integer");
  if (p.s == 1) return Regime::kMagnifiedGT;
  return p.delta_c_um <= p.delta_d_um * (1 - p.s) ? Regime::kMagnifiedLE : Regime::kMagnifiedGT;
}

SystemGeometry SystemGeometry::create(const GeometryParams& p) {
  require(p.n_d > 0 && p.n_c > 0, "detector and mask sizes must be positive");
  require(p.lambda_max_nm > p.lambda_min_nm, "lambda_max must exceed lambda_min");
  require(p.alpha.has_value() != p.beta.has_value(), "exactly one of alpha or beta must be given");
  require(p.delta_c_um * p.n_c == p.delta_d_um * p.n_d,
          "mask and detector full widths must match (N_c * delta_c == N_d * delta_d)");

  SystemGeometry g;
  g.regime_ = classify_regime(p);
  g.s_ = p.s;
  g.delta_c_ = p.delta_c_um;
  g.delta_d_ = p.delta_d_um;
  g.n_d_ = p.n_d;
  g.n_c_ = p.n_c;
  g.lambda_min_ = p.lambda_min_nm;
  g.lambda_max_ = p.lambda_max_nm;
  if (p.alpha) {
    require(*p.alpha >= 0, "alpha must be non-negative");
    g.alpha_ = *p.alpha;
  } else {
    require(*p.beta >= 0, "beta must be non-negative");
    g.alpha_ = *p.beta * p.delta_c_um * p.n_c / (p.lambda_max_nm - p.lambda_min_nm);
  }
  if (g.regime_ == Regime::kCoarseMask) {
    g.coarse_ratio_ = static_cast<int>(floor_to_int(g.delta_c_ / g.delta_d_));
  } else {
    g.fine_ratio_ = static_cast<int>(floor_to_int(g.delta_d_ / g.delta_c_));
  }
  return g;
}

Rational SystemGeometry::beta() const {
  return alpha_ * spectral_range() / (delta_c_ * n_c_);
}

SystemGeometry SystemGeometry::with_s(const Rational& s) const {
  GeometryParams p = params();
  p.s = s;
  return create(p);
}

GeometryParams SystemGeometry::params() const {
  GeometryParams p;
  p.s = s_;
  p.delta_c_um = delta_c_;
  p.delta_d_um = delta_d_;
  p.n_d = n_d_;
  p.n_c = n_c_;
  p.lambda_min_nm = lambda_min_;
  p.lambda_max_nm = lambda_max_;
  p.alpha = alpha_;
  return p;
}

std::string SystemGeometry::canonical() const {
  std::ostringstream out;
  out << "s=" << to_string(s_) << ";delta_c_um=" << to_string(delta_c_)
      << ";delta_d_um=" << to_string(delta_d_) << ";n_d=" << n_d_ << ";n_c=" << n_c_
      << ";lambda_min_nm=" << to_string(lambda_min_) << ";lambda_max_nm=" << to_string(lambda_max_)
      << ";alpha=" << to_string(alpha_);
  return out.str();
}

std::uint64_t SystemGeometry::hash() const {
  // FNV-1a 64
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int band_count(const SystemGeometry& g) {
  if (g.s() == 0 || g.alpha() == 0)
    throw DegenerateSpectral("no dispersion at the mask (s = 0 or alpha = 0): band count is zero");
  return static_cast<int>(ceil_to_int(g.s() * g.alpha() * g.spectral_range() / g.delta_c()));
}

int band_count_from_beta(const SystemGeometry& g) {
  if (g.s() == 0 || g.alpha() == 0)
    throw DegenerateSpectral("no dispersion at the mask (s = 0 or alpha = 0): band count is zero");
  const Rational pitch_ratio = g.delta_c() / g.delta_d();
  return static_cast<int>(ceil_to_int(g.s() * (Rational(g.n_d()) / pitch_ratio) * g.beta()));
}

Rational spectral_resolution_exact(const SystemGeometry& g) {
  if (g.s() == 0 || g.alpha() == 0)
    throw DegenerateSpectral("spectral resolution undefined without dispersion");
  return g.delta_c() / (g.s() * g.alpha());
}

SpectralResolution spectral_resolution(const SystemGeometry& g) {
  SpectralResolution r;
  r.delta_lambda_nm = to_double(spectral_resolution_exact(g));
  const bool exact = g.regime() == Regime::kMagnifiedLE &&
                     g.delta_d() * (1 - g.s()) - g.delta_c() >= g.delta_c();
  r.kind = exact ? ResolutionKind::kExact : ResolutionKind::kUpperBound;
  return r;
}

BandGrid BandGrid::resolvable(const SystemGeometry& g) {
  BandGrid grid;
  if (g.s() == 0 || g.alpha() == 0) {
    grid.count = 1;
    grid.width_nm = g.spectral_range();
    return grid;
  }
  grid.count = band_count(g);
  grid.width_nm = spectral_resolution_exact(g);
  return grid;
}

BandGrid BandGrid::uniform(const SystemGeometry& g, int count) {
  if (count < 1) throw InvalidGeometry("band count must be positive");
  BandGrid grid;
  grid.count = count;
  grid.width_nm = g.spectral_range() / count;
  return grid;
}

Rational BandGrid::start(const SystemGeometry& g, int k) const {
  return g.lambda_min() + width_nm * k;
}

Rational BandGrid::mask_offset(const SystemGeometry& g, int k) const {
  return g.s() * g.alpha() * width_nm * k;
}

Rational BandGrid::column_shift(const SystemGeometry& g, int k) const {
  return mask_offset(g, k) / g.delta_c();
}

bool BandGrid::integer_shifts(const SystemGeometry& g) const {
  return count == 1 || is_integer(column_shift(g, 1));
}

CubeDims recovered_dims(const SystemGeometry& g, const BandGrid& grid) {
  CubeDims d;
  d.bands = grid.count;
  switch (g.regime()) {
    case Regime::kMagnifiedLE:
      d.nx = static_cast<int>(ceil_to_int(g.delta_d() * g.n_d() * (1 - g.s()) / g.delta_c()));
      d.ny = g.n_d() * g.rows_per_detector();
      break;
    case Regime::kMagnifiedGT:
      d.nx = g.n_d();
      d.ny = g.n_d() * g.rows_per_detector();
      break;
    case Regime::kCoarseMask:
      d.nx = g.n_d();
      d.ny = g.n_d();
      break;
  }
  return d;
}

CubeDims recovered_dims(const SystemGeometry& g) {
  return recovered_dims(g, BandGrid::resolvable(g));
}

Rational cube_cell_width(const SystemGeometry& g) {
  if (g.regime() == Regime::kMagnifiedLE) return g.delta_c() / (1 - g.s());
  return g.delta_d();
}

Rational cube_cell_height(const SystemGeometry& g) {
  if (g.regime() == Regime::kCoarseMask) return g.delta_d();
  return g.delta_c();
}

double spectral_plane_width(double b_mm, double d_mm, double theta_rad) {
  if (!(b_mm > 0) || !(d_mm > 0)) throw InvalidGeometry("distances must be positive");
  return b_mm * d_mm / (b_mm + d_mm) * theta_rad;
}

}  // namespace sscsi
