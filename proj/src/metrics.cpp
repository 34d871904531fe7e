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

#include "sscsi/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sscsi/errors.hpp"

namespace sscsi {

namespace {

double psnr_of(std::span<const double> ref, std::span<const double> test, double peak) {
  if (!(peak > 0.0)) throw std::domain_error("reference maximum must be positive");
  double se = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref[i] - test[i];
    se += d * d;
  }
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = se / static_cast<double>(ref.size());
  return 20.0 * std::log10(peak / std::sqrt(mse));
}

void check_same(const Datacube& a, const Datacube& b) {
  if (!(a.dims() == b.dims())) throw DimensionMismatch("cubes differ in shape");
  if (a.size() == 0) throw DimensionMismatch("empty cube");
}

}  // namespace

double psnr(const Datacube& reference, const Datacube& test) {
  check_same(reference, test);
  const auto v = reference.values();
  return psnr_of(v, test.values(), *std::max_element(v.begin(), v.end()));
}

std::vector<double> psnr_per_band(const Datacube& reference, const Datacube& test) {
  check_same(reference, test);
  const auto v = reference.values();
  const double peak = *std::max_element(v.begin(), v.end());
  std::vector<double> out;
  for (int k = 0; k < reference.dims().bands; ++k)
    out.push_back(psnr_of(reference.band(k), test.band(k), peak));
  return out;
}

double signature_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("signatures differ in length");
  if (a.size() < 2) throw std::domain_error("correlation needs at least two samples");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw std::domain_error("correlation undefined for a constant signature");
  return std::min(1.0, std::abs(sab) / std::sqrt(saa * sbb));
}

double compression_ratio(int shots, const SystemGeometry& g, const BandGrid& grid) {
  if (shots < 0) throw std::invalid_argument("shot count must be non-negative");
  const CubeDims d = recovered_dims(g, grid);
  return static_cast<double>(shots) * g.n_d() * g.n_d() / static_cast<double>(d.voxels());
}

double compression_ratio(int shots, const SystemGeometry& g) {
  return compression_ratio(shots, g, BandGrid::resolvable(g));
}

int shots_for_ratio(double cr, const SystemGeometry& g, const BandGrid& grid) {
  if (!(cr > 0.0)) throw std::invalid_argument("compression ratio must be positive");
  const CubeDims d = recovered_dims(g, grid);
  const double per_shot = static_cast<double>(g.n_d()) * g.n_d() / static_cast<double>(d.voxels());
  return std::max(1, static_cast<int>(std::lround(cr / per_shot)));
}

std::string format_metric(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace sscsi
