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

#include <span>
#include <string>
#include <vector>

#include "sscsi/datacube.hpp"
#include "sscsi/geometry.hpp"

namespace sscsi {

/// 20 log10(max_I / sqrt(MSE)) with max_I the reference maximum. Identical
/// cubes give +infinity.
double psnr(const Datacube& reference, const Datacube& test);
std::vector<double> psnr_per_band(const Datacube& reference, const Datacube& test);

/// |Pearson r|. Throws std::domain_error when either input is constant.
double signature_correlation(std::span<const double> a, std::span<const double> b);

/// Q N_d^2 / (N_x N_y L).
double compression_ratio(int shots, const SystemGeometry& g, const BandGrid& grid);
double compression_ratio(int shots, const SystemGeometry& g);
/// Q nearest to the target ratio, at least 1.
int shots_for_ratio(double cr, const SystemGeometry& g, const BandGrid& grid);

/// "inf" for infinite values, shortest round-trip decimal otherwise.
std::string format_metric(double v);

}  // namespace sscsi
