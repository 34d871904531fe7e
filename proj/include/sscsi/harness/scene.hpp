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

#include <string>
#include <utility>
#include <vector>

#include "sscsi/datacube.hpp"

namespace sscsi::harness {

enum class SceneKind { kSmooth, kSpiky, kChecker, kTarget };

const char* to_string(SceneKind kind);
/// Accepts "smooth", "spiky", "spiky-signature", "checker", "target".
SceneKind parse_scene_kind(const std::string& name);

struct SceneOptions {
  /// Checker square side in voxels; 0 picks max(1, nx / 8).
  int checker_block = 0;
};

/// Deterministic synthetic cube with values in [0, 1]. "smooth" is a soft union of
/// separable Gaussian bumps, each with its own smooth spectrum. Every kind is defined
/// on normalized coordinates and sampled at voxel centres, so different dims
/// show the same scene.
Datacube make_scene(SceneKind kind, CubeDims dims, const SceneOptions& opts = {});

/// Pixels carrying the three-peak signature in the spiky scene.
std::vector<std::pair<int, int>> spiky_probes(CubeDims dims);

/// Three-peak spectrum sampled at normalized wavelength w in [0, 1].
double three_peak_spectrum(double w);

/// Count of strict interior local maxima.
int count_local_maxima(const std::vector<double>& v);

}  // namespace sscsi::harness
