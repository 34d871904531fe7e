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

#include <functional>
#include <optional>

#include "sscsi/coding.hpp"
#include "sscsi/datacube.hpp"
#include "sscsi/geometry.hpp"

namespace sscsi {

/// First-order discrete sensing model. The cube must have dims
/// recovered_dims(g, grid); each detector frame is N_d x N_d.
MeasurementSet sense(const Datacube& cube, const CodedApertureSet& codes, const SystemGeometry& g,
                     const BandGrid& grid);
/// Same, on the resolvable band grid.
MeasurementSet sense(const Datacube& cube, const CodedApertureSet& codes, const SystemGeometry& g);

/// Verification oracle: integrates the continuously sheared mask across each
/// band (adaptive Simpson in lambda) instead of freezing it at the band start.
/// The result is the band-averaged response, so it coincides with sense() when
/// the mask does not move within a band.
MeasurementSet sense_exact_shear(const Datacube& cube, const CodedApertureSet& codes,
                                 const SystemGeometry& g, const BandGrid& grid,
                                 double rel_tol = 1e-11);

/// Scene radiance f(x_um, y_um, lambda_nm) in detector coordinates.
using SceneFunction = std::function<double(double, double, double)>;

/// Midpoint-rule resolution for the continuous integrators.
struct QuadratureSpec {
  int x_sub = 64;       ///< samples per detector pixel (or cube cell) along x
  int y_sub = 1;        ///< samples per detector pixel (or cube cell) along y
  int lambda_sub = 64;  ///< samples across the integration window in lambda
  std::optional<double> lambda_lo;  ///< window, defaults to the full range
  std::optional<double> lambda_hi;
};

/// Raw triple integral of T(x (1 - s) + s alpha (lambda - lambda_min), y)
/// f(x, y, lambda) over every detector pixel.
MeasurementSet sense_continuous(const SceneFunction& scene, const CodedApertureSet& codes,
                                const SystemGeometry& g, const QuadratureSpec& spec);

/// Integral of the scene over each cube cell (area x band width), i.e. the
/// discrete cube for which sense() approximates sense_continuous().
Datacube discretize_scene(const SceneFunction& scene, const SystemGeometry& g,
                          const BandGrid& grid, const QuadratureSpec& spec);

/// Single-disperser CASSI: the mask codes the in-focus image and band k is
/// sheared by k detector columns, g(m, n) = sum_k t(m, n - k) f(m, n - k, k).
/// Frames are N_d x (N_d + L - 1). Requires delta_c == delta_d and an
/// N_d x N_d spatial cube.
MeasurementSet sense_cassi_baseline(const Datacube& cube, const CodedApertureSet& codes,
                                    const SystemGeometry& g);

}  // namespace sscsi
