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

#include <optional>
#include <span>

#include "sscsi/coding.hpp"
#include "sscsi/datacube.hpp"
#include "sscsi/geometry.hpp"
#include "sscsi/random.hpp"
#include "sscsi/solver.hpp"

namespace sscsi::harness {

/// Area-weighted box resampling on the unit cube: every output voxel is the
/// mean of the input over its footprint, so the mean (total energy per unit
/// volume) is preserved for any pair of dims.
Datacube box_resample(const Datacube& cube, CubeDims target);

/// Adds white Gaussian noise at the given SNR, 10 log10(mean(y^2) / sigma^2).
void add_noise(std::span<double> y, double snr_db, Rng& rng);

struct ReconstructionOptions {
  SolverConfig solver;
  int levels = 3;
  std::optional<double> snr_db;
};

struct Reconstruction {
  Datacube truth;
  Datacube recovered;
  double psnr_db = 0.0;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
};

/// Box-resamples `scene` to recovered_dims(g, grid), senses it, and solves
/// with A = H Psi.
Reconstruction reconstruct_sscsi(const Datacube& scene, const SystemGeometry& g,
                                 const BandGrid& grid, const CodedApertureSet& codes,
                                 const ReconstructionOptions& opts, Rng& noise_rng);

/// Same pipeline through the single-disperser CASSI baseline at N_d x N_d x bands.
Reconstruction reconstruct_cassi(const Datacube& scene, const SystemGeometry& g, int bands,
                                 const CodedApertureSet& codes, const ReconstructionOptions& opts,
                                 Rng& noise_rng);

}  // namespace sscsi::harness
