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


#include "sscsi/harness/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "sscsi/errors.hpp"
#include "sscsi/forward_model.hpp"
#include "sscsi/linear_operator.hpp"
#include "sscsi/metrics.hpp"
#include "sscsi/sensing_matrix.hpp"
#include "sscsi/sparsity.hpp"

namespace sscsi::harness {

namespace {

struct AxisWeights {
  // out cell o takes sum_j w[j] * in[first[o] + j]
  std::vector<int> first;
  std::vector<std::vector<double>> w;
};

AxisWeights axis_weights(int n_in, int n_out) {
  AxisWeights a;
  a.first.resize(n_out);
  a.w.resize(n_out);
  for (int o = 0; o < n_out; ++o) {
    // footprint [o / n_out, (o + 1) / n_out) in units of input cells
    const double lo = static_cast<double>(o) * n_in / n_out;
    const double hi = static_cast<double>(o + 1) * n_in / n_out;
    const int i0 = static_cast<int>(std::floor(lo));
    const int i1 = std::min(n_in - 1, static_cast<int>(std::ceil(hi)) - 1);
    a.first[o] = i0;
    for (int i = i0; i <= i1; ++i) {
      const double len = std::min<double>(hi, i + 1) - std::max<double>(lo, i);
      a.w[o].push_back(len / (hi - lo));
    }
  }
  return a;
}

}  // namespace

Datacube box_resample(const Datacube& cube, CubeDims target) {
  const CubeDims src = cube.dims();
  if (target.nx < 1 || target.ny < 1 || target.bands < 1)
    throw InvalidConfig("resample target dims must be positive");
  if (src == target) return cube;
  const AxisWeights wx = axis_weights(src.nx, target.nx);
  const AxisWeights wy = axis_weights(src.ny, target.ny);
  const AxisWeights wk = axis_weights(src.bands, target.bands);
  // bands, then x, then y
  Datacube a({src.nx, src.ny, target.bands});
  for (int k = 0; k < target.bands; ++k)
    for (std::size_t j = 0; j < wk.w[k].size(); ++j) {
      const int kin = wk.first[k] + static_cast<int>(j);
      for (int x = 0; x < src.nx; ++x)
        for (int y = 0; y < src.ny; ++y) a.at(x, y, k) += wk.w[k][j] * cube.at(x, y, kin);
    }
  Datacube b({target.nx, src.ny, target.bands});
  for (int k = 0; k < target.bands; ++k)
    for (int x = 0; x < target.nx; ++x)
      for (std::size_t j = 0; j < wx.w[x].size(); ++j) {
        const int xin = wx.first[x] + static_cast<int>(j);
        for (int y = 0; y < src.ny; ++y) b.at(x, y, k) += wx.w[x][j] * a.at(xin, y, k);
      }
  Datacube c(target);
  for (int k = 0; k < target.bands; ++k)
    for (int x = 0; x < target.nx; ++x)
      for (int y = 0; y < target.ny; ++y) {
        double s = 0.0;
        for (std::size_t j = 0; j < wy.w[y].size(); ++j) s += wy.w[y][j] * b.at(x, wy.first[y] + static_cast<int>(j), k);
        c.at(x, y, k) = s;
      }
  return c;
}

void add_noise(std::span<double> y, double snr_db, Rng& rng) {
  if (!std::isfinite(snr_db)) throw InvalidConfig("snr_db must be finite");
  if (y.empty()) return;
  double power = 0.0;
  for (double v : y) power += v * v;
  power /= static_cast<double>(y.size());
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  for (double& v : y) v += sigma * rng.normal();
}

namespace {

Reconstruction solve_and_score(const SensingMatrix& h, std::span<double> y, Datacube truth,
                               const ReconstructionOptions& opts, Rng& noise_rng) {
  if (opts.snr_db) add_noise(y, *opts.snr_db, noise_rng);
  const SparsityOperator psi(truth.dims(), opts.levels, true);
  const ProductOperator a(h, psi);
  const SolveReport rep = gpsr_solve(a, y, opts.solver);
  Reconstruction r;
  r.recovered = Datacube(truth.dims(), psi * std::span<const double>(rep.coeffs));
  r.truth = std::move(truth);
  r.psnr_db = psnr(r.truth, r.recovered);
  r.iterations = rep.iterations;
  r.converged = rep.converged;
  r.objective = rep.objective;
  return r;
}

}  // namespace

Reconstruction reconstruct_sscsi(const Datacube& scene, const SystemGeometry& g,
                                 const BandGrid& grid, const CodedApertureSet& codes,
                                 const ReconstructionOptions& opts, Rng& noise_rng) {
  Datacube truth = box_resample(scene, recovered_dims(g, grid));
  MeasurementSet y = sense(truth, codes, g, grid);
  const SensingMatrix h = assemble(codes, g, grid);
  return solve_and_score(h, y.values(), std::move(truth), opts, noise_rng);
}

Reconstruction reconstruct_cassi(const Datacube& scene, const SystemGeometry& g, int bands,
                                 const CodedApertureSet& codes, const ReconstructionOptions& opts,
                                 Rng& noise_rng) {
  Datacube truth = box_resample(scene, {g.n_d(), g.n_d(), bands});
  MeasurementSet y = sense_cassi_baseline(truth, codes, g);
  const SensingMatrix h = assemble_cassi(codes, g, bands);
  return solve_and_score(h, y.values(), std::move(truth), opts, noise_rng);
}

}  // namespace sscsi::harness
