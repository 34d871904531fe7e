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


#include "sscsi/harness/scene.hpp"

#include <algorithm>
#include <cmath>

#include "sscsi/errors.hpp"

namespace sscsi::harness {

const char* to_string(SceneKind kind) {
  switch (kind) {
    case SceneKind::kSmooth: return "smooth";
    case SceneKind::kSpiky: return "spiky";
    case SceneKind::kChecker: return "checker";
    case SceneKind::kTarget: return "target";
  }
  return "unknown";
}

SceneKind parse_scene_kind(const std::string& name) {
  if (name == "smooth") return SceneKind::kSmooth;
  if (name == "spiky" || name == "spiky-signature") return SceneKind::kSpiky;
  if (name == "checker") return SceneKind::kChecker;
  if (name == "target") return SceneKind::kTarget;
  throw InvalidConfig("unknown scene kind '" + name + "'");
}

namespace {

double bump(double t, double centre, double width) {
  const double d = (t - centre) / width;
  return std::exp(-0.5 * d * d);
}

// Spectral profiles, all within [0, 1].
double warm(double w) { return 0.25 + 0.75 * bump(w, 0.7, 0.25); }
double flat_ramp(double w) { return 0.35 + 0.3 * w; }

struct Bump {
  double u, v, width, amplitude, spectral_centre, spectral_width;
};

constexpr Bump kBumps[] = {
    {0.30, 0.35, 0.16, 0.9, 0.70, 0.25}, {0.72, 0.66, 0.10, 0.8, 0.25, 0.20},
    {0.20, 0.78, 0.07, 0.7, 0.50, 0.15}, {0.62, 0.22, 0.05, 0.9, 0.85, 0.20},
    {0.85, 0.45, 0.04, 0.8, 0.10, 0.30}, {0.45, 0.55, 0.03, 0.6, 0.40, 0.35},
};

double smooth_at(double u, double v, double w) {
  // soft union keeps the sum inside [0, 1]
  double dark = 1.0;
  for (const Bump& b : kBumps) {
    const double spectrum = 0.2 + 0.8 * bump(w, b.spectral_centre, b.spectral_width);
    dark *= 1.0 - b.amplitude * bump(u, b.u, b.width) * bump(v, b.v, b.width) * spectrum;
  }
  return 1.0 - dark;
}

double centre(int i, int n) { return (i + 0.5) / n; }

}  // namespace

double three_peak_spectrum(double w) {
  // peaks at 3/16, 9/16, 13/16 fall on band centres whenever L is a multiple of 8
  const double p = bump(w, 3.0 / 16, 0.045) + 0.8 * bump(w, 9.0 / 16, 0.045) +
                   0.9 * bump(w, 13.0 / 16, 0.045);
  return std::min(1.0, 0.08 + 0.9 * p);
}

std::vector<std::pair<int, int>> spiky_probes(CubeDims dims) {
  const auto at = [&](double fx, double fy) {
    return std::pair<int, int>{static_cast<int>(fx * dims.nx), static_cast<int>(fy * dims.ny)};
  };
  return {at(0.25, 0.3), at(0.7, 0.7), at(0.3, 0.75)};
}

int count_local_maxima(const std::vector<double>& v) {
  int n = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > v[i - 1] && v[i] > v[i + 1]) ++n;
  return n;
}

Datacube make_scene(SceneKind kind, CubeDims dims, const SceneOptions& opts) {
  if (dims.nx < 1 || dims.ny < 1 || dims.bands < 1) throw InvalidConfig("scene dims must be positive");
  Datacube cube(dims);
  const int block = opts.checker_block > 0 ? opts.checker_block : std::max(1, dims.nx / 8);
  const auto probes = spiky_probes(dims);
  // patch radius around each probe, normalized
  const double patch = 0.09;
  for (int k = 0; k < dims.bands; ++k) {
    const double w = centre(k, dims.bands);
    for (int x = 0; x < dims.nx; ++x) {
      const double u = centre(x, dims.nx);
      for (int y = 0; y < dims.ny; ++y) {
        const double v = centre(y, dims.ny);
        double val = 0.0;
        switch (kind) {
          case SceneKind::kSmooth:
            val = smooth_at(u, v, w);
            break;
          case SceneKind::kSpiky: {
            val = 0.5 * smooth_at(u, v, w) + 0.1 * flat_ramp(w);
            for (const auto& [px, py] : probes) {
              const double du = u - centre(px, dims.nx), dv = v - centre(py, dims.ny);
              const double r2 = (du * du + dv * dv) / (patch * patch);
              if (r2 < 1.0) {
                const double mix = std::exp(-2.0 * r2);
                val = (1.0 - mix) * val + mix * three_peak_spectrum(w);
              }
            }
            break;
          }
          case SceneKind::kChecker:
            val = ((x / block + y / block) % 2 == 0) ? 1.0 : 0.0;
            break;
          case SceneKind::kTarget: {
            // bar groups whose period shrinks from left to right
            const int group = std::min(3, static_cast<int>(u * 4));
            const double period = 0.125 / (1 << group);
            const bool vertical = v < 0.5;
            const double t = vertical ? u : v;
            const bool bar = std::fmod(t, period) < 0.5 * period;
            val = bar ? 0.9 * warm(w) : 0.1 * flat_ramp(w);
            break;
          }
        }
        cube.at(x, y, k) = val;
      }
    }
  }
  return cube;
}

}  // namespace sscsi::harness
