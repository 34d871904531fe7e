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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sscsi/coding.hpp"
#include "sscsi/datacube.hpp"
#include "sscsi/geometry.hpp"
#include "sscsi/random.hpp"
#include "sscsi/rational.hpp"

namespace sscsi::testing {

inline Rational R(const std::string& text) { return parse_rational(text); }

struct GeometrySpec {
  std::string s = "0";
  std::string delta_c = "1";
  std::string delta_d = "1";
  int n_d = 8;
  int n_c = 8;
  std::string lambda_min = "400";
  std::string lambda_max = "700";
  std::optional<std::string> alpha;
  std::optional<std::string> beta = std::string("1");
};

inline SystemGeometry make_geometry(const GeometrySpec& spec) {
  GeometryParams p;
  p.s = R(spec.s);
  p.delta_c_um = R(spec.delta_c);
  p.delta_d_um = R(spec.delta_d);
  p.n_d = spec.n_d;
  p.n_c = spec.n_c;
  p.lambda_min_nm = R(spec.lambda_min);
  p.lambda_max_nm = R(spec.lambda_max);
  if (spec.alpha) {
    p.alpha = R(*spec.alpha);
  } else {
    p.beta = R(*spec.beta);
  }
  return SystemGeometry::create(p);
}

/// Rational a / b with b drawn from [1, max_den].
inline Rational random_fraction(Rng& rng, std::int64_t lo_num, std::int64_t hi_num,
                                std::int64_t den) {
  const auto span = static_cast<std::uint64_t>(hi_num - lo_num + 1);
  return Rational(lo_num + static_cast<std::int64_t>(rng.uniform_below(span))) / den;
}

/// Random valid geometry in the requested regime with N_d in [nd_lo, nd_hi].
inline SystemGeometry random_geometry(Rng& rng, Regime regime, int nd_lo = 4, int nd_hi = 16) {
  for (;;) {
    GeometryParams p;
    p.n_d = nd_lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(nd_hi - nd_lo + 1)));
    p.lambda_min_nm = random_fraction(rng, 400, 500, 1);
    p.lambda_max_nm = p.lambda_min_nm + random_fraction(rng, 50, 300, 1);
    const Rational unit = random_fraction(rng, 1, 40, 4);  // 0.25 .. 10 um
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng.uniform_below(997));
    if (regime == Regime::kCoarseMask) {
      const int c2 = 2 + static_cast<int>(rng.uniform_below(3));
      p.delta_d_um = unit;
      p.delta_c_um = unit * c2;
      if (p.n_d % c2 != 0) p.n_d += c2 - p.n_d % c2;
      p.n_c = p.n_d / c2;
      p.s = random_fraction(rng, 0, den, den);
    } else {
      const int r = 1 + static_cast<int>(rng.uniform_below(4));
      p.delta_c_um = unit;
      p.delta_d_um = unit * r;
      p.n_c = p.n_d * r;
      // LE needs s <= 1 - 1/r.
      const Rational edge = 1 - Rational(1, r);
      if (regime == Regime::kMagnifiedLE) {
        p.s = edge * random_fraction(rng, 0, den, den);
      } else {
        p.s = edge + (1 - edge) * random_fraction(rng, 1, den, den);
      }
    }
    p.beta = random_fraction(rng, 1, 40, 8);
    if (classify_regime(p) != regime) continue;
    return SystemGeometry::create(p);
  }
}

inline Datacube random_cube(Rng& rng, CubeDims dims) {
  Datacube c(dims);
  for (double& v : c.values()) v = rng.uniform();
  return c;
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
  return v;
}

inline double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace sscsi::testing
