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

#include "sscsi/forward_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sscsi/errors.hpp"
#include "sscsi/parallel.hpp"

namespace sscsi {

namespace {

void check_inputs(const Datacube& cube, const CodedApertureSet& codes, const SystemGeometry& g,
                  const BandGrid& grid) {
  const CubeDims want = recovered_dims(g, grid);
  const CubeDims got = cube.dims();
  if (!(want == got)) {
    throw DimensionMismatch("cube is " + std::to_string(got.nx) + "x" + std::to_string(got.ny) +
                            "x" + std::to_string(got.bands) + ", geometry expects " +
                            std::to_string(want.nx) + "x" + std::to_string(want.ny) + "x" +
                            std::to_string(want.bands));
  }
  if (codes.n_c() != g.n_c()) throw DimensionMismatch("mask size does not match the geometry");
  if (codes.shots() < 1) throw DimensionMismatch("no coded apertures");
}

}  // namespace

MeasurementSet sense(const Datacube& cube, const CodedApertureSet& codes, const SystemGeometry& g,
                     const BandGrid& grid) {
  check_inputs(cube, codes, g, grid);
  const int nd = g.n_d();
  const int bands = grid.count;
  const CubeDims dims = cube.dims();

  std::vector<std::vector<XTap>> taps(static_cast<std::size_t>(nd) * bands);
  for (int m = 0; m < nd; ++m)
    for (int k = 0; k < bands; ++k) taps[m * bands + k] = band_x_taps(m, k, g, grid, dims.nx);
  std::vector<std::vector<YTap>> rows(nd);
  for (int n = 0; n < nd; ++n) rows[n] = row_taps(n, g);

  MeasurementSet out(codes.shots(), nd, nd);
  parallel_for(0, static_cast<std::int64_t>(codes.shots()) * nd, [&](std::int64_t qm) {
    const int q = static_cast<int>(qm / nd);
    const int m = static_cast<int>(qm % nd);
    for (int n = 0; n < nd; ++n) {
      double acc = 0.0;
      for (int k = 0; k < bands; ++k) {
        for (const XTap& xt : taps[m * bands + k]) {
          for (const YTap& yt : rows[n]) {
            if (codes.at(q, xt.code_x, yt.code_y) == 0) continue;
            acc += xt.weight * cube.at(static_cast<int>(xt.cube_x), static_cast<int>(yt.cube_y), k);
          }
        }
      }
      out.at(q, m, n) = acc;
    }
  });
  return out;
}

MeasurementSet sense(const Datacube& cube, const CodedApertureSet& codes, const SystemGeometry& g) {
  return sense(cube, codes, g, BandGrid::resolvable(g));
}

namespace {

// Double-precision tap weights for detector column m at mask offset `offset`
// (um), accumulated into `w` laid out as [cube_x - cx0][code_x - c0].
struct TapBox {
  std::int64_t cx0 = 0, cx1 = -1;
  std::int64_t c0 = 0, c1 = -1;
  std::size_t size() const { return static_cast<std::size_t>((cx1 - cx0 + 1) * (c1 - c0 + 1)); }
  std::size_t at(std::int64_t cx, std::int64_t c) const {
    return static_cast<std::size_t>((cx - cx0) * (c1 - c0 + 1) + (c - c0));
  }
};

struct ShearContext {
  double one_minus_s, dc, dd;
  bool fine;
  int n_c;
  std::int64_t cube_nx;
};

void shear_taps(const ShearContext& c, const TapBox& box, int m, double offset,
                std::vector<double>& w) {
  std::fill(w.begin(), w.end(), 0.0);
  const double lo = m * c.dd * c.one_minus_s;
  const double hi = (m + 1) * c.dd * c.one_minus_s;
  auto add = [&](std::int64_t cube_x, double a, double b, double norm) {
    const auto k0 = static_cast<std::int64_t>(std::floor((a + offset) / c.dc));
    const auto k1 = static_cast<std::int64_t>(std::floor((b + offset) / c.dc));
    for (std::int64_t cell = k0; cell <= k1; ++cell) {
      if (cell < 0 || cell >= c.n_c || cell < box.c0 || cell > box.c1) continue;
      const double cell_lo = cell * c.dc - offset;
      const double len = std::min(b, cell_lo + c.dc) - std::max(a, cell_lo);
      if (len > 0.0) w[box.at(cube_x, cell)] += len / norm;
    }
  };
  if (c.fine) {
    for (std::int64_t j = box.cx0; j <= box.cx1; ++j) {
      const double a = std::max(lo, j * c.dc);
      const double b = std::min(hi, (j + 1) * c.dc);
      if (b > a) add(j, a, b, c.dc);
    }
  } else if (c.one_minus_s == 0.0) {
    const auto cell = static_cast<std::int64_t>(std::floor(offset / c.dc));
    if (cell >= 0 && cell < c.n_c && cell >= box.c0 && cell <= box.c1) w[box.at(m, cell)] = 1.0;
  } else {
    add(m, lo, hi, hi - lo);
  }
}

// Adaptive Simpson for vector-valued integrands; error is measured in max norm.
class VectorSimpson {
 public:
  VectorSimpson(std::function<void(double, std::vector<double>&)> f, std::size_t n, double tol)
      : f_(std::move(f)), n_(n), tol_(tol) {}

  std::vector<double> integrate(double a, double b) {
    std::vector<double> fa(n_), fm(n_), fb(n_), whole(n_), out(n_, 0.0);
    f_(a, fa);
    f_(0.5 * (a + b), fm);
    f_(b, fb);
    for (std::size_t i = 0; i < n_; ++i) whole[i] = (b - a) / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
    step(a, b, fa, fm, fb, whole, tol_, 48, out);
    return out;
  }

 private:
  void step(double a, double b, const std::vector<double>& fa, const std::vector<double>& fm,
            const std::vector<double>& fb, const std::vector<double>& whole, double tol, int depth,
            std::vector<double>& out) {
    const double mid = 0.5 * (a + b);
    std::vector<double> flm(n_), frm(n_), left(n_), right(n_);
    f_(0.5 * (a + mid), flm);
    f_(0.5 * (mid + b), frm);
    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      left[i] = (mid - a) / 6.0 * (fa[i] + 4.0 * flm[i] + fm[i]);
      right[i] = (b - mid) / 6.0 * (fm[i] + 4.0 * frm[i] + fb[i]);
      err = std::max(err, std::abs(left[i] + right[i] - whole[i]));
    }
    if (depth <= 0 || err <= 15.0 * tol) {
      for (std::size_t i = 0; i < n_; ++i)
        out[i] += left[i] + right[i] + (left[i] + right[i] - whole[i]) / 15.0;
      return;
    }
    step(a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    step(mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
  }

  std::function<void(double, std::vector<double>&)> f_;
  std::size_t n_;
  double tol_;
};

}  // namespace

MeasurementSet sense_exact_shear(const Datacube& cube, const CodedApertureSet& codes,
                                 const SystemGeometry& g, const BandGrid& grid, double rel_tol) {
  check_inputs(cube, codes, g, grid);
  const int nd = g.n_d();
  const int bands = grid.count;
  const CubeDims dims = cube.dims();
  const ShearContext ctx{1.0 - to_double(g.s()), to_double(g.delta_c()), to_double(g.delta_d()),
                         g.regime() == Regime::kMagnifiedLE, g.n_c(), dims.nx};
  const double s_alpha = to_double(g.s() * g.alpha());
  const double lmin = to_double(g.lambda_min());
  const double width = to_double(grid.width_nm);

  // Band-averaged tap weights per (m, k).
  std::vector<TapBox> boxes(static_cast<std::size_t>(nd) * bands);
  std::vector<std::vector<double>> weights(boxes.size());
  parallel_for(0, static_cast<std::int64_t>(boxes.size()), [&](std::int64_t idx) {
    const int m = static_cast<int>(idx / bands);
    const int k = static_cast<int>(idx % bands);
    const double l0 = to_double(grid.start(g, k));
    const double l1 = l0 + width;
    const double lo = m * ctx.dd * ctx.one_minus_s;
    const double hi = (m + 1) * ctx.dd * ctx.one_minus_s;
    TapBox box;
    if (ctx.fine) {
      box.cx0 = static_cast<std::int64_t>(std::floor(lo / ctx.dc));
      box.cx1 = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(hi / ctx.dc)),
                                       ctx.cube_nx - 1);
    } else {
      box.cx0 = box.cx1 = m;
    }
    box.c0 = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::floor((lo + s_alpha * (l0 - lmin)) / ctx.dc)) - 1);
    box.c1 = std::min<std::int64_t>(
        ctx.n_c - 1,
        static_cast<std::int64_t>(std::floor((hi + s_alpha * (l1 - lmin)) / ctx.dc)) + 1);
    if (box.c1 < box.c0 || box.cx1 < box.cx0) {
      boxes[idx] = box;
      return;
    }
    VectorSimpson quad(
        [&](double lambda, std::vector<double>& w) {
          shear_taps(ctx, box, m, s_alpha * (lambda - lmin), w);
        },
        box.size(), rel_tol * width);
    std::vector<double> avg = quad.integrate(l0, l1);
    for (double& v : avg) v /= width;
    boxes[idx] = box;
    weights[idx] = std::move(avg);
  });

  std::vector<std::vector<YTap>> rows(nd);
  for (int n = 0; n < nd; ++n) rows[n] = row_taps(n, g);

  MeasurementSet out(codes.shots(), nd, nd);
  parallel_for(0, static_cast<std::int64_t>(codes.shots()) * nd, [&](std::int64_t qm) {
    const int q = static_cast<int>(qm / nd);
    const int m = static_cast<int>(qm % nd);
    for (int n = 0; n < nd; ++n) {
      double acc = 0.0;
      for (int k = 0; k < bands; ++k) {
        const TapBox& box = boxes[m * bands + k];
        const std::vector<double>& w = weights[m * bands + k];
        if (w.empty()) continue;
        for (std::int64_t cx = box.cx0; cx <= box.cx1; ++cx) {
          for (std::int64_t c = box.c0; c <= box.c1; ++c) {
            const double wt = w[box.at(cx, c)];
            if (wt == 0.0) continue;
            for (const YTap& yt : rows[n]) {
              if (codes.at(q, c, yt.code_y) == 0) continue;
              acc += wt * cube.at(static_cast<int>(cx), static_cast<int>(yt.cube_y), k);
            }
          }
        }
      }
      out.at(q, m, n) = acc;
    }
  });
  return out;
}

MeasurementSet sense_continuous(const SceneFunction& scene, const CodedApertureSet& codes,
                                const SystemGeometry& g, const QuadratureSpec& spec) {
  if (codes.n_c() != g.n_c()) throw DimensionMismatch("mask size does not match the geometry");
  if (spec.x_sub < 1 || spec.y_sub < 1 || spec.lambda_sub < 1)
    throw std::invalid_argument("quadrature subdivisions must be positive");
  const int nd = g.n_d();
  const double one_minus_s = 1.0 - to_double(g.s());
  const double s_alpha = to_double(g.s() * g.alpha());
  const double dc = to_double(g.delta_c());
  const double dd = to_double(g.delta_d());
  const double lmin = to_double(g.lambda_min());
  const double l0 = spec.lambda_lo.value_or(lmin);
  const double l1 = spec.lambda_hi.value_or(to_double(g.lambda_max()));
  const double hx = dd / spec.x_sub;
  const double hy = dd / spec.y_sub;
  const double hl = (l1 - l0) / spec.lambda_sub;
  const double cell = hx * hy * hl;
  const int shots = codes.shots();

  MeasurementSet out(shots, nd, nd);
  parallel_for(0, static_cast<std::int64_t>(nd), [&](std::int64_t mi) {
    const int m = static_cast<int>(mi);
    std::vector<double> acc(static_cast<std::size_t>(shots));
    for (int n = 0; n < nd; ++n) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int ix = 0; ix < spec.x_sub; ++ix) {
        const double x = (m + (ix + 0.5) / spec.x_sub) * dd;
        for (int iy = 0; iy < spec.y_sub; ++iy) {
          const double y = (n + (iy + 0.5) / spec.y_sub) * dd;
          const auto code_y = static_cast<std::int64_t>(std::floor(y / dc));
          for (int il = 0; il < spec.lambda_sub; ++il) {
            const double lambda = l0 + (il + 0.5) * hl;
            const auto code_x = static_cast<std::int64_t>(
                std::floor((x * one_minus_s + s_alpha * (lambda - lmin)) / dc));
            const double f = scene(x, y, lambda);
            for (int q = 0; q < shots; ++q)
              if (codes.at(q, code_x, code_y)) acc[q] += f;
          }
        }
      }
      for (int q = 0; q < shots; ++q) out.at(q, m, n) = acc[q] * cell;
    }
  });
  return out;
}

Datacube discretize_scene(const SceneFunction& scene, const SystemGeometry& g,
                          const BandGrid& grid, const QuadratureSpec& spec) {
  if (spec.x_sub < 1 || spec.y_sub < 1 || spec.lambda_sub < 1)
    throw std::invalid_argument("quadrature subdivisions must be positive");
  const CubeDims dims = recovered_dims(g, grid);
  const double cw = to_double(cube_cell_width(g));
  const double ch = to_double(cube_cell_height(g));
  const double width = to_double(grid.width_nm);
  const double hx = cw / spec.x_sub;
  const double hy = ch / spec.y_sub;
  const double hl = width / spec.lambda_sub;
  Datacube cube(dims);
  parallel_for(0, static_cast<std::int64_t>(dims.bands) * dims.nx, [&](std::int64_t kx) {
    const int k = static_cast<int>(kx / dims.nx);
    const int x = static_cast<int>(kx % dims.nx);
    const double l0 = to_double(grid.start(g, k));
    for (int y = 0; y < dims.ny; ++y) {
      double acc = 0.0;
      for (int ix = 0; ix < spec.x_sub; ++ix) {
        const double xs = (x + (ix + 0.5) / spec.x_sub) * cw;
        for (int iy = 0; iy < spec.y_sub; ++iy) {
          const double ys = (y + (iy + 0.5) / spec.y_sub) * ch;
          for (int il = 0; il < spec.lambda_sub; ++il)
            acc += scene(xs, ys, l0 + (il + 0.5) * hl);
        }
      }
      cube.at(x, y, k) = acc * hx * hy * hl;
    }
  });
  return cube;
}

MeasurementSet sense_cassi_baseline(const Datacube& cube, const CodedApertureSet& codes,
                                    const SystemGeometry& g) {
  if (g.delta_c() != g.delta_d())
    throw WrongRegime("the CASSI baseline needs delta_c == delta_d");
  const CubeDims d = cube.dims();
  const int nd = g.n_d();
  if (d.nx != nd || d.ny != nd) throw DimensionMismatch("CASSI baseline needs an N_d x N_d cube");
  if (codes.n_c() != g.n_c()) throw DimensionMismatch("mask size does not match the geometry");
  const int cols = nd + d.bands - 1;
  MeasurementSet out(codes.shots(), nd, cols);
  for (int q = 0; q < codes.shots(); ++q) {
    for (int m = 0; m < nd; ++m) {
      for (int n = 0; n < cols; ++n) {
        double acc = 0.0;
        for (int k = 0; k < d.bands; ++k) {
          const int y = n - k;
          if (y < 0 || y >= nd) continue;
          if (codes.at(q, m, y)) acc += cube.at(m, y, k);
        }
        out.at(q, m, n) = acc;
      }
    }
  }
  return out;
}

}  // namespace sscsi
