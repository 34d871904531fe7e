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

#include "sscsi/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sscsi/errors.hpp"
#include "sscsi/kernels.hpp"
#include "sscsi/parallel.hpp"

namespace sscsi {

const char* to_string(CoherenceRoute route) {
  switch (route) {
    case CoherenceRoute::kAuto: return "auto";
    case CoherenceRoute::kDense: return "dense";
    case CoherenceRoute::kColumnwise: return "columnwise";
    case CoherenceRoute::kPointwise: return "pointwise";
  }
  return "unknown";
}

namespace {

struct Best {
  double value = -1.0;
  std::int64_t i = -1;
  std::int64_t j = -1;

  // Ties resolve to the lexicographically smallest pair so the result does
  // not depend on the visiting order.
  void offer(double v, std::int64_t a, std::int64_t b) {
    if (a > b) std::swap(a, b);
    if (v > value || (v == value && (a < i || (a == i && b < j)))) {
      value = v;
      i = a;
      j = b;
    }
  }
  void merge(const Best& o) {
    if (o.i >= 0) offer(o.value, o.i, o.j);
  }
};

// Marks zero columns and returns 1 / norm (0 for zero columns).
std::vector<double> inverse_norms(const std::vector<double>& norms, double zero_tol,
                                  std::int64_t& zeros) {
  const double top = *std::max_element(norms.begin(), norms.end());
  std::vector<double> inv(norms.size(), 0.0);
  zeros = 0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    if (top > 0.0 && norms[i] > zero_tol * top) {
      inv[i] = 1.0 / norms[i];
    } else {
      ++zeros;
    }
  }
  if (static_cast<std::int64_t>(norms.size()) - zeros < 2)
    throw DegenerateOperator("coherence needs at least two nonzero columns");
  return inv;
}

CoherenceReport finish(const Best& best, std::int64_t columns, std::int64_t zeros,
                       CoherenceRoute route) {
  CoherenceReport r;
  r.columns = columns;
  r.zero_columns = zeros;
  r.mu_nonzero = std::clamp(best.value, 0.0, 1.0);
  r.mu = zeros > 0 ? 1.0 : r.mu_nonzero;
  r.pair_i = best.i;
  r.pair_j = best.j;
  r.route = route;
  return r;
}

CoherenceReport dense_route(const LinearOperator& a, const CoherenceOptions& opts) {
  const std::int64_t rows = a.rows();
  const std::int64_t cols = a.cols();
  // Column-major copy so every column is contiguous.
  std::vector<double> cm(static_cast<std::size_t>(rows * cols));
  {
    std::vector<double> e(static_cast<std::size_t>(cols), 0.0);
    std::vector<double> col(static_cast<std::size_t>(rows));
    for (std::int64_t j = 0; j < cols; ++j) {
      e[j] = 1.0;
      a.apply(e, col);
      e[j] = 0.0;
      std::copy(col.begin(), col.end(), cm.begin() + j * rows);
    }
  }
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(rows);
  std::vector<double> norms(static_cast<std::size_t>(cols));
  for (std::int64_t j = 0; j < cols; ++j)
    norms[j] = std::sqrt(k.dot(cm.data() + j * rows, cm.data() + j * rows, n));
  std::int64_t zeros = 0;
  const std::vector<double> inv = inverse_norms(norms, opts.zero_tol, zeros);

  Best best;
  std::mutex mu;
  parallel_chunks(0, cols, [&](std::int64_t lo, std::int64_t hi, int) {
    Best local;
    for (std::int64_t i = lo; i < hi; ++i) {
      if (inv[i] == 0.0) continue;
      for (std::int64_t j = i + 1; j < cols; ++j) {
        if (inv[j] == 0.0) continue;
        const double g = k.dot(cm.data() + i * rows, cm.data() + j * rows, n);
        local.offer(std::abs(g) * inv[i] * inv[j], i, j);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    best.merge(local);
  });
  return finish(best, cols, zeros, CoherenceRoute::kDense);
}

CoherenceReport columnwise_route(const LinearOperator& a, const CoherenceOptions& opts) {
  const std::int64_t cols = a.cols();
  std::vector<double> e(static_cast<std::size_t>(cols), 0.0);
  std::vector<double> col(static_cast<std::size_t>(a.rows()));
  std::vector<double> gram(static_cast<std::size_t>(cols));
  const auto& k = kernels::active();
  std::vector<double> norms(static_cast<std::size_t>(cols));
  for (std::int64_t j = 0; j < cols; ++j) {
    e[j] = 1.0;
    a.apply(e, col);
    e[j] = 0.0;
    norms[j] = std::sqrt(k.dot(col.data(), col.data(), col.size()));
  }
  std::int64_t zeros = 0;
  const std::vector<double> inv = inverse_norms(norms, opts.zero_tol, zeros);
  Best best;
  for (std::int64_t i = 0; i < cols; ++i) {
    if (inv[i] == 0.0) continue;
    e[i] = 1.0;
    a.apply(e, col);
    e[i] = 0.0;
    a.apply_adjoint(col, gram);
    for (std::int64_t j = i + 1; j < cols; ++j)
      if (inv[j] != 0.0) best.offer(std::abs(gram[j]) * inv[i] * inv[j], i, j);
  }
  return finish(best, cols, zeros, CoherenceRoute::kColumnwise);
}

// With a pointwise H, column (j, p) of H Psi at shot q and pixel x is
// w_p(x) E_qj(x) where E_qj = sum_k T_qk c_j[k]. Hence
// <a_(j,p), a_(j',p')> = sum_x w_p(x) w_p'(x) R_jj'(x), R_jj' = sum_q E_qj E_qj',
// and one forward DWT of R_jj' * w_p yields a whole Gram row block.
CoherenceReport pointwise_route(const SensingMatrix& h, const SparsityOperator& psi,
                                const CoherenceOptions& opts) {
  const CubeDims d = h.cube_dims();
  const int bands = d.bands;
  const auto plane = static_cast<std::size_t>(d.plane());
  const int shots = h.shots();

  // T[q][k][pixel]
  std::vector<double> t(static_cast<std::size_t>(shots) * bands * plane, 0.0);
  for (std::int64_t r = 0; r < h.rows(); ++r) {
    const std::int64_t q = r / h.rows_per_shot();
    const std::int64_t pix = r % h.rows_per_shot();
    for (std::int64_t e = h.row_ptr()[r]; e < h.row_ptr()[r + 1]; ++e) {
      const std::int64_t c = h.col_index()[e];
      t[(q * bands + c / static_cast<std::int64_t>(plane)) * plane + pix] += h.values()[e];
    }
  }
  const std::vector<double>& dct = psi.dct();
  std::vector<double> ex(static_cast<std::size_t>(shots) * bands * plane, 0.0);
  for (int q = 0; q < shots; ++q)
    for (int j = 0; j < bands; ++j)
      for (int k = 0; k < bands; ++k) {
        const double c = dct[j * bands + k];
        const double* src = t.data() + (static_cast<std::size_t>(q) * bands + k) * plane;
        double* dst = ex.data() + (static_cast<std::size_t>(q) * bands + j) * plane;
        for (std::size_t x = 0; x < plane; ++x) dst[x] += c * src[x];
      }
  // R for j <= j', packed.
  auto pack = [bands](int j, int jp) { return j * bands - j * (j - 1) / 2 + (jp - j); };
  std::vector<double> r(static_cast<std::size_t>(bands) * (bands + 1) / 2 * plane, 0.0);
  for (int j = 0; j < bands; ++j)
    for (int jp = j; jp < bands; ++jp) {
      double* dst = r.data() + pack(j, jp) * plane;
      for (int q = 0; q < shots; ++q) {
        const double* a = ex.data() + (static_cast<std::size_t>(q) * bands + j) * plane;
        const double* b = ex.data() + (static_cast<std::size_t>(q) * bands + jp) * plane;
        for (std::size_t x = 0; x < plane; ++x) dst[x] += a[x] * b[x];
      }
    }

  const Dwt2D& dwt = psi.dwt();
  const auto np = static_cast<std::int64_t>(plane);
  std::vector<double> norms(static_cast<std::size_t>(bands) * plane);
  parallel_chunks(0, np, [&](std::int64_t lo, std::int64_t hi, int) {
    std::vector<double> w(plane);
    for (std::int64_t p = lo; p < hi; ++p) {
      std::fill(w.begin(), w.end(), 0.0);
      w[p] = 1.0;
      dwt.inverse(w);
      for (int j = 0; j < bands; ++j) {
        const double* rj = r.data() + pack(j, j) * plane;
        double acc = 0.0;
        for (std::size_t x = 0; x < plane; ++x) acc += w[x] * w[x] * rj[x];
        norms[j * plane + p] = std::sqrt(std::max(acc, 0.0));
      }
    }
  });
  std::int64_t zeros = 0;
  const std::vector<double> inv = inverse_norms(norms, opts.zero_tol, zeros);

  Best best;
  std::mutex mu;
  parallel_chunks(0, np, [&](std::int64_t lo, std::int64_t hi, int) {
    Best local;
    std::vector<double> w(plane), v(plane);
    for (std::int64_t p = lo; p < hi; ++p) {
      std::fill(w.begin(), w.end(), 0.0);
      w[p] = 1.0;
      dwt.inverse(w);
      for (int j = 0; j < bands; ++j) {
        const std::int64_t ci = j * np + p;
        if (inv[ci] == 0.0) continue;
        for (int jp = j; jp < bands; ++jp) {
          const double* rr = r.data() + pack(j, jp) * plane;
          for (std::size_t x = 0; x < plane; ++x) v[x] = rr[x] * w[x];
          dwt.forward(v);
          const std::int64_t start = jp == j ? p + 1 : 0;
          for (std::int64_t pp = start; pp < np; ++pp) {
            const std::int64_t cj = jp * np + pp;
            if (inv[cj] == 0.0) continue;
            local.offer(std::abs(v[pp]) * inv[ci] * inv[cj], ci, cj);
          }
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    best.merge(local);
  });
  return finish(best, static_cast<std::int64_t>(norms.size()), zeros, CoherenceRoute::kPointwise);
}

}  // namespace

bool is_pointwise(const SensingMatrix& h) {
  const CubeDims d = h.cube_dims();
  if (d.voxels() != h.cols() || h.rows_per_shot() != d.plane() || h.detector_cols() != d.ny)
    return false;
  for (std::int64_t r = 0; r < h.rows(); ++r) {
    const std::int64_t pix = r % h.rows_per_shot();
    for (std::int64_t e = h.row_ptr()[r]; e < h.row_ptr()[r + 1]; ++e)
      if (h.col_index()[e] % d.plane() != pix) return false;
  }
  return true;
}

CoherenceReport coherence(const LinearOperator& a, const CoherenceOptions& opts) {
  if (a.cols() < 2) throw DegenerateOperator("coherence needs at least two columns");
  CoherenceRoute route = opts.route;
  if (route == CoherenceRoute::kPointwise)
    throw std::invalid_argument("the pointwise route needs a sensing matrix and sparsity operator");
  if (route == CoherenceRoute::kAuto) {
    const double bytes = 8.0 * static_cast<double>(a.rows()) * static_cast<double>(a.cols());
    route = bytes <= static_cast<double>(opts.memory_budget_bytes) ? CoherenceRoute::kDense
                                                                   : CoherenceRoute::kColumnwise;
  }
  return route == CoherenceRoute::kDense ? dense_route(a, opts) : columnwise_route(a, opts);
}

CoherenceReport coherence(const SensingMatrix& h, const SparsityOperator& psi,
                          const CoherenceOptions& opts) {
  if (h.cols() != psi.rows()) throw DimensionMismatch("H and Psi do not conform");
  const bool pointwise_ok = psi.is_square() && is_pointwise(h);
  if (opts.route == CoherenceRoute::kPointwise && !pointwise_ok)
    throw std::invalid_argument("sensing matrix is not pointwise");
  if (opts.route == CoherenceRoute::kPointwise ||
      (opts.route == CoherenceRoute::kAuto && pointwise_ok))
    return pointwise_route(h, psi, opts);
  const ProductOperator a(h, psi);
  return coherence(a, opts);
}

}  // namespace sscsi
