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

#include "sscsi/sensing_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sscsi/errors.hpp"
#include "sscsi/kernels.hpp"
#include "sscsi/parallel.hpp"

namespace sscsi {

namespace {

constexpr std::int64_t kIndexLimit = std::numeric_limits<std::int32_t>::max();

void build_csr(std::int64_t rows, std::vector<Triplet>& t, std::vector<std::int64_t>& ptr,
               std::vector<std::int32_t>& idx, std::vector<double>& val) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  idx.clear();
  val.clear();
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col) w += t[j++].weight;
    if (w != 0.0) {
      idx.push_back(static_cast<std::int32_t>(t[i].col));
      val.push_back(w);
      ++ptr[t[i].row + 1];
    }
    i = j;
  }
  for (std::int64_t r = 0; r < rows; ++r) ptr[r + 1] += ptr[r];
}

}  // namespace

SensingMatrix SensingMatrix::from_triplets(std::int64_t rows, std::int64_t cols, int shots,
                                           std::vector<Triplet> triplets, CubeDims cube,
                                           int detector_cols, std::uint64_t geometry_hash) {
  if (rows > kIndexLimit || cols > kIndexLimit)
    throw std::overflow_error("sensing matrix exceeds the 32-bit index space");
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw DimensionMismatch("triplet index out of range");
  SensingMatrix h;
  h.rows_ = rows;
  h.cols_ = cols;
  h.shots_ = shots;
  h.cube_ = cube;
  h.detector_cols_ = detector_cols;
  h.geometry_hash_ = geometry_hash;
  build_csr(rows, triplets, h.row_ptr_, h.col_, h.val_);
  for (Triplet& t : triplets) std::swap(t.row, t.col);
  build_csr(cols, triplets, h.t_ptr_, h.t_row_, h.t_val_);
  return h;
}

void SensingMatrix::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  const auto& k = kernels::active();
  parallel_chunks(0, rows_, [&](std::int64_t lo, std::int64_t hi, int) {
    k.csr_matvec(row_ptr_.data(), col_.data(), val_.data(), x.data(), y.data(), lo, hi);
  });
}

void SensingMatrix::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  const auto& k = kernels::active();
  parallel_chunks(0, cols_, [&](std::int64_t lo, std::int64_t hi, int) {
    k.csr_matvec(t_ptr_.data(), t_row_.data(), t_val_.data(), y.data(), x.data(), lo, hi);
  });
}

double SensingMatrix::at(std::int64_t r, std::int64_t c) const {
  const auto first = col_.begin() + row_ptr_[r];
  const auto last = col_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(c));
  return it != last && *it == c ? val_[it - col_.begin()] : 0.0;
}

std::vector<Triplet> SensingMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(val_.size());
  for (std::int64_t r = 0; r < rows_; ++r)
    for (std::int64_t j = row_ptr_[r]; j < row_ptr_[r + 1]; ++j) out.push_back({r, col_[j], val_[j]});
  return out;
}

SensingMatrix assemble(const CodedApertureSet& codes, const SystemGeometry& g,
                       const BandGrid& grid) {
  if (codes.n_c() != g.n_c()) throw DimensionMismatch("mask size does not match the geometry");
  const CubeDims dims = recovered_dims(g, grid);
  const int nd = g.n_d();
  const int bands = grid.count;
  const std::int64_t per_shot = static_cast<std::int64_t>(nd) * nd;
  const std::int64_t rows = per_shot * codes.shots();
  if (rows > kIndexLimit || dims.voxels() > kIndexLimit)
    throw std::overflow_error("sensing matrix exceeds the 32-bit index space");

  std::vector<std::vector<XTap>> taps(static_cast<std::size_t>(nd) * bands);
  for (int m = 0; m < nd; ++m)
    for (int k = 0; k < bands; ++k) taps[m * bands + k] = band_x_taps(m, k, g, grid, dims.nx);
  std::vector<std::vector<YTap>> ytaps(nd);
  for (int n = 0; n < nd; ++n) ytaps[n] = row_taps(n, g);

  // One bucket per (shot, detector row) keeps the output independent of threading.
  std::vector<std::vector<Triplet>> buckets(static_cast<std::size_t>(codes.shots()) * nd);
  parallel_for(0, static_cast<std::int64_t>(buckets.size()), [&](std::int64_t qm) {
    const int q = static_cast<int>(qm / nd);
    const int m = static_cast<int>(qm % nd);
    auto& out = buckets[qm];
    for (int n = 0; n < nd; ++n) {
      const std::int64_t row = q * per_shot + static_cast<std::int64_t>(m) * nd + n;
      for (int k = 0; k < bands; ++k)
        for (const XTap& xt : taps[m * bands + k])
          for (const YTap& yt : ytaps[n]) {
            if (codes.at(q, xt.code_x, yt.code_y) == 0) continue;
            const std::int64_t col = k * dims.plane() + xt.cube_x * dims.ny + yt.cube_y;
            out.push_back({row, col, xt.weight});
          }
    }
  });
  std::vector<Triplet> all;
  for (auto& b : buckets) all.insert(all.end(), b.begin(), b.end());
  return SensingMatrix::from_triplets(rows, dims.voxels(), codes.shots(), std::move(all), dims, nd,
                                      g.hash());
}

SensingMatrix assemble(const CodedApertureSet& codes, const SystemGeometry& g) {
  return assemble(codes, g, BandGrid::resolvable(g));
}

SensingMatrix assemble_cassi(const CodedApertureSet& codes, const SystemGeometry& g, int bands) {
  if (g.delta_c() != g.delta_d())
    throw WrongRegime("the CASSI baseline needs delta_c == delta_d");
  if (codes.n_c() != g.n_c()) throw DimensionMismatch("mask size does not match the geometry");
  if (bands < 1) throw std::invalid_argument("band count must be positive");
  const int nd = g.n_d();
  const int cols = nd + bands - 1;
  const CubeDims dims{nd, nd, bands};
  const std::int64_t per_shot = static_cast<std::int64_t>(nd) * cols;
  std::vector<Triplet> t;
  for (int q = 0; q < codes.shots(); ++q)
    for (int m = 0; m < nd; ++m)
      for (int n = 0; n < cols; ++n)
        for (int k = 0; k < bands; ++k) {
          const int y = n - k;
          if (y < 0 || y >= nd || codes.at(q, m, y) == 0) continue;
          t.push_back({q * per_shot + static_cast<std::int64_t>(m) * cols + n,
                       k * dims.plane() + static_cast<std::int64_t>(m) * nd + y, 1.0});
        }
  return SensingMatrix::from_triplets(per_shot * codes.shots(), dims.voxels(), codes.shots(),
                                      std::move(t), dims, cols, g.hash());
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume little-endian");

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw FormatError("truncated .ssm file");
  return v;
}

}  // namespace

void write_ssm(const std::string& path, const SensingMatrix& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write("SSM1", 4);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(h.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(h.cols()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(h.nnz()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(h.shots()));
  put<std::uint64_t>(out, h.geometry_hash());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(h.cube_dims().nx));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(h.cube_dims().ny));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(h.cube_dims().bands));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(h.detector_cols()));
  for (const Triplet& t : h.triplets()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.row));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(t.col));
    put<double>(out, t.weight);
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

SensingMatrix read_ssm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "SSM1", 4) != 0) throw FormatError("not an .ssm file");
  const auto rows = static_cast<std::int64_t>(get<std::uint64_t>(in));
  const auto cols = static_cast<std::int64_t>(get<std::uint64_t>(in));
  const auto nnz = get<std::uint64_t>(in);
  const auto shots = static_cast<int>(get<std::uint32_t>(in));
  const auto hash = get<std::uint64_t>(in);
  CubeDims dims;
  dims.nx = static_cast<int>(get<std::uint32_t>(in));
  dims.ny = static_cast<int>(get<std::uint32_t>(in));
  dims.bands = static_cast<int>(get<std::uint32_t>(in));
  const auto det_cols = static_cast<int>(get<std::uint32_t>(in));
  std::vector<Triplet> t(nnz);
  for (auto& e : t) {
    e.row = get<std::uint32_t>(in);
    e.col = get<std::uint32_t>(in);
    e.weight = get<double>(in);
  }
  return SensingMatrix::from_triplets(rows, cols, shots, std::move(t), dims, det_cols, hash);
}

}  // namespace sscsi
