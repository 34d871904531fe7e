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

#include "sscsi/sparsity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sscsi/errors.hpp"
#include "sscsi/kernels.hpp"
#include "sscsi/parallel.hpp"

namespace sscsi {

namespace {

// Symlet-8 decomposition low-pass, 16 taps. The usual 16-digit table is off
// by ~1e-12 in the orthogonality conditions; these values were refined by
// Newton iteration on the orthonormality and vanishing-moment equations.
constexpr std::array<double, 16> kSym8 = {
    -0.0033824159510050025955, -0.00054213233180001068935, 0.031695087811525991431,
    0.0076074873249766081919,  -0.14329423835127266284,    -0.061273359067811077843,
    0.48135965125905339159,    0.77718575169962802862,     0.36444189483617893676,
    -0.051945838107881800736,  -0.027219029917103486322,   0.049137179673730286787,
    0.0038087520138944894631,  -0.014952258337062199118,   -0.00030292051472413308126,
    0.0018899503327676891843};

WaveletFilter make_symlet8() {
  WaveletFilter f;
  f.lo.assign(kSym8.begin(), kSym8.end());
  double e = 0.0;
  for (double v : f.lo) e += v * v;
  const double scale = 1.0 / std::sqrt(e);
  for (double& v : f.lo) v *= scale;
  const std::size_t n = f.lo.size();
  f.hi.resize(n);
  for (std::size_t t = 0; t < n; ++t) f.hi[t] = (t % 2 == 0 ? 1.0 : -1.0) * f.lo[n - 1 - t];
  validate_qmf(f);
  return f;
}

}  // namespace

const WaveletFilter& symlet8() {
  static const WaveletFilter f = make_symlet8();
  return f;
}

void validate_qmf(const WaveletFilter& f, double tol) {
  const std::size_t n = f.lo.size();
  if (n == 0 || n % 2 != 0 || f.hi.size() != n)
    throw std::logic_error("wavelet filters must have equal even length");
  double sum = 0.0;
  for (double v : f.lo) sum += v;
  if (std::abs(sum - std::numbers::sqrt2) > tol)
    throw std::logic_error("low-pass filter does not sum to sqrt(2)");
  for (std::size_t k = 0; 2 * k < n; ++k) {
    double acc = 0.0;
    for (std::size_t t = 2 * k; t < n; ++t) acc += f.lo[t] * f.lo[t - 2 * k];
    const double want = k == 0 ? 1.0 : 0.0;
    if (std::abs(acc - want) > tol)
      throw std::logic_error("low-pass filter fails even-shift orthogonality at shift " +
                             std::to_string(2 * k));
  }
  for (std::size_t t = 0; t < n; ++t) {
    const double want = (t % 2 == 0 ? 1.0 : -1.0) * f.lo[n - 1 - t];
    if (std::abs(f.hi[t] - want) > tol) throw std::logic_error("high-pass is not the QMF mirror");
  }
}

std::vector<double> dct_matrix(int n) {
  if (n < 1) throw std::invalid_argument("DCT length must be positive");
  std::vector<double> c(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    const double s = std::sqrt((j == 0 ? 1.0 : 2.0) / n);
    for (int k = 0; k < n; ++k)
      c[j * n + k] = s * std::cos(std::numbers::pi * (2 * k + 1) * j / (2.0 * n));
  }
  return c;
}

Dwt2D::Dwt2D(int nx, int ny, int levels, const WaveletFilter& filter)
    : nx_(nx), ny_(ny), levels_(levels), filter_(filter) {
  if (levels < 0) throw std::invalid_argument("wavelet depth must be non-negative");
  if (nx < 1 || ny < 1) throw DimensionMismatch("wavelet plane must be non-empty");
  const int block = 1 << levels;
  if (nx % block != 0 || ny % block != 0)
    throw DimensionMismatch("plane " + std::to_string(nx) + "x" + std::to_string(ny) +
                            " is not divisible by 2^" + std::to_string(levels));
}

// Transform along the outer axis: `rows` rows of `cols` contiguous values at
// `stride`, each output row a sum of filter-weighted input rows.
void Dwt2D::analyze_rows(double* data, int rows, int cols, int stride, double* scratch) const {
  const auto& k = kernels::active();
  const int half = rows / 2;
  const int taps = static_cast<int>(filter_.lo.size());
  const auto width = static_cast<std::size_t>(cols);
  for (int i = 0; i < rows; ++i) std::fill(scratch + i * width, scratch + (i + 1) * width, 0.0);
  for (int i = 0; i < half; ++i) {
    double* lo = scratch + i * width;
    double* hi = scratch + (half + i) * width;
    for (int t = 0; t < taps; ++t) {
      const double* src = data + static_cast<std::size_t>((2 * i + t) % rows) * stride;
      k.axpy(filter_.lo[t], src, lo, width);
      k.axpy(filter_.hi[t], src, hi, width);
    }
  }
  for (int i = 0; i < rows; ++i)
    std::copy(scratch + i * width, scratch + (i + 1) * width,
              data + static_cast<std::size_t>(i) * stride);
}

void Dwt2D::synthesize_rows(double* data, int rows, int cols, int stride, double* scratch) const {
  const auto& k = kernels::active();
  const int half = rows / 2;
  const int taps = static_cast<int>(filter_.lo.size());
  const auto width = static_cast<std::size_t>(cols);
  for (int i = 0; i < rows; ++i) std::fill(scratch + i * width, scratch + (i + 1) * width, 0.0);
  for (int i = 0; i < half; ++i) {
    const double* lo = data + static_cast<std::size_t>(i) * stride;
    const double* hi = data + static_cast<std::size_t>(half + i) * stride;
    for (int t = 0; t < taps; ++t) {
      double* dst = scratch + static_cast<std::size_t>((2 * i + t) % rows) * width;
      k.axpy(filter_.lo[t], lo, dst, width);
      k.axpy(filter_.hi[t], hi, dst, width);
    }
  }
  for (int i = 0; i < rows; ++i)
    std::copy(scratch + i * width, scratch + (i + 1) * width,
              data + static_cast<std::size_t>(i) * stride);
}

namespace {

void transpose(const double* src, int rows, int cols, int src_stride, double* dst, int dst_stride) {
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) dst[j * dst_stride + i] = src[i * src_stride + j];
}

}  // namespace

void Dwt2D::forward(std::span<double> plane) const {
  if (static_cast<std::int64_t>(plane.size()) != static_cast<std::int64_t>(nx_) * ny_)
    throw DimensionMismatch("plane has the wrong size");
  const std::size_t n = plane.size();
  std::vector<double> scratch(n), t(n);
  int rx = nx_;
  int ry = ny_;
  for (int level = 0; level < levels_; ++level) {
    analyze_rows(plane.data(), rx, ry, ny_, scratch.data());
    transpose(plane.data(), rx, ry, ny_, t.data(), rx);
    analyze_rows(t.data(), ry, rx, rx, scratch.data());
    transpose(t.data(), ry, rx, rx, plane.data(), ny_);
    rx /= 2;
    ry /= 2;
  }
}

void Dwt2D::inverse(std::span<double> plane) const {
  if (static_cast<std::int64_t>(plane.size()) != static_cast<std::int64_t>(nx_) * ny_)
    throw DimensionMismatch("plane has the wrong size");
  const std::size_t n = plane.size();
  std::vector<double> scratch(n), t(n);
  for (int level = levels_ - 1; level >= 0; --level) {
    const int rx = nx_ >> level;
    const int ry = ny_ >> level;
    transpose(plane.data(), rx, ry, ny_, t.data(), rx);
    synthesize_rows(t.data(), ry, rx, rx, scratch.data());
    transpose(t.data(), ry, rx, rx, plane.data(), ny_);
    synthesize_rows(plane.data(), rx, ry, ny_, scratch.data());
  }
}

namespace {

CubeDims pad_dims(const CubeDims& d, int levels, bool allow_padding) {
  if (levels < 0) throw std::invalid_argument("wavelet depth must be non-negative");
  const int block = 1 << levels;
  if (d.nx % block == 0 && d.ny % block == 0) return d;
  if (!allow_padding)
    throw DimensionMismatch("spatial dims " + std::to_string(d.nx) + "x" + std::to_string(d.ny) +
                            " are not divisible by 2^" + std::to_string(levels));
  return {(d.nx + block - 1) / block * block, (d.ny + block - 1) / block * block, d.bands};
}

}  // namespace

SparsityOperator::SparsityOperator(CubeDims cube, int levels, bool allow_padding)
    : cube_(cube),
      padded_(pad_dims(cube, levels, allow_padding)),
      levels_(levels),
      dwt_(padded_.nx, padded_.ny, levels),
      dct_(dct_matrix(cube.bands)) {}

void SparsityOperator::apply(std::span<const double> coeffs, std::span<double> cube) const {
  check_apply(coeffs, cube);
  const int bands = padded_.bands;
  const auto plane = static_cast<std::size_t>(padded_.plane());
  const auto& k = kernels::active();
  std::vector<double> work(plane * bands, 0.0);
  // Spectral synthesis: band b = sum_j c[j][b] coeff plane j.
  for (int b = 0; b < bands; ++b)
    for (int j = 0; j < bands; ++j)
      k.axpy(dct_[j * bands + b], coeffs.data() + j * plane, work.data() + b * plane, plane);
  parallel_for(0, bands, [&](std::int64_t b) {
    dwt_.inverse(std::span<double>(work).subspan(static_cast<std::size_t>(b) * plane, plane));
  });
  if (is_square()) {
    std::copy(work.begin(), work.end(), cube.begin());
    return;
  }
  for (int b = 0; b < bands; ++b)
    for (int x = 0; x < cube_.nx; ++x)
      std::copy_n(work.data() + b * plane + static_cast<std::size_t>(x) * padded_.ny, cube_.ny,
                  cube.data() + (static_cast<std::size_t>(b) * cube_.nx + x) * cube_.ny);
}

void SparsityOperator::apply_adjoint(std::span<const double> cube, std::span<double> coeffs) const {
  check_adjoint(cube, coeffs);
  const int bands = padded_.bands;
  const auto plane = static_cast<std::size_t>(padded_.plane());
  const auto& k = kernels::active();
  std::vector<double> work(plane * bands, 0.0);
  if (is_square()) {
    std::copy(cube.begin(), cube.end(), work.begin());
  } else {
    for (int b = 0; b < bands; ++b)
      for (int x = 0; x < cube_.nx; ++x)
        std::copy_n(cube.data() + (static_cast<std::size_t>(b) * cube_.nx + x) * cube_.ny,
                    cube_.ny, work.data() + b * plane + static_cast<std::size_t>(x) * padded_.ny);
  }
  parallel_for(0, bands, [&](std::int64_t b) {
    dwt_.forward(std::span<double>(work).subspan(static_cast<std::size_t>(b) * plane, plane));
  });
  std::fill(coeffs.begin(), coeffs.end(), 0.0);
  for (int j = 0; j < bands; ++j)
    for (int b = 0; b < bands; ++b)
      k.axpy(dct_[j * bands + b], work.data() + b * plane, coeffs.data() + j * plane, plane);
}

}  // namespace sscsi
