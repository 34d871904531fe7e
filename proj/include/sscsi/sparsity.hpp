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

#include <array>
#include <span>
#include <vector>

#include "sscsi/geometry.hpp"
#include "sscsi/linear_operator.hpp"

namespace sscsi {

struct WaveletFilter {
  std::vector<double> lo;  ///< analysis low-pass
  std::vector<double> hi;  ///< analysis high-pass, hi[t] = (-1)^t lo[n - 1 - t]
};

/// Symlet-8 pair, renormalized and checked against the QMF conditions on
/// first use.
const WaveletFilter& symlet8();

/// Throws std::logic_error when sum lo^2 != 1, sum lo != sqrt 2, the even
/// shifts of lo are not orthogonal, or hi is not the quadrature mirror.
void validate_qmf(const WaveletFilter& f, double tol = 1e-12);

/// Orthonormal DCT-II matrix, c[j * n + k] = s_j cos(pi (2k + 1) j / 2n).
std::vector<double> dct_matrix(int n);

/// Periodic 2-D orthonormal DWT on nx x ny planes stored x-major
/// (index x * ny + y). Coefficients use the Mallat layout.
class Dwt2D {
 public:
  Dwt2D(int nx, int ny, int levels, const WaveletFilter& filter = symlet8());
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int levels() const { return levels_; }
  /// In place.
  void forward(std::span<double> plane) const;
  void inverse(std::span<double> plane) const;

 private:
  void analyze_rows(double* data, int rows, int cols, int stride, double* scratch) const;
  void synthesize_rows(double* data, int rows, int cols, int stride, double* scratch) const;

  int nx_, ny_, levels_;
  WaveletFilter filter_;
};

/// Psi = DCT (bands) kron 2-D Symlet-8 (space). apply() synthesizes a cube
/// from coefficients, apply_adjoint() analyzes. Coefficients share the cube
/// layout: band-major, then x, then y.
class SparsityOperator final : public LinearOperator {
 public:
  /// Spatial dims must be divisible by 2^levels unless `allow_padding`, in
  /// which case the coefficient grid is zero-padded up to the next multiple
  /// and apply() crops back to `cube`.
  explicit SparsityOperator(CubeDims cube, int levels = 3, bool allow_padding = false);

  const CubeDims& cube_dims() const { return cube_; }
  const CubeDims& coeff_dims() const { return padded_; }
  int levels() const { return levels_; }
  bool is_square() const { return cube_ == padded_; }

  std::int64_t rows() const override { return cube_.voxels(); }
  std::int64_t cols() const override { return padded_.voxels(); }
  void apply(std::span<const double> coeffs, std::span<double> cube) const override;
  void apply_adjoint(std::span<const double> cube, std::span<double> coeffs) const override;

  std::vector<double> synthesize(std::span<const double> coeffs) const { return *this * coeffs; }
  std::vector<double> analyze(std::span<const double> cube) const { return adjoint(cube); }

  /// Spatial-only transforms on one padded plane.
  const Dwt2D& dwt() const { return dwt_; }
  /// Orthonormal DCT-II matrix along the bands.
  const std::vector<double>& dct() const { return dct_; }

 private:
  CubeDims cube_;
  CubeDims padded_;
  int levels_;
  Dwt2D dwt_;
  std::vector<double> dct_;
};

}  // namespace sscsi
