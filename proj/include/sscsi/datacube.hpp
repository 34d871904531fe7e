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

#include <cstddef>
#include <span>
#include <vector>

#include "sscsi/geometry.hpp"

namespace sscsi {

/// Dense N_x x N_y x L radiance cube. Linear index of voxel (x, y, k) is
/// k * N_x * N_y + x * N_y + y (band-major, then x outer, y inner).
class Datacube {
 public:
  Datacube() = default;
  explicit Datacube(CubeDims dims) : dims_(dims), data_(static_cast<std::size_t>(dims.voxels()), 0.0) {}
  Datacube(CubeDims dims, std::vector<double> data);

  const CubeDims& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  std::size_t index(int x, int y, int k) const {
    return (static_cast<std::size_t>(k) * dims_.nx + static_cast<std::size_t>(x)) * dims_.ny +
           static_cast<std::size_t>(y);
  }
  double& at(int x, int y, int k) { return data_[index(x, y, k)]; }
  double at(int x, int y, int k) const { return data_[index(x, y, k)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<const double> band(int k) const {
    return std::span<const double>(data_).subspan(static_cast<std::size_t>(k) * dims_.plane(),
                                                  static_cast<std::size_t>(dims_.plane()));
  }
  /// Spectral signature at (x, y).
  std::vector<double> signature(int x, int y) const;

 private:
  CubeDims dims_;
  std::vector<double> data_;
};

/// Q stacked detector frames. Linear index of (q, m, n) is
/// q * rows * cols + m * cols + n, matching the row order of the stacked
/// sensing matrix.
class MeasurementSet {
 public:
  MeasurementSet() = default;
  MeasurementSet(int shots, int rows, int cols)
      : shots_(shots), rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(shots) * rows * cols, 0.0) {}
  MeasurementSet(int shots, int rows, int cols, std::vector<double> data);

  int shots() const { return shots_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  std::size_t index(int q, int m, int n) const {
    return (static_cast<std::size_t>(q) * rows_ + static_cast<std::size_t>(m)) * cols_ +
           static_cast<std::size_t>(n);
  }
  double& at(int q, int m, int n) { return data_[index(q, m, n)]; }
  double at(int q, int m, int n) const { return data_[index(q, m, n)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

 private:
  int shots_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace sscsi
