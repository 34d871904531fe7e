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

#include <cstdint>
#include <string>
#include <vector>

#include "sscsi/coding.hpp"
#include "sscsi/geometry.hpp"
#include "sscsi/linear_operator.hpp"

namespace sscsi {

struct Triplet {
  std::int64_t row = 0;
  std::int64_t col = 0;
  double weight = 0.0;
};

/// Stacked sensing matrix H = [H(1); ...; H(Q)], compressed rows sorted by
/// column plus a compressed copy of H^T for the adjoint. Row u = q R + m C + n
/// with R = rows per shot and C detector columns; column v = k N_x N_y + x N_y + y.
class SensingMatrix final : public LinearOperator {
 public:
  SensingMatrix() = default;
  /// Duplicate (row, col) pairs are summed; zero weights are dropped.
  static SensingMatrix from_triplets(std::int64_t rows, std::int64_t cols, int shots,
                                     std::vector<Triplet> triplets, CubeDims cube = {},
                                     int detector_cols = 0, std::uint64_t geometry_hash = 0);

  std::int64_t rows() const override { return rows_; }
  std::int64_t cols() const override { return cols_; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

  int shots() const { return shots_; }
  std::int64_t rows_per_shot() const { return shots_ > 0 ? rows_ / shots_ : 0; }
  int detector_cols() const { return detector_cols_; }
  const CubeDims& cube_dims() const { return cube_; }
  std::uint64_t geometry_hash() const { return geometry_hash_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(val_.size()); }

  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& col_index() const { return col_; }
  const std::vector<double>& values() const { return val_; }

  /// Entry (r, c), zero when absent.
  double at(std::int64_t r, std::int64_t c) const;
  std::vector<Triplet> triplets() const;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  int shots_ = 0;
  int detector_cols_ = 0;
  CubeDims cube_;
  std::uint64_t geometry_hash_ = 0;
  std::vector<std::int64_t> row_ptr_{0};
  std::vector<std::int32_t> col_;
  std::vector<double> val_;
  std::vector<std::int64_t> t_ptr_{0};
  std::vector<std::int32_t> t_row_;
  std::vector<double> t_val_;
};

SensingMatrix assemble(const CodedApertureSet& codes, const SystemGeometry& g, const BandGrid& grid);
SensingMatrix assemble(const CodedApertureSet& codes, const SystemGeometry& g);

/// Matrix of sense_cassi_baseline() for a cube with `bands` bands.
SensingMatrix assemble_cassi(const CodedApertureSet& codes, const SystemGeometry& g, int bands);

/// Binary ".ssm" dump: magic "SSM1", u64 rows, cols, nnz, u32 shots, u64
/// geometry hash, then (u32 row, u32 col, f64 weight) triplets, all little-endian.
void write_ssm(const std::string& path, const SensingMatrix& h);
SensingMatrix read_ssm(const std::string& path);

}  // namespace sscsi
