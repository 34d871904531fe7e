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
#include <memory>
#include <span>
#include <vector>

namespace sscsi {

/// Real linear map y = A x with its adjoint.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::int64_t rows() const = 0;
  virtual std::int64_t cols() const = 0;
  /// y = A x; y is overwritten.
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  /// x = A^T y; x is overwritten.
  virtual void apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;

  std::vector<double> operator*(std::span<const double> x) const;
  std::vector<double> adjoint(std::span<const double> y) const;

 protected:
  void check_apply(std::span<const double> x, std::span<const double> y) const;
  void check_adjoint(std::span<const double> y, std::span<const double> x) const;
};

/// outer * inner. Both operands must outlive the product.
class ProductOperator final : public LinearOperator {
 public:
  ProductOperator(const LinearOperator& outer, const LinearOperator& inner);
  std::int64_t rows() const override { return outer_.rows(); }
  std::int64_t cols() const override { return inner_.cols(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

 private:
  const LinearOperator& outer_;
  const LinearOperator& inner_;
};

class IdentityOperator final : public LinearOperator {
 public:
  explicit IdentityOperator(std::int64_t n) : n_(n) {}
  std::int64_t rows() const override { return n_; }
  std::int64_t cols() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

 private:
  std::int64_t n_;
};

/// Row-major dense matrix.
class DenseOperator final : public LinearOperator {
 public:
  DenseOperator(std::int64_t rows, std::int64_t cols, std::vector<double> data);
  /// Materializes `op` column by column.
  static DenseOperator from(const LinearOperator& op);

  std::int64_t rows() const override { return rows_; }
  std::int64_t cols() const override { return cols_; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

  double at(std::int64_t r, std::int64_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> data() const { return data_; }

 private:
  std::int64_t rows_, cols_;
  std::vector<double> data_;
};

/// Largest eigenvalue of A^T A by power iteration from a fixed start vector.
double estimate_squared_norm(const LinearOperator& op, int iterations = 20);

}  // namespace sscsi
