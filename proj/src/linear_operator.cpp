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

#include "sscsi/linear_operator.hpp"

#include <cmath>
#include <string>

#include "sscsi/errors.hpp"
#include "sscsi/kernels.hpp"
#include "sscsi/parallel.hpp"

namespace sscsi {

std::vector<double> LinearOperator::operator*(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(rows()));
  apply(x, y);
  return y;
}

std::vector<double> LinearOperator::adjoint(std::span<const double> y) const {
  std::vector<double> x(static_cast<std::size_t>(cols()));
  apply_adjoint(y, x);
  return x;
}

void LinearOperator::check_apply(std::span<const double> x, std::span<const double> y) const {
  if (static_cast<std::int64_t>(x.size()) != cols() || static_cast<std::int64_t>(y.size()) != rows())
    throw DimensionMismatch("operator is " + std::to_string(rows()) + "x" + std::to_string(cols()) +
                            ", got x of " + std::to_string(x.size()) + " and y of " +
                            std::to_string(y.size()));
}

void LinearOperator::check_adjoint(std::span<const double> y, std::span<const double> x) const {
  check_apply(x, y);
}

ProductOperator::ProductOperator(const LinearOperator& outer, const LinearOperator& inner)
    : outer_(outer), inner_(inner) {
  if (outer.cols() != inner.rows()) throw DimensionMismatch("operator product does not conform");
}

void ProductOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  std::vector<double> mid(static_cast<std::size_t>(inner_.rows()));
  inner_.apply(x, mid);
  outer_.apply(mid, y);
}

void ProductOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  std::vector<double> mid(static_cast<std::size_t>(inner_.rows()));
  outer_.apply_adjoint(y, mid);
  inner_.apply_adjoint(mid, x);
}

void IdentityOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  std::copy(x.begin(), x.end(), y.begin());
}

void IdentityOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  std::copy(y.begin(), y.end(), x.begin());
}

DenseOperator::DenseOperator(std::int64_t rows, std::int64_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != rows * cols)
    throw DimensionMismatch("dense matrix data has the wrong length");
}

DenseOperator DenseOperator::from(const LinearOperator& op) {
  const std::int64_t r = op.rows();
  const std::int64_t c = op.cols();
  std::vector<double> data(static_cast<std::size_t>(r * c));
  std::vector<double> e(static_cast<std::size_t>(c), 0.0);
  std::vector<double> col(static_cast<std::size_t>(r));
  for (std::int64_t j = 0; j < c; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    e[j] = 0.0;
    for (std::int64_t i = 0; i < r; ++i) data[i * c + j] = col[i];
  }
  return DenseOperator(r, c, std::move(data));
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  const auto& k = kernels::active();
  for (std::int64_t i = 0; i < rows_; ++i)
    y[i] = k.dot(data_.data() + i * cols_, x.data(), static_cast<std::size_t>(cols_));
}

void DenseOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  std::fill(x.begin(), x.end(), 0.0);
  const auto& k = kernels::active();
  for (std::int64_t i = 0; i < rows_; ++i)
    k.axpy(y[i], data_.data() + i * cols_, x.data(), static_cast<std::size_t>(cols_));
}

double estimate_squared_norm(const LinearOperator& op, int iterations) {
  const auto n = static_cast<std::size_t>(op.cols());
  std::vector<double> x(n), ax(static_cast<std::size_t>(op.rows()));
  // Deterministic, non-degenerate start.
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i));
  const auto& k = kernels::active();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double nx = std::sqrt(k.dot(x.data(), x.data(), n));
    if (nx == 0.0) return 0.0;
    for (double& v : x) v /= nx;
    op.apply(x, ax);
    op.apply_adjoint(ax, x);
    lambda = std::sqrt(k.dot(x.data(), x.data(), n));
  }
  return lambda;
}

}  // namespace sscsi
