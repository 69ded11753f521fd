// Copyright 2026 The mdp-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDP_SCALAR_H_
#define MDP_SCALAR_H_

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace mdp {

// Exact rational number. GMP keeps every result in lowest terms with a
// positive denominator.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

// Parses "p/q", an integer, or a decimal such as "-0.25" or "1.5e-3". Decimals
// are converted exactly ("0.25" -> 1/4).
absl::StatusOr<Scalar> ParseScalar(std::string_view text);

// "p/q", with "/q" omitted when q == 1.
std::string ToString(const Scalar& value);

// Decimal rendering rounded half away from zero to `digits` places.
std::string ToDecimal(const Scalar& value, int digits);

double ToDouble(const Scalar& value);

Scalar Sum(const Vector& values);

// Dense row-major matrix with explicit dimensions. A matrix may have zero
// rows and still carry a column count.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  // All rows must have the same length; `cols` is used when `rows` is empty.
  static absl::StatusOr<Matrix> FromRows(const std::vector<Vector>& rows,
                                         size_t cols = 0);
  static Matrix Identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Scalar& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Vector Row(size_t r) const;
  Vector Column(size_t c) const;
  void AppendRow(const Vector& row);

  bool operator==(const Matrix& other) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Scalar> data_;
};

absl::StatusOr<Matrix> Multiply(const Matrix& a, const Matrix& b);
absl::StatusOr<Vector> Multiply(const Matrix& a, const Vector& x);

}  // namespace mdp

#endif  // MDP_SCALAR_H_
