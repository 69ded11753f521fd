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

#include "mdp/linear_algebra.h"

#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

using IntRow = std::vector<mpz_class>;

// Clears denominators row by row. `scale[r]` is the factor applied to row r.
std::vector<IntRow> ToIntegerRows(const Matrix& m, std::vector<mpz_class>* scale) {
  std::vector<IntRow> out(m.rows(), IntRow(m.cols()));
  if (scale != nullptr) scale->assign(m.rows(), 1);
  for (size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (size_t c = 0; c < m.cols(); ++c) {
      out[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
    if (scale != nullptr) (*scale)[r] = l;
  }
  return out;
}

struct Echelon {
  std::vector<size_t> pivot_cols;
  bool odd_swaps = false;
  mpz_class last_pivot = 1;
};

// Fraction-free (Bareiss) forward elimination, in place. Pivot search is
// restricted to the first `pivot_limit` columns.
Echelon Eliminate(std::vector<IntRow>& rows, size_t cols, size_t pivot_limit) {
  Echelon e;
  mpz_class prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < pivot_limit && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    if (p != r) {
      std::swap(rows[p], rows[r]);
      e.odd_swaps = !e.odd_swaps;
    }
    const mpz_class pivot = rows[r][c];
    for (size_t i = r + 1; i < rows.size(); ++i) {
      const mpz_class lead = rows[i][c];
      for (size_t j = c; j < cols; ++j) {
        mpz_class v = pivot * rows[i][j] - lead * rows[r][j];
        mpz_divexact(rows[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.last_pivot = prev;
  return e;
}

}  // namespace

absl::StatusOr<LinearSolution> SolveLinearSystem(const Matrix& a, const Vector& b) {
  if (a.rows() == 0 || a.cols() == 0) {
    return absl::InvalidArgumentError("linear system needs at least one row and column");
  }
  if (a.rows() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "matrix has ", a.rows(), " rows but right-hand side has ", b.size(), " entries"));
  }
  const size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  std::vector<IntRow> rows = ToIntegerRows(aug, nullptr);
  Echelon e = Eliminate(rows, n + 1, n);
  const size_t rank = e.pivot_cols.size();
  for (size_t r = rank; r < rows.size(); ++r) {
    if (rows[r][n] != 0) return LinearSolution{LinearSolution::Kind::kInconsistent, {}};
  }
  if (rank < n) return LinearSolution{LinearSolution::Kind::kUnderdetermined, {}};

  Vector x(n);
  for (size_t k = rank; k-- > 0;) {
    Scalar acc(rows[k][n]);
    for (size_t j = k + 1; j < n; ++j) {
      if (rows[k][j] != 0) acc -= Scalar(rows[k][j]) * x[j];
    }
    x[k] = acc / Scalar(rows[k][k]);
  }
  return LinearSolution{LinearSolution::Kind::kUnique, std::move(x)};
}

int Rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::vector<IntRow> rows = ToIntegerRows(m, nullptr);
  return static_cast<int>(Eliminate(rows, m.cols(), m.cols()).pivot_cols.size());
}

absl::StatusOr<int> Rank(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return 0;
  absl::StatusOr<Matrix> m = Matrix::FromRows(vectors);
  if (!m.ok()) return m.status();
  return Rank(*m);
}

absl::StatusOr<Scalar> Determinant(const Matrix& m) {
  if (m.rows() != m.cols()) {
    return absl::InvalidArgumentError("determinant of a non-square matrix");
  }
  if (m.rows() == 0) return Scalar(1);
  std::vector<mpz_class> scale;
  std::vector<IntRow> rows = ToIntegerRows(m, &scale);
  Echelon e = Eliminate(rows, m.cols(), m.cols());
  if (e.pivot_cols.size() < m.rows()) return Scalar(0);
  mpz_class den = 1;
  for (const mpz_class& s : scale) den *= s;
  Scalar det(e.last_pivot, den);
  det.canonicalize();
  return e.odd_swaps ? Scalar(-det) : det;
}

}  // namespace mdp
