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

#include "mdp/lp.h"

#include <cstddef>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

// Dense tableau for: minimize c.x subject to A x = b, x >= 0, b >= 0.
class Tableau {
 public:
  Tableau(std::vector<Vector> rows, Vector rhs, std::vector<size_t> basis, size_t cols)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)),
        cols_(cols), allowed_(cols, true) {}

  size_t num_rows() const { return rows_.size(); }
  const std::vector<size_t>& basis() const { return basis_; }
  const Scalar& rhs(size_t r) const { return rhs_[r]; }
  const Scalar& at(size_t r, size_t c) const { return rows_[r][c]; }
  void Forbid(size_t c) { allowed_[c] = false; }

  // Reduced costs for `cost` given the current basis.
  void SetCost(const Vector& cost) {
    reduced_ = cost;
    objective_ = 0;
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Scalar& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (size_t c = 0; c < cols_; ++c) {
        if (rows_[r][c] != 0) reduced_[c] -= cb * rows_[r][c];
      }
      objective_ += cb * rhs_[r];
    }
  }

  const Scalar& objective() const { return objective_; }

  // Runs Bland's rule to optimality. Returns false when unbounded.
  absl::StatusOr<bool> Run(int64_t& iterations_left) {
    while (true) {
      size_t enter = cols_;
      for (size_t c = 0; c < cols_; ++c) {
        if (allowed_[c] && reduced_[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      size_t leave = rows_.size();
      Scalar best_ratio;
      for (size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][enter] <= 0) continue;
        Scalar ratio = rhs_[r] / rows_[r][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return false;
      if (iterations_left-- <= 0) {
        return absl::ResourceExhaustedError("simplex iteration limit exceeded");
      }
      Pivot(leave, enter);
    }
  }

  void Pivot(size_t r, size_t c) {
    Vector& prow = rows_[r];
    const Scalar inv = 1 / prow[c];
    std::vector<size_t> nz;
    for (size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    rhs_[r] *= inv;
    Scalar f;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      f = rows_[i][c];
      for (size_t j : nz) rows_[i][j] -= f * prow[j];
      rhs_[i] -= f * rhs_[r];
    }
    if (!reduced_.empty() && reduced_[c] != 0) {
      f = reduced_[c];
      for (size_t j : nz) reduced_[j] -= f * prow[j];
      objective_ += f * rhs_[r];
    }
    basis_[r] = c;
  }

  void RemoveRow(size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<Vector> rows_;
  Vector rhs_;
  std::vector<size_t> basis_;
  size_t cols_;
  std::vector<bool> allowed_;
  Vector reduced_;
  Scalar objective_;
};

// How an original variable maps to standard-form columns: x = shift + col
// (minus `neg_col` when free).
struct VarMap {
  size_t col = 0;
  bool free = false;
  size_t neg_col = 0;
  Scalar shift;
};

}  // namespace

absl::StatusOr<LpResult> LpOptimize(const LpProblem& p, const LpOptions& options) {
  const size_t n = p.objective.size();
  if (p.eq_lhs.rows() != p.eq_rhs.size() || p.le_lhs.rows() != p.le_rhs.size()) {
    return absl::InvalidArgumentError("constraint matrix and right-hand side disagree in size");
  }
  if ((p.eq_lhs.rows() > 0 && p.eq_lhs.cols() != n) ||
      (p.le_lhs.rows() > 0 && p.le_lhs.cols() != n)) {
    return absl::InvalidArgumentError("constraint width differs from objective length");
  }
  if (!p.lower_bounds.empty() && p.lower_bounds.size() != n) {
    return absl::InvalidArgumentError("lower_bounds length differs from objective length");
  }

  std::vector<VarMap> vars(n);
  size_t cols = 0;
  for (size_t i = 0; i < n; ++i) {
    vars[i].col = cols++;
    if (p.lower_bounds.empty()) continue;
    if (!p.lower_bounds[i].has_value()) {
      vars[i].free = true;
      vars[i].neg_col = cols++;
    } else {
      vars[i].shift = *p.lower_bounds[i];
    }
  }
  const size_t structural = cols;
  const size_t m_eq = p.eq_lhs.rows();
  const size_t m_le = p.le_lhs.rows();
  const size_t m = m_eq + m_le;
  const size_t slack_begin = structural;
  cols += m_le;

  std::vector<Vector> rows(m);
  Vector rhs(m);
  std::vector<bool> needs_artificial(m, true);
  auto fill = [&](const Matrix& lhs, const Vector& b, size_t src, size_t dst) {
    Vector& row = rows[dst];
    row.assign(cols, Scalar(0));
    Scalar r = b[src];
    for (size_t i = 0; i < n; ++i) {
      const Scalar& a = lhs(src, i);
      if (a == 0) continue;
      row[vars[i].col] = a;
      if (vars[i].free) row[vars[i].neg_col] = -a;
      r -= a * vars[i].shift;
    }
    rhs[dst] = r;
  };
  for (size_t i = 0; i < m_eq; ++i) fill(p.eq_lhs, p.eq_rhs, i, i);
  for (size_t i = 0; i < m_le; ++i) {
    fill(p.le_lhs, p.le_rhs, i, m_eq + i);
    rows[m_eq + i][slack_begin + i] = 1;
    if (rhs[m_eq + i] >= 0) needs_artificial[m_eq + i] = false;
  }
  for (size_t r = 0; r < m; ++r) {
    if (rhs[r] < 0) {
      for (Scalar& v : rows[r]) v = -v;
      rhs[r] = -rhs[r];
    }
  }
  const size_t artificial_begin = cols;
  std::vector<size_t> basis(m);
  for (size_t r = 0; r < m; ++r) {
    if (needs_artificial[r]) {
      basis[r] = cols++;
    } else {
      basis[r] = slack_begin + (r - m_eq);
    }
  }
  for (Vector& row : rows) row.resize(cols, Scalar(0));
  for (size_t r = 0; r < m; ++r) {
    if (basis[r] >= artificial_begin) rows[r][basis[r]] = 1;
  }

  Tableau t(std::move(rows), std::move(rhs), std::move(basis), cols);
  int64_t budget = options.max_iterations;

  if (cols > artificial_begin) {
    Vector phase1(cols);
    for (size_t c = artificial_begin; c < cols; ++c) phase1[c] = 1;
    t.SetCost(phase1);
    absl::StatusOr<bool> ok = t.Run(budget);
    if (!ok.ok()) return ok.status();
    if (t.objective() > 0) return LpResult{LpResult::Kind::kInfeasible, {}, {}};
    for (size_t r = 0; r < t.num_rows();) {
      if (t.basis()[r] < artificial_begin) {
        ++r;
        continue;
      }
      size_t c = 0;
      while (c < artificial_begin && t.at(r, c) == 0) ++c;
      if (c == artificial_begin) {
        t.RemoveRow(r);
      } else {
        t.Pivot(r, c);
        ++r;
      }
    }
    for (size_t c = artificial_begin; c < cols; ++c) t.Forbid(c);
  }

  Vector cost(cols);
  for (size_t i = 0; i < n; ++i) {
    Scalar c = p.sense == Sense::kMaximize ? Scalar(-p.objective[i]) : p.objective[i];
    cost[vars[i].col] = c;
    if (vars[i].free) cost[vars[i].neg_col] = -c;
  }
  t.SetCost(cost);
  absl::StatusOr<bool> bounded = t.Run(budget);
  if (!bounded.ok()) return bounded.status();
  if (!*bounded) return LpResult{LpResult::Kind::kUnbounded, {}, {}};

  Vector standard(cols);
  for (size_t r = 0; r < t.num_rows(); ++r) standard[t.basis()[r]] = t.rhs(r);
  LpResult result;
  result.kind = LpResult::Kind::kOptimal;
  result.point.resize(n);
  for (size_t i = 0; i < n; ++i) {
    Scalar x = vars[i].shift + standard[vars[i].col];
    if (vars[i].free) x -= standard[vars[i].neg_col];
    result.point[i] = x;
    result.value += p.objective[i] * x;
  }
  return result;
}

}  // namespace mdp
