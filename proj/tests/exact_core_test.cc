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

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "gtest/gtest.h"
#include "mdp/linear_algebra.h"
#include "mdp/lp.h"
#include "mdp/scalar.h"

namespace mdp {
namespace {

Scalar Q(const char* s) { return *ParseScalar(s); }

Matrix M(const std::vector<Vector>& rows) { return *Matrix::FromRows(rows); }

Scalar R(long num, long den) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

TEST(ScalarTest, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Q("2/4"), Scalar(1, 2));
  EXPECT_EQ(Q("-3"), Scalar(-3));
  EXPECT_EQ(Q("0.25"), Scalar(1, 4));
  EXPECT_EQ(Q("1.5e-2"), Scalar(3, 200));
  EXPECT_EQ(Q(" 7/21 "), Scalar(1, 3));
  EXPECT_FALSE(ParseScalar("1/0").ok());
  EXPECT_FALSE(ParseScalar("abc").ok());
  EXPECT_FALSE(ParseScalar("").ok());
}

TEST(ScalarTest, TextForms) {
  EXPECT_EQ(ToString(R(6, 4)), "3/2");
  EXPECT_EQ(ToString(R(4, 2)), "2");
  EXPECT_EQ(ToDecimal(Scalar(2, 3), 4), "0.6667");
  EXPECT_EQ(ToDecimal(Scalar(-1, 8), 2), "-0.13");
  EXPECT_EQ(ToDecimal(Scalar(5), 0), "5");
}

TEST(MatrixTest, MultiplyChecksDimensions) {
  Matrix a = M({{1, 2}, {3, 4}});
  Matrix b = M({{1, 0, 1}, {0, 1, 1}});
  absl::StatusOr<Matrix> c = Multiply(a, b);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(*c, M({{1, 2, 3}, {3, 4, 7}}));
  EXPECT_FALSE(Multiply(b, a).ok());
  EXPECT_FALSE(Multiply(a, Vector{1, 2, 3}).ok());
}

TEST(SolveTest, Examples) {
  absl::StatusOr<LinearSolution> s = SolveLinearSystem(Matrix::Identity(2), {Q("1/3"), Q("2/3")});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->kind, LinearSolution::Kind::kUnique);
  EXPECT_EQ(s->x, (Vector{Q("1/3"), Q("2/3")}));

  s = SolveLinearSystem(M({{1, 1}, {2, 2}}), {1, 2});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->kind, LinearSolution::Kind::kUnderdetermined);

  s = SolveLinearSystem(M({{1, 1}, {1, -1}}), {1, Q("1/3")});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->kind, LinearSolution::Kind::kUnique);
  EXPECT_EQ(s->x, (Vector{Q("2/3"), Q("1/3")}));

  s = SolveLinearSystem(M({{1, 1}, {2, 2}}), {1, 3});
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->kind, LinearSolution::Kind::kInconsistent);

  EXPECT_FALSE(SolveLinearSystem(Matrix::Identity(2), {1}).ok());
  EXPECT_FALSE(SolveLinearSystem(Matrix(0, 0), {}).ok());
}

// Leibniz expansion; independent of the elimination kernel.
Scalar LeibnizDeterminant(const Matrix& a) {
  const size_t n = a.rows();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = 0;
  do {
    int inversions = 0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Scalar term = inversions % 2 == 0 ? 1 : -1;
    for (size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix RandomMatrix(std::mt19937_64& rng, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      m(r, c) = R(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 4) + 1);
    }
  }
  return m;
}

TEST(SolveTest, RecoversRandomSolutions) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng() % 5;
    Matrix a = RandomMatrix(rng, n, n);
    if (LeibnizDeterminant(a) == 0) continue;
    Vector x(n);
    for (Scalar& v : x) v = R(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 7) + 1);
    absl::StatusOr<Vector> b = Multiply(a, x);
    ASSERT_TRUE(b.ok());
    absl::StatusOr<LinearSolution> s = SolveLinearSystem(a, *b);
    ASSERT_TRUE(s.ok());
    ASSERT_EQ(s->kind, LinearSolution::Kind::kUnique);
    EXPECT_EQ(s->x, x);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(DeterminantTest, MatchesLeibnizExpansion) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng() % 5;
    Matrix a = RandomMatrix(rng, n, n);
    absl::StatusOr<Scalar> d = Determinant(a);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(*d, LeibnizDeterminant(a));
  }
  EXPECT_FALSE(Determinant(Matrix(2, 3)).ok());
}

TEST(RankTest, Examples) {
  EXPECT_EQ(*Rank(std::vector<Vector>{{1, 0, 0}, {0, 1, 0}}), 2);
  EXPECT_EQ(*Rank(std::vector<Vector>{{Q("4/7"), Q("2/7"), Q("1/7")},
                                      {Q("1/4"), Q("1/2"), Q("1/4")},
                                      {Q("1/7"), Q("2/7"), Q("4/7")}}),
            3);
  EXPECT_EQ(*Rank(std::vector<Vector>{{1, 1}, {2, 2}}), 1);
  EXPECT_EQ(*Rank(std::vector<Vector>{}), 0);
  EXPECT_FALSE(Rank(std::vector<Vector>{{1, 2}, {1}}).ok());
}

TEST(RankTest, AgreesWithDeterminantOnSquareMatrices) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng() % 4;
    Matrix a = RandomMatrix(rng, n, n);
    if (rng() % 3 == 0 && n > 1) {
      for (size_t c = 0; c < n; ++c) a(n - 1, c) = a(0, c) * 2 - a(1 % n, c);
    }
    EXPECT_EQ(Rank(a) == static_cast<int>(n), LeibnizDeterminant(a) != 0);
  }
}

TEST(LpTest, TrivialMaximum) {
  LpProblem p;
  p.sense = Sense::kMaximize;
  p.objective = {1};
  p.le_lhs = M({{1}});
  p.le_rhs = {Q("2/3")};
  absl::StatusOr<LpResult> r = LpOptimize(p);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, LpResult::Kind::kOptimal);
  EXPECT_EQ(r->value, Q("2/3"));
  EXPECT_EQ(r->point, (Vector{Q("2/3")}));
}

TEST(LpTest, InfeasibleUnboundedAndFree) {
  LpProblem p;
  p.sense = Sense::kMaximize;
  p.objective = {1, 1};
  p.eq_lhs = M({{1, 1}});
  p.eq_rhs = {-1};
  absl::StatusOr<LpResult> r = LpOptimize(p);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, LpResult::Kind::kInfeasible);

  LpProblem u;
  u.sense = Sense::kMaximize;
  u.objective = {1, 0};
  u.le_lhs = M({{0, 1}});
  u.le_rhs = {1};
  r = LpOptimize(u);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, LpResult::Kind::kUnbounded);

  // A free variable reaches a negative optimum.
  LpProblem f;
  f.sense = Sense::kMinimize;
  f.objective = {1};
  f.le_lhs = M({{-1}});
  f.le_rhs = {Q("5/2")};
  f.lower_bounds = {std::nullopt};
  r = LpOptimize(f);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->kind, LpResult::Kind::kOptimal);
  EXPECT_EQ(r->value, Q("-5/2"));

  LpProblem bad;
  bad.objective = {1, 2};
  bad.le_lhs = M({{1}});
  bad.le_rhs = {1};
  EXPECT_FALSE(LpOptimize(bad).ok());
}

TEST(LpTest, IterationLimitIsDistinct) {
  LpProblem p;
  p.sense = Sense::kMaximize;
  p.objective = {1, 1, 1};
  p.le_lhs = M({{1, 2, 3}, {3, 2, 1}, {1, 1, 4}});
  p.le_rhs = {4, 5, 6};
  LpOptions o;
  o.max_iterations = 0;
  absl::StatusOr<LpResult> r = LpOptimize(p, o);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
}

// Oracle for two-variable LPs: best feasible intersection of two boundary
// lines (including the axes), computed by Cramer's rule.
std::optional<Scalar> PlanarOracle(const Vector& c, const std::vector<Vector>& rows, const Vector& rhs) {
  std::vector<Vector> lines = rows;
  Vector b = rhs;
  lines.push_back({-1, 0});
  b.push_back(0);
  lines.push_back({0, -1});
  b.push_back(0);
  std::optional<Scalar> best;
  for (size_t i = 0; i < lines.size(); ++i) {
    for (size_t j = i + 1; j < lines.size(); ++j) {
      const Scalar det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
      if (det == 0) continue;
      const Scalar x = (b[i] * lines[j][1] - lines[i][1] * b[j]) / det;
      const Scalar y = (lines[i][0] * b[j] - b[i] * lines[j][0]) / det;
      bool ok = true;
      for (size_t k = 0; k < lines.size() && ok; ++k) ok = lines[k][0] * x + lines[k][1] * y <= b[k];
      if (!ok) continue;
      const Scalar v = c[0] * x + c[1] * y;
      if (!best.has_value() || v > *best) best = v;
    }
  }
  return best;
}

TEST(LpTest, RandomPlanarProgramsMatchOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t m = 2 + rng() % 4;
    std::vector<Vector> rows;
    Vector rhs;
    for (size_t i = 0; i < m; ++i) {
      rows.push_back({R(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 3) + 1),
                      R(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 3) + 1)});
      rhs.push_back(R(static_cast<long>(rng() % 20) + 1, static_cast<long>(rng() % 5) + 1));
    }
    Vector c{Scalar(static_cast<long>(rng() % 7) - 2), Scalar(static_cast<long>(rng() % 7) - 2)};
    LpProblem p;
    p.sense = Sense::kMaximize;
    p.objective = c;
    p.le_lhs = M(rows);
    p.le_rhs = rhs;
    absl::StatusOr<LpResult> r = LpOptimize(p);
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(r->kind, LpResult::Kind::kOptimal);
    std::optional<Scalar> expected = PlanarOracle(c, rows, rhs);
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(r->value, *expected);
    ASSERT_EQ(r->point.size(), 2u);
    EXPECT_GE(r->point[0], 0);
    EXPECT_GE(r->point[1], 0);
    for (size_t i = 0; i < m; ++i) EXPECT_LE(rows[i][0] * r->point[0] + rows[i][1] * r->point[1], rhs[i]);
    EXPECT_EQ(c[0] * r->point[0] + c[1] * r->point[1], r->value);
  }
}

TEST(LpTest, RandomEqualityProgramsAreExactlyFeasible) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t vars = 3 + rng() % 4;
    Matrix eq(1, vars);
    for (size_t v = 0; v < vars; ++v) eq(0, v) = 1;
    Matrix le = RandomMatrix(rng, 2, vars);
    Vector le_rhs{Scalar(static_cast<long>(rng() % 5) + 1), Scalar(static_cast<long>(rng() % 5) + 1)};
    LpProblem p;
    p.sense = Sense::kMinimize;
    p.objective = RandomMatrix(rng, 1, vars).Row(0);
    p.eq_lhs = eq;
    p.eq_rhs = {1};
    p.le_lhs = le;
    p.le_rhs = le_rhs;
    absl::StatusOr<LpResult> r = LpOptimize(p);
    ASSERT_TRUE(r.ok());
    if (r->kind != LpResult::Kind::kOptimal) continue;
    EXPECT_EQ(Sum(r->point), 1);
    for (size_t i = 0; i < 2; ++i) {
      Scalar lhs = 0;
      for (size_t v = 0; v < vars; ++v) lhs += le(i, v) * r->point[v];
      EXPECT_LE(lhs, le_rhs[i]);
    }
    // Optimality against every simplex vertex that is feasible.
    for (size_t v = 0; v < vars; ++v) {
      if (le(0, v) <= le_rhs[0] && le(1, v) <= le_rhs[1]) EXPECT_LE(r->value, p.objective[v]);
    }
    // Determinism.
    absl::StatusOr<LpResult> again = LpOptimize(p);
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(again->point, r->point);
  }
}

}  // namespace
}  // namespace mdp
