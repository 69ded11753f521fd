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

#include "mdp/capacity.h"

#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mdp/leakage.h"

namespace mdp {
namespace {

size_t Find(std::vector<size_t>& parent, size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void AutomorphismSearch(const MetricSpace& space, size_t limit, std::vector<size_t>& sigma,
                        std::vector<bool>& used, size_t k,
                        std::vector<std::vector<size_t>>& out) {
  const size_t n = space.size();
  if (out.size() >= limit) return;
  if (k == n) {
    out.push_back(sigma);
    return;
  }
  for (size_t v = 0; v < n && out.size() < limit; ++v) {
    if (used[v]) continue;
    bool ok = true;
    for (size_t j = 0; j < k && ok; ++j) {
      ok = space.stretch(j, k) == space.stretch(sigma[j], v) &&
           space.is_tight(j, k) == space.is_tight(sigma[j], v);
    }
    if (!ok) continue;
    used[v] = true;
    sigma[k] = v;
    AutomorphismSearch(space, limit, sigma, used, k + 1, out);
    used[v] = false;
  }
}

}  // namespace

absl::StatusOr<CapacityMode> ParseCapacityMode(std::string_view text) {
  if (text == "mult") return CapacityMode::kMultiplicative;
  if (text == "add") return CapacityMode::kAdditive;
  return absl::InvalidArgumentError(
      absl::StrCat("capacity mode must be mult or add, got \"", std::string(text), "\""));
}

std::string CapacityModeName(CapacityMode mode) {
  return mode == CapacityMode::kMultiplicative ? "mult" : "add";
}

std::string CapacityMethodName(CapacityMethod method) {
  switch (method) {
    case CapacityMethod::kLp: return "lp";
    case CapacityMethod::kClosedForm: return "closed_form";
    case CapacityMethod::kPerChannel: return "per_channel";
  }
  return "lp";
}

std::vector<std::vector<size_t>> MetricAutomorphisms(const MetricSpace& space, size_t limit) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> sigma(space.size());
  std::vector<bool> used(space.size(), false);
  AutomorphismSearch(space, limit, sigma, used, 0, out);
  return out;
}

absl::StatusOr<CapacityReport> TypeCapacityLp(const MetricSpace& space, CapacityMode mode,
                                              const CapacityOptions& options) {
  const size_t n = space.size();
  std::vector<size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), 0);
  if (options.use_symmetry) {
    for (const std::vector<size_t>& sigma : MetricAutomorphisms(space)) {
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
          size_t a = Find(parent, i * n + j), b = Find(parent, sigma[i] * n + sigma[j]);
          if (a != b) parent[b] = a;
        }
      }
    }
  }
  std::map<size_t, size_t> orbit_index;
  std::vector<size_t> var_of(n * n);
  for (size_t p = 0; p < n * n; ++p) {
    size_t root = Find(parent, p);
    auto it = orbit_index.emplace(root, orbit_index.size()).first;
    var_of[p] = it->second;
  }
  const size_t vars = orbit_index.size();

  using SparseRow = std::map<size_t, Scalar>;
  auto dense = [vars](const SparseRow& row) {
    Vector out(vars);
    for (const auto& [k, v] : row) out[k] = v;
    return out;
  };

  LpProblem lp;
  lp.sense = mode == CapacityMode::kMultiplicative ? Sense::kMaximize : Sense::kMinimize;
  lp.objective = Vector(vars);
  for (size_t i = 0; i < n; ++i) lp.objective[var_of[i * n + i]] += 1;

  std::set<Vector> eq_rows;
  for (size_t i = 0; i < n; ++i) {
    SparseRow row;
    for (size_t j = 0; j < n; ++j) row[var_of[i * n + j]] += 1;
    eq_rows.insert(dense(row));
  }
  lp.eq_lhs = Matrix(0, vars);
  for (const Vector& r : eq_rows) {
    lp.eq_lhs.AppendRow(r);
    lp.eq_rhs.push_back(1);
  }

  std::set<Vector> le_rows;
  for (auto [a, b] : space.tight_pairs()) {
    for (auto [i, k] : {std::make_pair(a, b), std::make_pair(b, a)}) {
      const Scalar& s = space.stretch(i, k);
      for (size_t j = 0; j < n; ++j) {
        SparseRow row;
        row[var_of[i * n + j]] += 1;
        row[var_of[k * n + j]] -= s;
        bool zero = true;
        for (const auto& [key, v] : row) zero = zero && v == 0;
        if (!zero) le_rows.insert(dense(row));
      }
    }
  }
  lp.le_lhs = Matrix(0, vars);
  for (const Vector& r : le_rows) {
    lp.le_lhs.AppendRow(r);
    lp.le_rhs.push_back(0);
  }

  absl::StatusOr<LpResult> result = LpOptimize(lp, options.lp);
  if (!result.ok()) return result.status();
  if (result->kind != LpResult::Kind::kOptimal) {
    return absl::InternalError("capacity program has no optimum");
  }
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m(i, j) = result->point[var_of[i * n + j]];
  }
  // Drop all-zero columns.
  std::vector<size_t> keep;
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) {
      if (m(i, j) != 0) {
        keep.push_back(j);
        break;
      }
    }
  }
  Matrix w(n, keep.size());
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < keep.size(); ++k) w(i, k) = m(i, keep[k]);
  }
  absl::StatusOr<Channel> witness = Channel::Create(space.labels(), {}, std::move(w));
  if (!witness.ok()) return witness.status();

  CapacityReport report;
  report.mode = mode;
  report.method = CapacityMethod::kLp;
  report.value = mode == CapacityMode::kMultiplicative ? result->value : Scalar(1 - result->value);
  report.witness = *std::move(witness);
  report.precision_digits =
      space.mode() == MetricMode::kApproximate ? space.precision_digits() : 0;
  return report;
}

absl::StatusOr<Scalar> TypeCapacityClosedForm(MetricKind kind, int n, const Scalar& base,
                                              CapacityMode mode) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (base <= 1) return absl::InvalidArgumentError("base must exceed 1");
  const Scalar alpha = 1 / base;
  if (kind == MetricKind::kLine) {
    if (n == 1) return mode == CapacityMode::kMultiplicative ? Scalar(1) : Scalar(0);
    if (mode == CapacityMode::kMultiplicative) {
      return Scalar((n * (1 - alpha) + 2 * alpha) / (1 + alpha));
    }
    absl::StatusOr<Channel> g = GeometricTruncated(n, alpha);
    if (!g.ok()) return g.status();
    return AddCapacityChannel(*g);
  }
  if (kind == MetricKind::kDiscrete) {
    if (mode == CapacityMode::kMultiplicative) return Scalar(n / (1 + (n - 1) * alpha));
    return Scalar(1 - n / (1 + (n - 1) * base));
  }
  return absl::InvalidArgumentError(
      absl::StrCat("no closed form for metric kind ", MetricKindName(kind)));
}

CapacityReport ChannelCapacityReport(const Channel& c, CapacityMode mode) {
  CapacityReport r;
  r.mode = mode;
  r.method = CapacityMethod::kPerChannel;
  r.value = mode == CapacityMode::kMultiplicative ? MultCapacityChannel(c) : AddCapacityChannel(c);
  r.witness = c;
  return r;
}

}  // namespace mdp
