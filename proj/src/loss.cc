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

#include "mdp/loss.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

std::vector<std::string> Numbered(const std::string& prefix, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(absl::StrCat(prefix, i));
  return out;
}

absl::StatusOr<size_t> FindLabel(const std::vector<std::string>& labels, const std::string& l) {
  auto it = std::find(labels.begin(), labels.end(), l);
  if (it == labels.end()) return absl::InvalidArgumentError(absl::StrCat("unknown label \"", l, "\""));
  return static_cast<size_t>(it - labels.begin());
}

// Checks that the map squared distance -> value over the attained entries is
// single valued and (strictly) non-decreasing.
bool Consistent(const LossFunction& loss, const MetricSpace& space,
                const std::vector<size_t>& alpha, bool strict) {
  std::map<Scalar, Scalar> m;
  for (size_t w = 0; w < loss.num_actions(); ++w) {
    for (size_t x = 0; x < loss.num_secrets(); ++x) {
      const Scalar& d2 = space.squared_distance(x, alpha[w]);
      auto [it, inserted] = m.emplace(d2, loss.table(w, x));
      if (!inserted && it->second != loss.table(w, x)) return false;
    }
  }
  const Scalar* prev = nullptr;
  for (const auto& [d2, v] : m) {
    if (prev != nullptr && (strict ? v <= *prev : v < *prev)) return false;
    prev = &v;
  }
  return true;
}

}  // namespace

absl::StatusOr<LossFunction> MakeLoss(std::vector<std::string> w_labels,
                                      std::vector<std::string> x_labels, Matrix table) {
  if (table.rows() == 0) return absl::InvalidArgumentError("loss needs at least one action");
  if (w_labels.empty()) w_labels = Numbered("w", table.rows());
  if (x_labels.empty()) x_labels = Numbered("", table.cols());
  if (w_labels.size() != table.rows() || x_labels.size() != table.cols()) {
    return absl::InvalidArgumentError("loss labels do not match the table");
  }
  for (size_t w = 0; w < table.rows(); ++w) {
    for (size_t x = 0; x < table.cols(); ++x) {
      if (table(w, x) < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("negative loss at (", w_labels[w], ",", x_labels[x], ")"));
      }
    }
  }
  return LossFunction{std::move(w_labels), std::move(x_labels), std::move(table)};
}

LossFunction BinLoss(size_t n) {
  Matrix t(n, n);
  for (size_t w = 0; w < n; ++w) {
    for (size_t x = 0; x < n; ++x) t(w, x) = w == x ? 0 : 1;
  }
  return LossFunction{Numbered("", n), Numbered("", n), std::move(t)};
}

LossFunction NibLoss(size_t n) {
  Matrix t(n, n);
  for (size_t w = 0; w < n; ++w) {
    for (size_t x = 0; x < n; ++x) t(w, x) = w == x ? 1 : 0;
  }
  return LossFunction{Numbered("", n), Numbered("", n), std::move(t)};
}

LossFunction AvgLoss(size_t n) {
  Matrix t(n, n);
  for (size_t w = 0; w < n; ++w) {
    for (size_t x = 0; x < n; ++x) t(w, x) = w > x ? w - x : x - w;
  }
  return LossFunction{Numbered("", n), Numbered("", n), std::move(t)};
}

absl::StatusOr<LossFunction> MonotoneLoss(const MetricSpace& space,
                                          const std::vector<std::pair<Scalar, Scalar>>& m,
                                          const std::vector<size_t>& alpha) {
  if (alpha.empty()) return absl::InvalidArgumentError("action map is empty");
  std::set<size_t> image;
  for (size_t a : alpha) {
    if (a >= space.size()) return absl::InvalidArgumentError("action map leaves X");
    if (!image.insert(a).second) return absl::InvalidArgumentError("action map is not injective");
  }
  std::map<Scalar, Scalar> table;
  for (const auto& [d2, v] : m) {
    if (v < 0) return absl::InvalidArgumentError("negative loss value");
    auto [it, inserted] = table.emplace(d2, v);
    if (!inserted && it->second != v) {
      return absl::InvalidArgumentError("m assigns two values to one distance");
    }
  }
  const Scalar* prev = nullptr;
  for (const auto& [d2, v] : table) {
    if (prev != nullptr && v < *prev) return absl::InvalidArgumentError("m is not non-decreasing");
    prev = &v;
  }
  Matrix t(alpha.size(), space.size());
  std::vector<std::string> w_labels;
  for (size_t w = 0; w < alpha.size(); ++w) {
    w_labels.push_back(space.labels()[alpha[w]]);
    for (size_t x = 0; x < space.size(); ++x) {
      auto it = table.find(space.squared_distance(x, alpha[w]));
      if (it == table.end()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "m has no value for the distance between ", space.labels()[x], " and ",
            space.labels()[alpha[w]]));
      }
      t(w, x) = it->second;
    }
  }
  return LossFunction{std::move(w_labels), space.labels(), std::move(t)};
}

absl::StatusOr<LossFunction> MonotoneLossFromDistances(
    const MetricSpace& space, const std::vector<std::pair<Scalar, Scalar>>& m,
    const std::vector<size_t>& alpha) {
  std::vector<std::pair<Scalar, Scalar>> squared;
  for (const auto& [d, v] : m) {
    if (d < 0) return absl::InvalidArgumentError("negative distance");
    squared.emplace_back(d * d, v);
  }
  return MonotoneLoss(space, squared, alpha);
}

absl::StatusOr<LossFunction> RestrictLoss(const LossFunction& loss,
                                          const std::vector<std::string>& x_subset) {
  if (x_subset.empty()) return absl::InvalidArgumentError("empty secret subset");
  Matrix t(loss.num_actions(), x_subset.size());
  for (size_t k = 0; k < x_subset.size(); ++k) {
    absl::StatusOr<size_t> x = FindLabel(loss.x_labels, x_subset[k]);
    if (!x.ok()) return x.status();
    for (size_t w = 0; w < loss.num_actions(); ++w) t(w, k) = loss.table(w, *x);
  }
  return LossFunction{loss.w_labels, x_subset, std::move(t)};
}

absl::StatusOr<LossFunction> ExtendLoss(const LossFunction& loss,
                                        const std::vector<std::string>& x_big) {
  for (const std::string& l : loss.x_labels) {
    if (std::find(x_big.begin(), x_big.end(), l) == x_big.end()) {
      return absl::InvalidArgumentError(absl::StrCat("label \"", l, "\" missing from the superset"));
    }
  }
  Matrix t(loss.num_actions(), x_big.size());
  for (size_t k = 0; k < x_big.size(); ++k) {
    auto it = std::find(loss.x_labels.begin(), loss.x_labels.end(), x_big[k]);
    if (it == loss.x_labels.end()) continue;
    const size_t x = static_cast<size_t>(it - loss.x_labels.begin());
    for (size_t w = 0; w < loss.num_actions(); ++w) t(w, k) = loss.table(w, x);
  }
  return LossFunction{loss.w_labels, x_big, std::move(t)};
}

absl::StatusOr<LossFunction> AddLosses(const LossFunction& a, const LossFunction& b) {
  if (a.x_labels != b.x_labels) return absl::InvalidArgumentError("losses range over different secrets");
  Matrix t(a.num_actions() * b.num_actions(), a.num_secrets());
  std::vector<std::string> labels;
  size_t r = 0;
  for (size_t i = 0; i < a.num_actions(); ++i) {
    for (size_t j = 0; j < b.num_actions(); ++j, ++r) {
      labels.push_back(absl::StrCat("(", a.w_labels[i], ",", b.w_labels[j], ")"));
      for (size_t x = 0; x < a.num_secrets(); ++x) t(r, x) = a.table(i, x) + b.table(j, x);
    }
  }
  return LossFunction{std::move(labels), a.x_labels, std::move(t)};
}

absl::StatusOr<LossFunction> ScaleLoss(const Vector& v, const LossFunction& loss) {
  if (v.size() != loss.num_secrets()) return absl::InvalidArgumentError("scale vector has the wrong length");
  for (const Scalar& s : v) {
    if (s < 0) return absl::InvalidArgumentError("scale vector has a negative entry");
  }
  LossFunction out = loss;
  for (size_t w = 0; w < out.num_actions(); ++w) {
    for (size_t x = 0; x < out.num_secrets(); ++x) out.table(w, x) *= v[x];
  }
  return out;
}

bool IsTrivial(const LossFunction& loss) {
  for (size_t star = 0; star < loss.num_actions(); ++star) {
    bool dominates = true;
    for (size_t x = 0; x < loss.num_secrets() && dominates; ++x) {
      for (size_t w = 0; w < loss.num_actions() && dominates; ++w) {
        dominates = loss.table(star, x) <= loss.table(w, x);
      }
    }
    if (dominates) return true;
  }
  return false;
}

std::string MonotoneClassName(MonotoneClass c) {
  switch (c) {
    case MonotoneClass::kTrivial: return "trivial";
    case MonotoneClass::kStrictlyMonotone: return "strictly_monotone";
    case MonotoneClass::kMonotone: return "monotone";
    case MonotoneClass::kNone: return "none";
  }
  return "none";
}

absl::StatusOr<MonotoneClassification> ClassifyMonotone(const LossFunction& loss,
                                                        const MetricSpace& space) {
  if (loss.x_labels != space.labels()) {
    return absl::InvalidArgumentError("loss secrets differ from the metric labels");
  }
  MonotoneClassification out;
  if (IsTrivial(loss)) {
    out.cls = MonotoneClass::kTrivial;
    return out;
  }
  const size_t nw = loss.num_actions(), nx = loss.num_secrets();
  if (nw > nx) {
    out.note = "more actions than secrets; no injection into X exists";
    return out;
  }
  // alpha(w) sits at distance 0, so it must be a row minimum, and every row
  // minimum equals m(0).
  std::vector<std::vector<size_t>> candidates(nw);
  Scalar m0;
  for (size_t w = 0; w < nw; ++w) {
    Scalar lo = loss.table(w, 0);
    for (size_t x = 1; x < nx; ++x) lo = std::min(lo, Scalar(loss.table(w, x)));
    if (w == 0) m0 = lo;
    if (lo != m0) {
      out.note = "row minima differ, so no single m(0) exists";
      return out;
    }
    for (size_t x = 0; x < nx; ++x) {
      if (loss.table(w, x) == lo) candidates[w].push_back(x);
    }
  }
  std::vector<size_t> alpha(nw);
  std::vector<bool> used(nx, false);
  bool found_monotone = false;
  std::vector<size_t> monotone_alpha;
  // Returns true once a strictly monotone witness is found.
  std::function<bool(size_t)> search = [&](size_t w) -> bool {
    if (w == nw) {
      if (Consistent(loss, space, alpha, /*strict=*/true)) return true;
      if (!found_monotone && Consistent(loss, space, alpha, /*strict=*/false)) {
        found_monotone = true;
        monotone_alpha = alpha;
      }
      return false;
    }
    for (size_t x : candidates[w]) {
      if (used[x]) continue;
      used[x] = true;
      alpha[w] = x;
      bool done = search(w + 1);
      used[x] = false;
      if (done) return true;
    }
    return false;
  };
  if (search(0)) {
    out.cls = MonotoneClass::kStrictlyMonotone;
    out.alpha = alpha;
  } else if (found_monotone) {
    out.cls = MonotoneClass::kMonotone;
    out.alpha = monotone_alpha;
  }
  return out;
}

}  // namespace mdp
