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

#ifndef MDP_LOSS_H_
#define MDP_LOSS_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/metric_space.h"
#include "mdp/scalar.h"

namespace mdp {

// Non-negative table over actions W and secrets X; entry (w, x) is the loss
// of acting w when the secret is x. Gain tables use the same shape.
struct LossFunction {
  std::vector<std::string> w_labels;
  std::vector<std::string> x_labels;
  Matrix table;

  size_t num_actions() const { return table.rows(); }
  size_t num_secrets() const { return table.cols(); }
  bool operator==(const LossFunction& other) const = default;
};

// Empty label lists get defaults ("w0".. and "0"..).
absl::StatusOr<LossFunction> MakeLoss(std::vector<std::string> w_labels,
                                      std::vector<std::string> x_labels, Matrix table);

LossFunction BinLoss(size_t n);
LossFunction NibLoss(size_t n);
LossFunction AvgLoss(size_t n);

// loss(w, x) = m(d(x, alpha(w))). `m` maps squared distances to values and
// must be non-decreasing; alpha is an injection from actions into X.
absl::StatusOr<LossFunction> MonotoneLoss(const MetricSpace& space,
                                          const std::vector<std::pair<Scalar, Scalar>>& m,
                                          const std::vector<size_t>& alpha);
// Same, with m keyed by plain (rational) distances.
absl::StatusOr<LossFunction> MonotoneLossFromDistances(
    const MetricSpace& space, const std::vector<std::pair<Scalar, Scalar>>& m,
    const std::vector<size_t>& alpha);

// Keeps the given secret columns, in order.
absl::StatusOr<LossFunction> RestrictLoss(const LossFunction& loss,
                                          const std::vector<std::string>& x_subset);
// Pads with zero columns so the loss ranges over `x_big` (a superset).
absl::StatusOr<LossFunction> ExtendLoss(const LossFunction& loss,
                                        const std::vector<std::string>& x_big);
// Actions W1 x W2 labelled "(a,b)", losses added.
absl::StatusOr<LossFunction> AddLosses(const LossFunction& a, const LossFunction& b);
// loss'(w, x) = v[x] * loss(w, x).
absl::StatusOr<LossFunction> ScaleLoss(const Vector& v, const LossFunction& loss);

// Some action is pointwise no worse than every other.
bool IsTrivial(const LossFunction& loss);

enum class MonotoneClass { kTrivial, kStrictlyMonotone, kMonotone, kNone };
std::string MonotoneClassName(MonotoneClass c);

struct MonotoneClassification {
  MonotoneClass cls = MonotoneClass::kNone;
  std::string note;
  // Witness injection for the monotone classes.
  std::vector<size_t> alpha;
};

absl::StatusOr<MonotoneClassification> ClassifyMonotone(const LossFunction& loss,
                                                        const MetricSpace& space);

}  // namespace mdp

#endif  // MDP_LOSS_H_
