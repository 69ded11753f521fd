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

#ifndef MDP_LP_H_
#define MDP_LP_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/scalar.h"

namespace mdp {

enum class Sense { kMinimize, kMaximize };

// Linear program over variables x:
//   optimize objective . x
//   subject to eq_lhs x = eq_rhs, le_lhs x <= le_rhs, x_i >= lower_bounds[i].
// A std::nullopt lower bound makes the variable free. An empty
// `lower_bounds` means every variable is >= 0.
struct LpProblem {
  Vector objective;
  Sense sense = Sense::kMinimize;
  Matrix eq_lhs;
  Vector eq_rhs;
  Matrix le_lhs;
  Vector le_rhs;
  std::vector<std::optional<Scalar>> lower_bounds;
};

struct LpResult {
  enum class Kind { kOptimal, kInfeasible, kUnbounded };
  Kind kind = Kind::kInfeasible;
  Scalar value;
  Vector point;
};

struct LpOptions {
  // Total pivots across both phases. Exceeding it is ResourceExhausted.
  int64_t max_iterations = 1'000'000;
};

// Exact two-phase primal simplex with Bland's rule.
absl::StatusOr<LpResult> LpOptimize(const LpProblem& problem,
                                    const LpOptions& options = {});

}  // namespace mdp

#endif  // MDP_LP_H_
