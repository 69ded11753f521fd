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

#ifndef MDP_LINEAR_ALGEBRA_H_
#define MDP_LINEAR_ALGEBRA_H_

#include <vector>

#include "absl/status/statusor.h"
#include "mdp/scalar.h"

namespace mdp {

struct LinearSolution {
  enum class Kind { kUnique, kUnderdetermined, kInconsistent };
  Kind kind = Kind::kInconsistent;
  Vector x;  // set only for kUnique
};

// Solves A x = b exactly. A may be rectangular.
absl::StatusOr<LinearSolution> SolveLinearSystem(const Matrix& a, const Vector& b);

// Rank of a list of equal-length vectors. An empty list has rank 0.
absl::StatusOr<int> Rank(const std::vector<Vector>& vectors);
int Rank(const Matrix& m);

// Determinant of a square matrix.
absl::StatusOr<Scalar> Determinant(const Matrix& m);

}  // namespace mdp

#endif  // MDP_LINEAR_ALGEBRA_H_
