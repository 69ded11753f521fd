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

#ifndef MDP_LEAKAGE_H_
#define MDP_LEAKAGE_H_

#include "absl/status/statusor.h"
#include "mdp/channel.h"
#include "mdp/loss.h"
#include "mdp/scalar.h"

namespace mdp {

// min_w sum_x prior[x] loss(w, x)
absl::StatusOr<Scalar> PriorUncertainty(const LossFunction& loss, const Vector& prior);
// sum_y min_w sum_x prior[x] C[x,y] loss(w, x)
absl::StatusOr<Scalar> PosteriorUncertainty(const LossFunction& loss, const Vector& prior,
                                            const Channel& c);

// Gain counterparts: max replaces min.
absl::StatusOr<Scalar> PriorVulnerability(const LossFunction& gain, const Vector& prior);
absl::StatusOr<Scalar> PosteriorVulnerability(const LossFunction& gain, const Vector& prior,
                                              const Channel& c);

struct Refinement {
  bool refines = false;
  // |Y_B| x |Y_A| post-processing with B * witness = A; set when refines.
  Matrix witness;
};

// Decides whether A is a post-processing of B.
absl::StatusOr<Refinement> Refines(const Channel& b, const Channel& a);

// sum_y max_x C[x,y]
Scalar MultCapacityChannel(const Channel& c);
// 1 - sum_y min_x C[x,y]
Scalar AddCapacityChannel(const Channel& c);

}  // namespace mdp

#endif  // MDP_LEAKAGE_H_
