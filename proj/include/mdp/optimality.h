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

#ifndef MDP_OPTIMALITY_H_
#define MDP_OPTIMALITY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/channel.h"
#include "mdp/loss.h"
#include "mdp/lp.h"
#include "mdp/metric_space.h"
#include "mdp/polytope.h"

namespace mdp {

enum class VerdictKind { kOptimal, kCounterexample, kUnknown };
std::string VerdictName(VerdictKind kind);

struct OptimalityVerdict {
  VerdictKind kind = VerdictKind::kUnknown;
  // Counterexample only: U(prior, M) - U(prior, rival) = margin > 0.
  Vector prior;
  size_t rival_index = 0;
  Hyper rival;
  Scalar margin;
  // Unknown only.
  std::string reason;
  int64_t samples_tried = 0;
};

struct OptimalityOptions {
  bool exact = true;
  // Sampled mode: random priors on top of the simplex vertices and uniform.
  int samples = 1000;
  uint64_t seed = 1;
  // Exact mode refuses when the pruned strategy count exceeds this.
  int64_t strategy_budget = 2'000'000;
  LpOptions lp;
};

// Decides whether m has expected loss no larger than every kernel at every
// prior. `kernels` must be the full kernel set of m's privacy type.
absl::StatusOr<OptimalityVerdict> CheckUniversalLOptimal(
    const Channel& m, const LossFunction& loss, const std::vector<KernelMechanism>& kernels,
    const OptimalityOptions& options = {});

struct SweepReport {
  std::vector<OptimalityVerdict> verdicts;  // one per kernel
  // Every two-secret restriction of the loss is non-trivial.
  bool pairwise_non_trivial = false;
  // Discrete space, n > 2 and pairwise non-trivial loss.
  bool impossibility_applies = false;
  // When it applies, every verdict is a counterexample.
  bool consistent = true;
};

absl::StatusOr<SweepReport> ImpossibilitySweep(const MetricSpace& space, const LossFunction& loss,
                                               const std::vector<KernelMechanism>& kernels,
                                               const OptimalityOptions& options = {});

struct ExistenceWitness {
  Channel mechanism;
  LossFunction loss;
  size_t x1 = 0;
  size_t x2 = 0;
};

// Two-posterior mechanism over a closest pair together with the 0-1 loss on
// that pair, padded with zeros to all of X.
absl::StatusOr<ExistenceWitness> ExistenceConstruction(const MetricSpace& space);

}  // namespace mdp

#endif  // MDP_OPTIMALITY_H_
