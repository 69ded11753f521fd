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

#ifndef MDP_CAPACITY_H_
#define MDP_CAPACITY_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/channel.h"
#include "mdp/lp.h"
#include "mdp/metric_space.h"
#include "mdp/scalar.h"

namespace mdp {

enum class CapacityMode { kMultiplicative, kAdditive };
enum class CapacityMethod { kLp, kClosedForm, kPerChannel };

absl::StatusOr<CapacityMode> ParseCapacityMode(std::string_view text);  // "mult" | "add"
std::string CapacityModeName(CapacityMode mode);
std::string CapacityMethodName(CapacityMethod method);

struct CapacityReport {
  CapacityMode mode = CapacityMode::kMultiplicative;
  Scalar value;
  CapacityMethod method = CapacityMethod::kLp;
  Channel witness;
  // 0 for exact spaces.
  int precision_digits = 0;
};

struct CapacityOptions {
  // Solve over orbit variables of the metric's symmetry group.
  bool use_symmetry = true;
  LpOptions lp;
};

// Permutations of X preserving stretch and tightness, at most `limit`.
std::vector<std::vector<size_t>> MetricAutomorphisms(const MetricSpace& space,
                                                     size_t limit = 5000);

// Whole-type capacity. The program has one variable per entry of an |X|x|X|
// channel, unit row sums, and m[i][j] <= stretch(i,k) m[k][j] for each
// oriented tight pair (i,k); constraints on non-tight pairs follow from these.
// Multiplicative maximises the trace; additive minimises it and reports
// 1 - optimum.
absl::StatusOr<CapacityReport> TypeCapacityLp(const MetricSpace& space, CapacityMode mode,
                                              const CapacityOptions& options = {});

// Line: mult (n(1-a)+2a)/(1+a) with a = 1/base, add from the truncated
// geometric mechanism. Discrete: mult n/(1+(n-1)a), add 1 - n/(1+(n-1)base).
absl::StatusOr<Scalar> TypeCapacityClosedForm(MetricKind kind, int n, const Scalar& base,
                                              CapacityMode mode);

CapacityReport ChannelCapacityReport(const Channel& c, CapacityMode mode);

}  // namespace mdp

#endif  // MDP_CAPACITY_H_
