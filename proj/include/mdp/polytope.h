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

#ifndef MDP_POLYTOPE_H_
#define MDP_POLYTOPE_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/channel.h"
#include "mdp/metric_space.h"
#include "mdp/scalar.h"

namespace mdp {

// delta[x] - factor * delta[x2] <= 0
struct Halfspace {
  size_t x = 0;
  size_t x2 = 0;
  Scalar factor;
};

// Posteriors delta with sum 1 satisfying every halfspace.
struct ConstraintSystem {
  size_t n = 0;
  std::vector<Halfspace> halfspaces;
};

// Both orientations of every tight pair, in tight-pair order.
ConstraintSystem BuildConstraints(const MetricSpace& space);

struct EnumerationOptions {
  // Vertices: candidate halfspace subsets solved. Kernels: search nodes.
  int64_t max_candidates = 200'000'000;
  int threads = 1;
};

// Extreme points of the polytope, deduplicated and sorted in descending
// lexicographic order. ResourceExhausted once max_candidates is exceeded.
absl::StatusOr<std::vector<Vector>> EnumerateVertices(const ConstraintSystem& cs,
                                                      const EnumerationOptions& options = {});

struct KernelMechanism {
  // Indices into the vertex list, increasing.
  std::vector<size_t> vertex_indices;
  Hyper hyper;
};

// Linearly independent vertex subsets whose cone contains the uniform
// distribution with strictly positive weights. Sorted by vertex indices.
absl::StatusOr<std::vector<KernelMechanism>> EnumerateKernels(
    const std::vector<Vector>& vertices, size_t n, const EnumerationOptions& options = {});

bool SatisfiesConstraints(const Vector& delta, const ConstraintSystem& cs);
bool IsVertex(const Vector& delta, const ConstraintSystem& cs);
bool IsVertexMechanism(const Hyper& h, const ConstraintSystem& cs);
bool IsKernel(const Hyper& h, const ConstraintSystem& cs);

// A vertex mechanism refined by c. c must be dx-private.
absl::StatusOr<Hyper> AntiRefine(const Channel& c, const std::vector<Vector>& vertices);

// Greedy split of a vertex hyper into weighted kernels, in kernel order.
absl::StatusOr<std::vector<std::pair<Scalar, KernelMechanism>>> DecomposeVertexMechanism(
    const Hyper& v, const std::vector<KernelMechanism>& kernels);

}  // namespace mdp

#endif  // MDP_POLYTOPE_H_
