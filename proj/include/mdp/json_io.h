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

#ifndef MDP_JSON_IO_H_
#define MDP_JSON_IO_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "mdp/capacity.h"
#include "mdp/channel.h"
#include "mdp/loss.h"
#include "mdp/metric_space.h"
#include "mdp/optimality.h"
#include "mdp/polytope.h"

namespace mdp {

using Json = nlohmann::json;

// Parse errors carry "line L, column C" computed from the failing byte.
absl::StatusOr<Json> ParseJson(const std::string& text);
absl::StatusOr<Json> ReadJsonFile(const std::string& path);

// Scalars are written as "p/q" strings. Reading also accepts JSON numbers
// and decimal strings.
absl::StatusOr<Scalar> ScalarFromJson(const Json& j);
Json ScalarToJson(const Scalar& s);
absl::StatusOr<Vector> VectorFromJson(const Json& j);
Json VectorToJson(const Vector& v);

absl::StatusOr<MetricSpec> MetricSpecFromJson(const Json& j);
// Only the fields used by the kind, keys sorted; feeds cache keys.
Json MetricSpecToJson(const MetricSpec& spec);

absl::StatusOr<Channel> ChannelFromJson(const Json& j);
Json ChannelToJson(const Channel& c);
absl::StatusOr<Hyper> HyperFromJson(const Json& j);
Json HyperToJson(const Hyper& h);
absl::StatusOr<LossFunction> LossFromJson(const Json& j);
Json LossToJson(const LossFunction& l);
// A bare array or {"prior": [...]}.
absl::StatusOr<Vector> PriorFromJson(const Json& j);

Json VerticesToJson(const std::vector<Vector>& vertices);
absl::StatusOr<std::vector<Vector>> VerticesFromJson(const Json& j);
Json KernelsToJson(const std::vector<KernelMechanism>& kernels);
absl::StatusOr<std::vector<KernelMechanism>> KernelsFromJson(const Json& j);

Json CapacityReportToJson(const CapacityReport& r);
Json VerdictToJson(const OptimalityVerdict& v);

}  // namespace mdp

#endif  // MDP_JSON_IO_H_
