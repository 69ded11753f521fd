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

#ifndef MDP_CACHE_H_
#define MDP_CACHE_H_

#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "mdp/json_io.h"
#include "mdp/metric_space.h"
#include "mdp/polytope.h"

namespace mdp {

inline constexpr char kToolVersion[] = "mdp-workbench 1.0.0";

std::string Sha256Hex(const std::string& data);

// Content-addressed store of enumeration results. Files are named by the
// SHA-256 of the canonical metric JSON and the operation tag.
class ResultCache {
 public:
  ResultCache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

  // $MDP_CACHE_DIR, else ~/.cache/mdp-workbench.
  static std::string DefaultDir();
  static std::string Key(const MetricSpec& spec, const std::string& op);

  bool enabled() const { return enabled_; }
  const std::string& dir() const { return dir_; }

  // nullopt on a miss or a stale/corrupt entry.
  std::optional<Json> Load(const std::string& key, const std::string& op) const;
  absl::Status Store(const std::string& key, const std::string& op, const Json& payload) const;

 private:
  std::string Path(const std::string& key) const;

  std::string dir_;
  bool enabled_;
};

// Enumerations that go through the cache. With `verify` a hit is recomputed
// and a payload that differs byte for byte yields DataLossError.
absl::StatusOr<std::vector<Vector>> CachedVertices(const MetricSpace& space,
                                                   const EnumerationOptions& options,
                                                   const ResultCache& cache, bool verify);
absl::StatusOr<std::vector<KernelMechanism>> CachedKernels(const MetricSpace& space,
                                                           const std::vector<Vector>& vertices,
                                                           const EnumerationOptions& options,
                                                           const ResultCache& cache, bool verify);

}  // namespace mdp

#endif  // MDP_CACHE_H_
