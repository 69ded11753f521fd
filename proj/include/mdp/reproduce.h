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

#ifndef MDP_REPRODUCE_H_
#define MDP_REPRODUCE_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/cache.h"
#include "mdp/json_io.h"

namespace mdp {

enum class CellFlag { kMatch, kMismatch, kSkipped, kNotApplicable };
std::string CellFlagName(CellFlag flag);  // match, mismatch, skipped, n/a

struct ReproduceCell {
  std::string value = "-";
  CellFlag flag = CellFlag::kNotApplicable;
};

struct ReproduceRow {
  std::string dims;
  ReproduceCell vertices;
  ReproduceCell kernels;
  ReproduceCell mult;
  ReproduceCell add;
};

struct ReproduceResult {
  std::string table;
  std::vector<ReproduceRow> rows;
  // No cell is a mismatch.
  bool all_match() const;
};

struct ReproduceOptions {
  std::string table;  // euclid, discrete, grid, hamming
  // Largest n (euclid, discrete), bits (hamming) or side (grid). Defaults
  // are 5, 4, 4 and 3.
  std::optional<int> max_n;
  // Also run the long kernel enumerations.
  bool long_runs = false;
  EnumerationOptions enumeration;
  const ResultCache* cache = nullptr;
  bool verify_cache = false;
};

absl::StatusOr<ReproduceResult> Reproduce(const ReproduceOptions& options);

// Dims,Vertices,Kernels,MultCapacity,AddCapacity then one flag column each.
std::string ReproduceCsv(const ReproduceResult& result);
Json ReproduceJson(const ReproduceResult& result);

}  // namespace mdp

#endif  // MDP_REPRODUCE_H_
