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

#ifndef MDP_METRIC_SPACE_H_
#define MDP_METRIC_SPACE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "mdp/scalar.h"

namespace mdp {

enum class MetricKind { kLine, kDiscrete, kGrid, kHamming, kCustom };

absl::StatusOr<MetricKind> ParseMetricKind(std::string_view name);
std::string MetricKindName(MetricKind kind);

// Inputs to MakeMetric. Only the fields relevant to `kind` are read:
// line/discrete use `n`, grid uses `width`/`height`, hamming uses `bits`,
// custom uses `distances`.
struct MetricSpec {
  MetricKind kind = MetricKind::kLine;
  int n = 0;
  int width = 0;
  int height = 0;
  int bits = 0;
  Scalar base = 2;
  int precision_digits = 30;
  std::vector<Vector> distances;
};

MetricSpec LineSpec(int n, const Scalar& base = 2);
MetricSpec DiscreteSpec(int n, const Scalar& base = 2);
MetricSpec GridSpec(int width, int height, const Scalar& base = 2,
                    int precision_digits = 30);
MetricSpec HammingSpec(int bits, const Scalar& base = 2);
MetricSpec CustomSpec(std::vector<Vector> distances, const Scalar& base = 2,
                      int precision_digits = 30);

enum class MetricMode { kExact, kApproximate };

// A finite metric privacy type. stretch(x, x') stands for e^{eps d(x, x')}
// with eps folded into the metric, so base = e^eps.
class MetricSpace {
 public:
  size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Scalar& base() const { return base_; }
  MetricMode mode() const { return mode_; }
  int precision_digits() const { return precision_digits_; }
  const MetricSpec& spec() const { return spec_; }
  // True when this space was produced by RestrictSpace.
  bool restricted() const { return restricted_; }

  const Scalar& stretch(size_t x, size_t y) const { return stretch_(x, y); }
  const Matrix& stretch_matrix() const { return stretch_; }
  absl::StatusOr<Scalar> Stretch(std::string_view x, std::string_view y) const;

  // Exact squared distance in the source geometry, before any rounding.
  const Scalar& squared_distance(size_t x, size_t y) const { return squared_distance_(x, y); }

  // True when y lies strictly between x and z: d(x,y) + d(y,z) = d(x,z).
  bool between(size_t x, size_t y, size_t z) const {
    return between_[(x * size() + y) * size() + z];
  }

  // Unordered pairs (i < j) whose constraint is not implied by others, sorted.
  const std::vector<std::pair<size_t, size_t>>& tight_pairs() const { return tight_pairs_; }
  bool is_tight(size_t x, size_t y) const;

  absl::StatusOr<size_t> IndexOf(std::string_view label) const;

 private:
  friend absl::StatusOr<MetricSpace> MakeMetric(const MetricSpec& spec);
  friend absl::StatusOr<MetricSpace> RestrictSpace(const MetricSpace& space,
                                                   const std::vector<size_t>& subset);
  void ComputeTightPairs();

  std::vector<std::string> labels_;
  std::map<std::string, size_t, std::less<>> index_;
  Scalar base_;
  MetricMode mode_ = MetricMode::kExact;
  int precision_digits_ = 30;
  MetricSpec spec_;
  bool restricted_ = false;
  Matrix stretch_;
  Matrix squared_distance_;
  std::vector<bool> between_;
  std::vector<std::pair<size_t, size_t>> tight_pairs_;
};

absl::StatusOr<MetricSpace> MakeMetric(const MetricSpec& spec);

// Sub-metric on `subset` (indices into space.labels(), kept in the given
// order). Tight pairs are recomputed from betweenness within the subset.
absl::StatusOr<MetricSpace> RestrictSpace(const MetricSpace& space,
                                          const std::vector<size_t>& subset);

// Checks stretch symmetry, unit diagonal, stretch >= 1 and the
// multiplicative triangle inequality. Approximate spaces get a relative
// slack of 10^(2 - precision_digits).
absl::Status ValidateMetricSpace(const MetricSpace& space);

// base^e rounded to `digits` significant decimal digits; exact when e is an
// integer.
Scalar PowerRounded(const Scalar& base, const Scalar& squared_exponent, int digits,
                    bool* exact);

}  // namespace mdp

#endif  // MDP_METRIC_SPACE_H_
