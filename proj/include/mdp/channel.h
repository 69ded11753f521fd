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

#ifndef MDP_CHANNEL_H_
#define MDP_CHANNEL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "mdp/metric_space.h"
#include "mdp/scalar.h"

namespace mdp {

// Row-stochastic matrix from secrets X to observations Y.
class Channel {
 public:
  Channel() = default;

  // Checks non-negativity and exact unit row sums. Empty `y_labels` are
  // filled with "y0", "y1", ...
  static absl::StatusOr<Channel> Create(std::vector<std::string> x_labels,
                                        std::vector<std::string> y_labels, Matrix m);
  // Labels default to "0".."n-1" and "y0"...
  static absl::StatusOr<Channel> FromMatrix(Matrix m);

  size_t num_inputs() const { return m_.rows(); }
  size_t num_outputs() const { return m_.cols(); }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }
  const Matrix& matrix() const { return m_; }
  const Scalar& operator()(size_t x, size_t y) const { return m_(x, y); }

  bool operator==(const Channel& other) const = default;

 private:
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
  Matrix m_;
};

std::vector<std::string> DefaultXLabels(size_t n);
std::vector<std::string> DefaultYLabels(size_t n);

// Weighted set of posteriors. Canonical form: outers > 0, no two equal
// inners, inners sorted in descending lexicographic order.
struct Hyper {
  Vector outers;
  std::vector<Vector> inners;

  size_t size() const { return outers.size(); }
  bool operator==(const Hyper& other) const = default;
};

// Validates, drops zero-weight entries, merges equal inners and sorts.
absl::StatusOr<Hyper> MakeHyper(Vector outers, std::vector<Vector> inners);

// Sum of outer_i * inner_i.
Vector ExpectedInner(const Hyper& h);

Vector UniformPrior(size_t n);
absl::Status ValidatePrior(const Vector& prior, size_t n);

absl::StatusOr<Channel> GeometricTruncated(int n, const Scalar& alpha);
absl::StatusOr<Channel> RandomResponse(int n, const Scalar& alpha);
absl::StatusOr<Channel> RrDual(int n, const Scalar& alpha);
absl::StatusOr<Channel> BinaryOptimal(const MetricSpace& space);
absl::StatusOr<Channel> TrivialChannel(int n);

absl::StatusOr<Hyper> ToHyper(const Channel& c, const Vector& prior);
// One column per inner, in canonical inner order.
absl::StatusOr<Channel> FromHyper(const Hyper& h,
                                  std::vector<std::string> x_labels = {});

// Keeps rows in the order given. Rows are not renormalised; columns that
// become all-zero are dropped.
absl::StatusOr<Channel> Restrict(const Channel& c, const std::vector<size_t>& rows);
absl::StatusOr<Channel> RestrictByLabels(const Channel& c,
                                         const std::vector<std::string>& labels);

// Columns of c1 scaled by p followed by columns of c2 scaled by 1-p.
absl::StatusOr<Channel> ExternalChoice(const Channel& c1, const Channel& c2,
                                       const Scalar& p);

struct DpViolation {
  size_t x = 0;
  size_t x2 = 0;
  size_t y = 0;
  // C[x,y] / C[x2,y]; nullopt stands for an infinite ratio.
  std::optional<Scalar> ratio;
};

// Empty result means the channel is dx-private. Tight pairs are checked in
// both orientations; `all_pairs` checks every ordered pair instead.
absl::StatusOr<std::vector<DpViolation>> CheckDxPrivate(const Channel& c,
                                                        const MetricSpace& space,
                                                        bool all_pairs = false);

// Posterior form of the same test on every inner of a hyper.
bool HyperSatisfiesDx(const Hyper& h, const MetricSpace& space);
bool DistributionSatisfiesDx(const Vector& delta, const MetricSpace& space);

}  // namespace mdp

#endif  // MDP_CHANNEL_H_
