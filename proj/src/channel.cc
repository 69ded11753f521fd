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

#include "mdp/channel.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

absl::Status CheckAlpha(const Scalar& alpha) {
  if (alpha <= 0 || alpha > 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in (0,1], got ", ToString(alpha)));
  }
  return absl::OkStatus();
}

Scalar Power(const Scalar& base, int e) {
  Scalar r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Descending lexicographic order.
bool InnerBefore(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// Builds a channel from the non-zero columns of m.
absl::StatusOr<Channel> DropZeroColumns(std::vector<std::string> x_labels,
                                        std::vector<std::string> y_labels, const Matrix& m) {
  std::vector<size_t> keep;
  for (size_t c = 0; c < m.cols(); ++c) {
    for (size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0) {
        keep.push_back(c);
        break;
      }
    }
  }
  Matrix out(m.rows(), keep.size());
  std::vector<std::string> labels;
  for (size_t k = 0; k < keep.size(); ++k) {
    labels.push_back(y_labels[keep[k]]);
    for (size_t r = 0; r < m.rows(); ++r) out(r, k) = m(r, keep[k]);
  }
  return Channel::Create(std::move(x_labels), std::move(labels), std::move(out));
}

}  // namespace

std::vector<std::string> DefaultXLabels(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<std::string> DefaultYLabels(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(absl::StrCat("y", i));
  return out;
}

absl::StatusOr<Channel> Channel::Create(std::vector<std::string> x_labels,
                                        std::vector<std::string> y_labels, Matrix m) {
  if (x_labels.empty()) x_labels = DefaultXLabels(m.rows());
  if (y_labels.empty()) y_labels = DefaultYLabels(m.cols());
  if (x_labels.size() != m.rows() || y_labels.size() != m.cols()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "labels (", x_labels.size(), "x", y_labels.size(), ") do not match matrix (", m.rows(),
        "x", m.cols(), ")"));
  }
  if (m.rows() == 0) return absl::InvalidArgumentError("channel has no rows");
  if (std::set<std::string>(x_labels.begin(), x_labels.end()).size() != x_labels.size()) {
    return absl::InvalidArgumentError("duplicate x label");
  }
  for (size_t r = 0; r < m.rows(); ++r) {
    Scalar total = 0;
    for (size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("negative entry at (", x_labels[r], ",", y_labels[c], ")"));
      }
      total += m(r, c);
    }
    if (total != 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", x_labels[r], " sums to ", ToString(total), ", not 1"));
    }
  }
  Channel ch;
  ch.x_labels_ = std::move(x_labels);
  ch.y_labels_ = std::move(y_labels);
  ch.m_ = std::move(m);
  return ch;
}

absl::StatusOr<Channel> Channel::FromMatrix(Matrix m) {
  return Create({}, {}, std::move(m));
}

absl::StatusOr<Hyper> MakeHyper(Vector outers, std::vector<Vector> inners) {
  if (outers.size() != inners.size()) {
    return absl::InvalidArgumentError("outers and inners differ in length");
  }
  if (inners.empty()) return absl::InvalidArgumentError("hyper has no inners");
  const size_t n = inners.front().size();
  Scalar total = 0;
  std::map<Vector, Scalar, decltype(&InnerBefore)> merged(&InnerBefore);
  for (size_t i = 0; i < inners.size(); ++i) {
    if (inners[i].size() != n) return absl::InvalidArgumentError("inners differ in length");
    if (outers[i] < 0) return absl::InvalidArgumentError("negative outer");
    Scalar mass = 0;
    for (const Scalar& v : inners[i]) {
      if (v < 0) return absl::InvalidArgumentError("negative inner entry");
      mass += v;
    }
    if (mass != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("inner ", i, " sums to ", ToString(mass), ", not 1"));
    }
    total += outers[i];
    if (outers[i] == 0) continue;
    merged[std::move(inners[i])] += outers[i];
  }
  if (total != 1) {
    return absl::InvalidArgumentError(absl::StrCat("outers sum to ", ToString(total), ", not 1"));
  }
  Hyper h;
  for (auto& [inner, outer] : merged) {
    h.inners.push_back(inner);
    h.outers.push_back(outer);
  }
  return h;
}

Vector ExpectedInner(const Hyper& h) {
  Vector out(h.inners.empty() ? 0 : h.inners.front().size());
  for (size_t i = 0; i < h.size(); ++i) {
    for (size_t x = 0; x < out.size(); ++x) out[x] += h.outers[i] * h.inners[i][x];
  }
  return out;
}

Vector UniformPrior(size_t n) { return Vector(n, Scalar(1, static_cast<unsigned long>(n))); }

absl::Status ValidatePrior(const Vector& prior, size_t n) {
  if (prior.size() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("prior has ", prior.size(), " entries, expected ", n));
  }
  Scalar total = 0;
  for (const Scalar& v : prior) {
    if (v < 0) return absl::InvalidArgumentError("prior has a negative entry");
    total += v;
  }
  if (total != 1) {
    return absl::InvalidArgumentError(absl::StrCat("prior sums to ", ToString(total)));
  }
  return absl::OkStatus();
}

absl::StatusOr<Channel> GeometricTruncated(int n, const Scalar& alpha) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (absl::Status s = CheckAlpha(alpha); !s.ok()) return s;
  const size_t m = static_cast<size_t>(n);
  Matrix g(m, m);
  if (n == 1) {
    g(0, 0) = 1;
    return Channel::FromMatrix(std::move(g));
  }
  const Scalar interior = (1 - alpha) / (1 + alpha);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Scalar v;
      if (y == 0) {
        v = Power(alpha, x) / (1 + alpha);
      } else if (y == n - 1) {
        v = Power(alpha, n - 1 - x) / (1 + alpha);
      } else {
        v = interior * Power(alpha, std::abs(x - y));
      }
      g(static_cast<size_t>(x), static_cast<size_t>(y)) = v;
    }
  }
  return Channel::FromMatrix(std::move(g));
}

absl::StatusOr<Channel> RandomResponse(int n, const Scalar& alpha) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (absl::Status s = CheckAlpha(alpha); !s.ok()) return s;
  const size_t m = static_cast<size_t>(n);
  const Scalar k = 1 + (n - 1) * alpha;
  Matrix r(m, m);
  for (size_t x = 0; x < m; ++x) {
    for (size_t y = 0; y < m; ++y) r(x, y) = x == y ? Scalar(1 / k) : Scalar(alpha / k);
  }
  return Channel::FromMatrix(std::move(r));
}

absl::StatusOr<Channel> RrDual(int n, const Scalar& alpha) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (absl::Status s = CheckAlpha(alpha); !s.ok()) return s;
  const size_t m = static_cast<size_t>(n);
  const Scalar beta = 1 / alpha;
  const Scalar k = 1 + (n - 1) * beta;
  Matrix r(m, m);
  for (size_t x = 0; x < m; ++x) {
    for (size_t y = 0; y < m; ++y) r(x, y) = x == y ? Scalar(1 / k) : Scalar(beta / k);
  }
  return Channel::FromMatrix(std::move(r));
}

absl::StatusOr<Channel> BinaryOptimal(const MetricSpace& space) {
  if (space.size() != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("binary_optimal needs exactly 2 secrets, got ", space.size()));
  }
  const Scalar& s = space.stretch(0, 1);
  const Scalar k = 1 / (1 + s);
  Matrix t(2, 2);
  t(0, 0) = s * k;
  t(0, 1) = k;
  t(1, 0) = k;
  t(1, 1) = s * k;
  return Channel::Create(space.labels(), {}, std::move(t));
}

absl::StatusOr<Channel> TrivialChannel(int n) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  Matrix m(static_cast<size_t>(n), 1);
  for (size_t x = 0; x < m.rows(); ++x) m(x, 0) = 1;
  return Channel::FromMatrix(std::move(m));
}

absl::StatusOr<Hyper> ToHyper(const Channel& c, const Vector& prior) {
  if (absl::Status s = ValidatePrior(prior, c.num_inputs()); !s.ok()) return s;
  Vector outers;
  std::vector<Vector> inners;
  for (size_t y = 0; y < c.num_outputs(); ++y) {
    Vector joint(c.num_inputs());
    Scalar mass = 0;
    for (size_t x = 0; x < c.num_inputs(); ++x) {
      joint[x] = prior[x] * c(x, y);
      mass += joint[x];
    }
    if (mass == 0) continue;
    for (Scalar& v : joint) v /= mass;
    outers.push_back(mass);
    inners.push_back(std::move(joint));
  }
  return MakeHyper(std::move(outers), std::move(inners));
}

absl::StatusOr<Channel> FromHyper(const Hyper& h, std::vector<std::string> x_labels) {
  absl::StatusOr<Hyper> canon = MakeHyper(h.outers, h.inners);
  if (!canon.ok()) return canon.status();
  const Vector prior = ExpectedInner(*canon);
  for (size_t x = 0; x < prior.size(); ++x) {
    if (prior[x] == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("secret ", x, " has zero prior mass; the hyper cannot be inverted"));
    }
  }
  Matrix m(prior.size(), canon->size());
  for (size_t j = 0; j < canon->size(); ++j) {
    for (size_t x = 0; x < prior.size(); ++x) {
      m(x, j) = canon->outers[j] * canon->inners[j][x] / prior[x];
    }
  }
  return Channel::Create(std::move(x_labels), {}, std::move(m));
}

absl::StatusOr<Channel> Restrict(const Channel& c, const std::vector<size_t>& rows) {
  if (rows.empty()) return absl::InvalidArgumentError("empty subset");
  Matrix m(rows.size(), c.num_outputs());
  std::vector<std::string> labels;
  for (size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= c.num_inputs()) return absl::InvalidArgumentError("row index out of range");
    labels.push_back(c.x_labels()[rows[k]]);
    for (size_t y = 0; y < c.num_outputs(); ++y) m(k, y) = c(rows[k], y);
  }
  return DropZeroColumns(std::move(labels), c.y_labels(), m);
}

absl::StatusOr<Channel> RestrictByLabels(const Channel& c,
                                         const std::vector<std::string>& labels) {
  std::vector<size_t> rows;
  for (const std::string& l : labels) {
    auto it = std::find(c.x_labels().begin(), c.x_labels().end(), l);
    if (it == c.x_labels().end()) {
      return absl::InvalidArgumentError(absl::StrCat("unknown label \"", l, "\""));
    }
    rows.push_back(static_cast<size_t>(it - c.x_labels().begin()));
  }
  return Restrict(c, rows);
}

absl::StatusOr<Channel> ExternalChoice(const Channel& c1, const Channel& c2,
                                       const Scalar& p) {
  if (c1.x_labels() != c2.x_labels()) {
    return absl::InvalidArgumentError("external choice needs identical x labels");
  }
  if (p < 0 || p > 1) return absl::InvalidArgumentError("p must lie in [0,1]");
  const size_t a = c1.num_outputs(), b = c2.num_outputs();
  Matrix m(c1.num_inputs(), a + b);
  std::vector<std::string> labels;
  for (const std::string& y : c1.y_labels()) labels.push_back("1:" + y);
  for (const std::string& y : c2.y_labels()) labels.push_back("2:" + y);
  const Scalar q = 1 - p;
  for (size_t x = 0; x < m.rows(); ++x) {
    for (size_t y = 0; y < a; ++y) m(x, y) = p * c1(x, y);
    for (size_t y = 0; y < b; ++y) m(x, a + y) = q * c2(x, y);
  }
  return DropZeroColumns(c1.x_labels(), std::move(labels), m);
}

absl::StatusOr<std::vector<DpViolation>> CheckDxPrivate(const Channel& c,
                                                        const MetricSpace& space,
                                                        bool all_pairs) {
  if (c.x_labels() != space.labels()) {
    return absl::InvalidArgumentError("channel x labels differ from the metric labels");
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  if (all_pairs) {
    for (size_t x = 0; x < space.size(); ++x) {
      for (size_t x2 = 0; x2 < space.size(); ++x2) {
        if (x != x2) pairs.emplace_back(x, x2);
      }
    }
  } else {
    for (auto [x, x2] : space.tight_pairs()) {
      pairs.emplace_back(x, x2);
      pairs.emplace_back(x2, x);
    }
    std::sort(pairs.begin(), pairs.end());
  }
  std::vector<DpViolation> out;
  for (auto [x, x2] : pairs) {
    const Scalar& s = space.stretch(x, x2);
    for (size_t y = 0; y < c.num_outputs(); ++y) {
      if (c(x, y) <= s * c(x2, y)) continue;
      DpViolation v{x, x2, y, std::nullopt};
      if (c(x2, y) != 0) v.ratio = c(x, y) / c(x2, y);
      out.push_back(std::move(v));
    }
  }
  return out;
}

bool DistributionSatisfiesDx(const Vector& delta, const MetricSpace& space) {
  for (size_t x = 0; x < space.size(); ++x) {
    for (size_t x2 = 0; x2 < space.size(); ++x2) {
      if (x != x2 && delta[x] > space.stretch(x, x2) * delta[x2]) return false;
    }
  }
  return true;
}

bool HyperSatisfiesDx(const Hyper& h, const MetricSpace& space) {
  for (const Vector& inner : h.inners) {
    if (inner.size() != space.size() || !DistributionSatisfiesDx(inner, space)) return false;
  }
  return true;
}

}  // namespace mdp
