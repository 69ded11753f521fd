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

#include "mdp/leakage.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mdp/lp.h"

namespace mdp {
namespace {

absl::Status CheckShapes(const LossFunction& loss, const Vector& prior) {
  if (loss.num_actions() == 0) return absl::InvalidArgumentError("loss has no actions");
  if (prior.size() != loss.num_secrets()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prior has ", prior.size(), " entries but the loss covers ", loss.num_secrets(), " secrets"));
  }
  return absl::OkStatus();
}

// Best action value for the (unnormalised) weights `joint`.
Scalar Best(const LossFunction& loss, const Vector& joint, bool maximize) {
  Scalar best;
  for (size_t w = 0; w < loss.num_actions(); ++w) {
    Scalar v = 0;
    for (size_t x = 0; x < joint.size(); ++x) {
      if (joint[x] != 0) v += joint[x] * loss.table(w, x);
    }
    if (w == 0 || (maximize ? v > best : v < best)) best = v;
  }
  return best;
}

absl::StatusOr<Scalar> PriorValue(const LossFunction& loss, const Vector& prior, bool maximize) {
  if (absl::Status s = CheckShapes(loss, prior); !s.ok()) return s;
  return Best(loss, prior, maximize);
}

absl::StatusOr<Scalar> PosteriorValue(const LossFunction& loss, const Vector& prior,
                                      const Channel& c, bool maximize) {
  if (absl::Status s = CheckShapes(loss, prior); !s.ok()) return s;
  if (c.num_inputs() != prior.size()) {
    return absl::InvalidArgumentError("channel rows differ from the prior length");
  }
  Scalar total = 0;
  Vector joint(prior.size());
  for (size_t y = 0; y < c.num_outputs(); ++y) {
    for (size_t x = 0; x < prior.size(); ++x) joint[x] = prior[x] * c(x, y);
    total += Best(loss, joint, maximize);
  }
  return total;
}

}  // namespace

absl::StatusOr<Scalar> PriorUncertainty(const LossFunction& loss, const Vector& prior) {
  return PriorValue(loss, prior, false);
}

absl::StatusOr<Scalar> PosteriorUncertainty(const LossFunction& loss, const Vector& prior,
                                            const Channel& c) {
  return PosteriorValue(loss, prior, c, false);
}

absl::StatusOr<Scalar> PriorVulnerability(const LossFunction& gain, const Vector& prior) {
  return PriorValue(gain, prior, true);
}

absl::StatusOr<Scalar> PosteriorVulnerability(const LossFunction& gain, const Vector& prior,
                                              const Channel& c) {
  return PosteriorValue(gain, prior, c, true);
}

absl::StatusOr<Refinement> Refines(const Channel& b, const Channel& a) {
  if (b.x_labels() != a.x_labels()) {
    return absl::InvalidArgumentError("channels have different x labels");
  }
  const size_t nx = b.num_inputs(), nb = b.num_outputs(), na = a.num_outputs();
  const size_t vars = nb * na;
  LpProblem lp;
  lp.objective = Vector(vars);
  lp.eq_lhs = Matrix(nx * na + nb, vars);
  lp.eq_rhs = Vector(nx * na + nb);
  for (size_t x = 0; x < nx; ++x) {
    for (size_t j = 0; j < na; ++j) {
      const size_t r = x * na + j;
      for (size_t k = 0; k < nb; ++k) lp.eq_lhs(r, k * na + j) = b(x, k);
      lp.eq_rhs[r] = a(x, j);
    }
  }
  for (size_t k = 0; k < nb; ++k) {
    for (size_t j = 0; j < na; ++j) lp.eq_lhs(nx * na + k, k * na + j) = 1;
    lp.eq_rhs[nx * na + k] = 1;
  }
  absl::StatusOr<LpResult> r = LpOptimize(lp);
  if (!r.ok()) return r.status();
  Refinement out;
  if (r->kind != LpResult::Kind::kOptimal) return out;
  Matrix p(nb, na);
  for (size_t k = 0; k < nb; ++k) {
    for (size_t j = 0; j < na; ++j) p(k, j) = r->point[k * na + j];
  }
  absl::StatusOr<Matrix> product = Multiply(b.matrix(), p);
  if (!product.ok()) return product.status();
  if (!(*product == a.matrix())) {
    return absl::InternalError("refinement witness failed exact verification");
  }
  out.refines = true;
  out.witness = std::move(p);
  return out;
}

Scalar MultCapacityChannel(const Channel& c) {
  Scalar total = 0;
  for (size_t y = 0; y < c.num_outputs(); ++y) {
    Scalar hi = c(0, y);
    for (size_t x = 1; x < c.num_inputs(); ++x) {
      if (c(x, y) > hi) hi = c(x, y);
    }
    total += hi;
  }
  return total;
}

Scalar AddCapacityChannel(const Channel& c) {
  Scalar total = 0;
  for (size_t y = 0; y < c.num_outputs(); ++y) {
    Scalar lo = c(0, y);
    for (size_t x = 1; x < c.num_inputs(); ++x) {
      if (c(x, y) < lo) lo = c(x, y);
    }
    total += lo;
  }
  return 1 - total;
}

}  // namespace mdp
