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

#include "mdp/optimality.h"

#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mdp/leakage.h"

namespace mdp {
namespace {

// Actions for column y of c that are not pointwise beaten (or tied by an
// earlier action) on the weighted losses c[x,y] * loss(w,x).
std::vector<size_t> UsefulActions(const Matrix& c, size_t y, const LossFunction& loss) {
  const size_t nw = loss.num_actions(), nx = c.rows();
  std::vector<Vector> weighted(nw, Vector(nx));
  for (size_t w = 0; w < nw; ++w) {
    for (size_t x = 0; x < nx; ++x) weighted[w][x] = c(x, y) * loss.table(w, x);
  }
  std::vector<size_t> keep;
  for (size_t w = 0; w < nw; ++w) {
    bool dominated = false;
    for (size_t v = 0; v < nw && !dominated; ++v) {
      if (v == w) continue;
      bool no_worse = true;
      bool equal = true;
      for (size_t x = 0; x < nx && no_worse; ++x) {
        no_worse = weighted[v][x] <= weighted[w][x];
        equal = equal && weighted[v][x] == weighted[w][x];
      }
      dominated = no_worse && (!equal || v < w);
    }
    if (!dominated) keep.push_back(w);
  }
  return keep;
}

struct Rival {
  Channel channel;
  std::vector<std::vector<size_t>> actions;  // per column
};

Vector RandomPrior(std::mt19937_64& rng, size_t n) {
  while (true) {
    Vector p(n);
    Scalar total = 0;
    for (size_t x = 0; x < n; ++x) {
      p[x] = static_cast<unsigned long>(rng() % 1001);
      total += p[x];
    }
    if (total == 0) continue;
    for (Scalar& v : p) v /= total;
    return p;
  }
}

absl::StatusOr<OptimalityVerdict> Certify(const Channel& m, const LossFunction& loss,
                                          const Rival& rival, const KernelMechanism& k,
                                          size_t index, const Vector& prior) {
  absl::StatusOr<Scalar> um = PosteriorUncertainty(loss, prior, m);
  if (!um.ok()) return um.status();
  absl::StatusOr<Scalar> uk = PosteriorUncertainty(loss, prior, rival.channel);
  if (!uk.ok()) return uk.status();
  OptimalityVerdict v;
  v.margin = *um - *uk;
  if (v.margin <= 0) return v;  // kind stays Unknown: not a counterexample
  v.kind = VerdictKind::kCounterexample;
  v.prior = prior;
  v.rival_index = index;
  v.rival = k.hyper;
  return v;
}

}  // namespace

std::string VerdictName(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kOptimal: return "optimal";
    case VerdictKind::kCounterexample: return "counterexample";
    case VerdictKind::kUnknown: return "unknown";
  }
  return "unknown";
}

absl::StatusOr<OptimalityVerdict> CheckUniversalLOptimal(
    const Channel& m, const LossFunction& loss, const std::vector<KernelMechanism>& kernels,
    const OptimalityOptions& options) {
  const size_t n = m.num_inputs();
  if (loss.num_secrets() != n) {
    return absl::InvalidArgumentError("loss and mechanism range over different secret counts");
  }
  std::vector<Rival> rivals;
  int64_t strategies = 0;
  for (const KernelMechanism& k : kernels) {
    absl::StatusOr<Channel> c = FromHyper(k.hyper);
    if (!c.ok()) return c.status();
    if (c->num_inputs() != n) return absl::InvalidArgumentError("kernel dimension differs from |X|");
    Rival r{*std::move(c), {}};
    int64_t count = 1;
    for (size_t y = 0; y < r.channel.num_outputs(); ++y) {
      r.actions.push_back(UsefulActions(r.channel.matrix(), y, loss));
      count = std::min<int64_t>(count * static_cast<int64_t>(r.actions.back().size()),
                                options.strategy_budget + 1);
    }
    strategies = std::min<int64_t>(strategies + count, options.strategy_budget + 1);
    rivals.push_back(std::move(r));
  }

  if (!options.exact) {
    std::vector<Vector> priors;
    for (size_t x = 0; x < n; ++x) {
      Vector e(n);
      e[x] = 1;
      priors.push_back(std::move(e));
    }
    priors.push_back(UniformPrior(n));
    std::mt19937_64 rng(options.seed);
    for (int i = 0; i < options.samples; ++i) priors.push_back(RandomPrior(rng, n));
    OptimalityVerdict out;
    for (size_t i = 0; i < rivals.size(); ++i) {
      for (const Vector& p : priors) {
        ++out.samples_tried;
        absl::StatusOr<OptimalityVerdict> v = Certify(m, loss, rivals[i], kernels[i], i, p);
        if (!v.ok()) return v.status();
        if (v->kind == VerdictKind::kCounterexample) {
          v->samples_tried = out.samples_tried;
          return v;
        }
      }
    }
    out.kind = VerdictKind::kUnknown;
    out.reason = "no counterexample among the sampled priors";
    return out;
  }

  if (strategies > options.strategy_budget) {
    OptimalityVerdict out;
    out.kind = VerdictKind::kUnknown;
    out.reason = absl::StrCat("kernel strategy count exceeds the budget of ",
                              options.strategy_budget);
    return out;
  }

  // Variables: prior (n), u_y per column of m, t. Maximise t subject to
  // u_y <= sum_x prior[x] m[x,y] loss(w,x) for the useful actions w of column
  // y, and t <= sum_y u_y - f_s(prior) for the rival strategy s. The optimum
  // over (prior, s) of t is the largest gap U(prior, m) - U(prior, K).
  const size_t ym = m.num_outputs();
  const size_t vars = n + ym + 1;
  LpProblem base;
  base.sense = Sense::kMaximize;
  base.objective = Vector(vars);
  base.objective[vars - 1] = 1;
  base.eq_lhs = Matrix(1, vars);
  for (size_t x = 0; x < n; ++x) base.eq_lhs(0, x) = 1;
  base.eq_rhs = {Scalar(1)};
  base.lower_bounds.assign(vars, Scalar(0));
  base.lower_bounds[vars - 1] = std::nullopt;
  base.le_lhs = Matrix(0, vars);
  for (size_t y = 0; y < ym; ++y) {
    for (size_t w : UsefulActions(m.matrix(), y, loss)) {
      Vector row(vars);
      row[n + y] = 1;
      for (size_t x = 0; x < n; ++x) row[x] = -(m(x, y) * loss.table(w, x));
      base.le_lhs.AppendRow(row);
      base.le_rhs.push_back(0);
    }
  }

  for (size_t i = 0; i < rivals.size(); ++i) {
    const Rival& r = rivals[i];
    const size_t yk = r.channel.num_outputs();
    std::vector<size_t> digit(yk, 0);
    while (true) {
      LpProblem lp = base;
      Vector row(vars);
      row[vars - 1] = 1;
      for (size_t y = 0; y < ym; ++y) row[n + y] = -1;
      for (size_t y = 0; y < yk; ++y) {
        const size_t w = r.actions[y][digit[y]];
        for (size_t x = 0; x < n; ++x) row[x] += r.channel(x, y) * loss.table(w, x);
      }
      lp.le_lhs.AppendRow(row);
      lp.le_rhs.push_back(0);
      absl::StatusOr<LpResult> res = LpOptimize(lp, options.lp);
      if (!res.ok()) return res.status();
      if (res->kind != LpResult::Kind::kOptimal) {
        return absl::InternalError("optimality program has no optimum");
      }
      if (res->value > 0) {
        Vector prior(res->point.begin(), res->point.begin() + static_cast<long>(n));
        absl::StatusOr<OptimalityVerdict> v = Certify(m, loss, r, kernels[i], i, prior);
        if (!v.ok()) return v.status();
        if (v->kind != VerdictKind::kCounterexample) {
          return absl::InternalError("counterexample failed exact re-verification");
        }
        return v;
      }
      size_t pos = 0;
      while (pos < yk && ++digit[pos] == r.actions[pos].size()) digit[pos++] = 0;
      if (pos == yk) break;
    }
  }
  OptimalityVerdict out;
  out.kind = VerdictKind::kOptimal;
  return out;
}

absl::StatusOr<SweepReport> ImpossibilitySweep(const MetricSpace& space, const LossFunction& loss,
                                               const std::vector<KernelMechanism>& kernels,
                                               const OptimalityOptions& options) {
  if (loss.x_labels != space.labels()) {
    return absl::InvalidArgumentError("loss secrets differ from the metric labels");
  }
  SweepReport report;
  report.pairwise_non_trivial = space.size() >= 2;
  for (size_t a = 0; a < space.size() && report.pairwise_non_trivial; ++a) {
    for (size_t b = a + 1; b < space.size() && report.pairwise_non_trivial; ++b) {
      absl::StatusOr<LossFunction> r =
          RestrictLoss(loss, {space.labels()[a], space.labels()[b]});
      if (!r.ok()) return r.status();
      report.pairwise_non_trivial = !IsTrivial(*r);
    }
  }
  report.impossibility_applies = space.spec().kind == MetricKind::kDiscrete &&
                                 !space.restricted() && space.size() > 2 &&
                                 report.pairwise_non_trivial;
  for (const KernelMechanism& k : kernels) {
    absl::StatusOr<Channel> c = FromHyper(k.hyper, space.labels());
    if (!c.ok()) return c.status();
    absl::StatusOr<OptimalityVerdict> v = CheckUniversalLOptimal(*c, loss, kernels, options);
    if (!v.ok()) return v.status();
    if (report.impossibility_applies && v->kind != VerdictKind::kCounterexample) {
      report.consistent = false;
    }
    report.verdicts.push_back(*std::move(v));
  }
  return report;
}

absl::StatusOr<ExistenceWitness> ExistenceConstruction(const MetricSpace& space) {
  const size_t n = space.size();
  if (n < 2) return absl::InvalidArgumentError("the construction needs at least two secrets");
  size_t x1 = 0, x2 = 1;
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (space.stretch(a, b) < space.stretch(x1, x2)) {
        x1 = a;
        x2 = b;
      }
    }
  }
  const Scalar alpha = 1 / space.stretch(x1, x2);
  const Scalar k = 1 + (n - 1) * alpha;
  const Scalar j = alpha + (n - 1);
  Vector d1(n, Scalar(alpha / k)), d2(n, Scalar(1 / j));
  d1[x1] = 1 / k;
  d2[x1] = alpha / j;
  absl::StatusOr<Hyper> h = MakeHyper({k / (k + j), j / (k + j)}, {d1, d2});
  if (!h.ok()) return h.status();
  absl::StatusOr<Channel> mech = FromHyper(*h, space.labels());
  if (!mech.ok()) return mech.status();
  Matrix t(2, 2);
  t(0, 1) = 1;
  t(1, 0) = 1;
  absl::StatusOr<LossFunction> pair_loss = MakeLoss(
      {space.labels()[x1], space.labels()[x2]}, {space.labels()[x1], space.labels()[x2]}, t);
  if (!pair_loss.ok()) return pair_loss.status();
  absl::StatusOr<LossFunction> lifted = ExtendLoss(*pair_loss, space.labels());
  if (!lifted.ok()) return lifted.status();
  return ExistenceWitness{*std::move(mech), *std::move(lifted), x1, x2};
}

}  // namespace mdp
