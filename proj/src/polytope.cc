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

#include "mdp/polytope.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mdp/linear_algebra.h"
#include "mdp/lp.h"

namespace mdp {

ConstraintSystem BuildConstraints(const MetricSpace& space) {
  ConstraintSystem cs;
  cs.n = space.size();
  for (auto [a, b] : space.tight_pairs()) {
    cs.halfspaces.push_back({a, b, space.stretch(a, b)});
    cs.halfspaces.push_back({b, a, space.stretch(b, a)});
  }
  return cs;
}

bool SatisfiesConstraints(const Vector& delta, const ConstraintSystem& cs) {
  if (delta.size() != cs.n || Sum(delta) != 1) return false;
  for (const Scalar& v : delta) {
    if (v < 0) return false;
  }
  for (const Halfspace& h : cs.halfspaces) {
    if (delta[h.x] > h.factor * delta[h.x2]) return false;
  }
  return true;
}

namespace {

class VertexSearch {
 public:
  VertexSearch(const ConstraintSystem& cs, int64_t limit) : cs_(cs), limit_(limit) {}

  absl::Status Run() {
    if (cs_.n == 1) {
      found_.insert(Vector{Scalar(1)});
      return absl::OkStatus();
    }
    std::vector<size_t> comp(cs_.n);
    std::iota(comp.begin(), comp.end(), 0);
    return Dfs(0, comp);
  }

  std::vector<Vector> Sorted() const {
    std::vector<Vector> out(found_.begin(), found_.end());
    std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& b) {
      return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    });
    return out;
  }

 private:
  absl::Status Dfs(size_t start, std::vector<size_t>& comp) {
    const size_t need = cs_.n - 1;
    if (chosen_.size() == need) return Leaf();
    for (size_t h = start; h < cs_.halfspaces.size(); ++h) {
      if (cs_.halfspaces.size() - h < need - chosen_.size()) break;
      const size_t a = comp[cs_.halfspaces[h].x], b = comp[cs_.halfspaces[h].x2];
      if (a == b) continue;
      std::vector<size_t> next = comp;
      for (size_t& c : next) {
        if (c == b) c = a;
      }
      chosen_.push_back(h);
      absl::Status s = Dfs(h + 1, next);
      chosen_.pop_back();
      if (!s.ok()) return s;
    }
    return absl::OkStatus();
  }

  absl::Status Leaf() {
    if (++candidates_ > limit_) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "vertex enumeration exceeded ", limit_, " candidate subsets"));
    }
    const size_t n = cs_.n;
    Matrix a(n, n);
    Vector rhs(n);
    for (size_t r = 0; r < chosen_.size(); ++r) {
      const Halfspace& h = cs_.halfspaces[chosen_[r]];
      a(r, h.x) += 1;
      a(r, h.x2) -= h.factor;
    }
    for (size_t c = 0; c < n; ++c) a(n - 1, c) = 1;
    rhs[n - 1] = 1;
    absl::StatusOr<LinearSolution> sol = SolveLinearSystem(a, rhs);
    if (!sol.ok()) return sol.status();
    if (sol->kind != LinearSolution::Kind::kUnique) return absl::OkStatus();
    for (const Scalar& v : sol->x) {
      if (v <= 0) return absl::OkStatus();
    }
    if (!SatisfiesConstraints(sol->x, cs_)) return absl::OkStatus();
    found_.insert(std::move(sol->x));
    return absl::OkStatus();
  }

  const ConstraintSystem& cs_;
  int64_t limit_;
  int64_t candidates_ = 0;
  std::vector<size_t> chosen_;
  std::set<Vector> found_;
};

// Integer arithmetic with overflow reporting; mpz_class never overflows.
bool MulSub(int64_t p, int64_t a, int64_t q, int64_t b, int64_t* out) {
  int64_t x, y;
  if (__builtin_mul_overflow(p, a, &x) || __builtin_mul_overflow(q, b, &y) ||
      __builtin_sub_overflow(x, y, out)) {
    return false;
  }
  return *out != INT64_MIN;
}
bool MulSub(const mpz_class& p, const mpz_class& a, const mpz_class& q, const mpz_class& b,
            mpz_class* out) {
  *out = p * a - q * b;
  return true;
}
void DivideContent(std::vector<int64_t>& row) {
  int64_t g = 0;
  for (int64_t v : row) g = std::gcd(g, v < 0 ? -v : v);
  if (g > 1) {
    for (int64_t& v : row) v /= g;
  }
}
void DivideContent(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const mpz_class& v : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (mpz_class& v : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

struct Overflow {};
struct LimitHit {};

// Depth-first search over increasing vertex subsets. Each node keeps a
// fraction-free echelon basis of the chosen vertices, augmented with the
// combination coefficients, and the all-ones vector reduced against it.
template <typename Int>
class KernelSearch {
 public:
  using Row = std::vector<Int>;

  KernelSearch(const std::vector<Row>& verts, size_t n, std::atomic<int64_t>* nodes,
               int64_t limit)
      : verts_(verts), n_(n), width_(2 * n + 1), nodes_(nodes), limit_(limit),
        rows_(n, Row(width_)), piv_(n), u_(n + 1, Row(width_)), chosen_(n) {
    for (size_t c = 0; c < n; ++c) u_[0][c] = 1;
    u_[0][2 * n] = 1;
  }

  // Explores every subset whose smallest index is `first`.
  void RunBranch(size_t first) { Extend(first, 0); }

  std::vector<std::vector<size_t>>& found() { return found_; }

 private:
  void Extend(size_t i, size_t d) {
    if (nodes_->fetch_add(1, std::memory_order_relaxed) >= limit_) throw LimitHit{};
    Row& row = rows_[d];
    std::fill(row.begin(), row.end(), Int(0));
    for (size_t c = 0; c < n_; ++c) row[c] = verts_[i][c];
    row[n_ + d] = 1;
    Int tmp;
    for (size_t k = 0; k < d; ++k) {
      const size_t c = piv_[k];
      if (row[c] == 0) continue;
      const Int f = row[c];
      const Int p = rows_[k][c];
      for (size_t j = 0; j < width_; ++j) {
        if (!MulSub(p, row[j], f, rows_[k][j], &tmp)) throw Overflow{};
        row[j] = tmp;
      }
      DivideContent(row);
    }
    size_t c = 0;
    while (c < n_ && row[c] == 0) ++c;
    if (c == n_) return;
    if (row[c] < 0) {
      for (Int& v : row) v = -v;
    }
    piv_[d] = c;
    chosen_[d] = i;
    Row& u = u_[d + 1];
    u = u_[d];
    if (u[c] != 0) {
      const Int f = u[c];
      const Int p = row[c];
      for (size_t j = 0; j < width_; ++j) {
        if (!MulSub(p, u[j], f, row[j], &tmp)) throw Overflow{};
        u[j] = tmp;
      }
      DivideContent(u);
    }
    bool in_span = true;
    for (size_t j = 0; j < n_ && in_span; ++j) in_span = u[j] == 0;
    if (in_span) {
      // 0 = lambda * 1 + sum mu_k v_k with lambda > 0.
      bool positive = true;
      for (size_t k = 0; k <= d && positive; ++k) positive = u[n_ + k] < 0;
      if (positive) found_.emplace_back(chosen_.begin(), chosen_.begin() + static_cast<long>(d + 1));
      return;
    }
    if (d + 1 >= n_) return;
    for (size_t next = i + 1; next < verts_.size(); ++next) Extend(next, d + 1);
  }

  const std::vector<Row>& verts_;
  size_t n_;
  size_t width_;
  std::atomic<int64_t>* nodes_;
  int64_t limit_;
  std::vector<Row> rows_;
  std::vector<size_t> piv_;
  std::vector<Row> u_;
  std::vector<size_t> chosen_;
  std::vector<std::vector<size_t>> found_;
};

std::vector<mpz_class> ScaleToIntegers(const Vector& v) {
  mpz_class l = 1;
  for (const Scalar& s : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.get_den_mpz_t());
  std::vector<mpz_class> out;
  mpz_class g = 0;
  for (const Scalar& s : v) {
    out.push_back(s.get_num() * (l / s.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1) {
    for (mpz_class& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

// Returns false on overflow (int64 only).
template <typename Int>
bool SearchAll(const std::vector<std::vector<Int>>& verts, size_t n, int threads,
               int64_t limit, std::vector<std::vector<size_t>>* found, bool* limit_hit) {
  std::atomic<int64_t> nodes{0};
  std::atomic<size_t> next_branch{0};
  std::atomic<bool> overflow{false};
  std::atomic<bool> hit{false};
  const size_t workers = static_cast<size_t>(std::max(1, threads));
  std::vector<std::vector<std::vector<size_t>>> results(workers);
  auto work = [&](size_t w) {
    KernelSearch<Int> search(verts, n, &nodes, limit);
    try {
      while (!overflow.load() && !hit.load()) {
        size_t b = next_branch.fetch_add(1);
        if (b >= verts.size()) break;
        search.RunBranch(b);
      }
    } catch (const Overflow&) {
      overflow.store(true);
    } catch (const LimitHit&) {
      hit.store(true);
    }
    results[w] = std::move(search.found());
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  if (overflow.load()) return false;
  *limit_hit = hit.load();
  for (auto& r : results) {
    for (auto& k : r) found->push_back(std::move(k));
  }
  return true;
}

}  // namespace

absl::StatusOr<std::vector<Vector>> EnumerateVertices(const ConstraintSystem& cs,
                                                      const EnumerationOptions& options) {
  if (cs.n == 0) return absl::InvalidArgumentError("constraint system has dimension 0");
  for (const Halfspace& h : cs.halfspaces) {
    if (h.x >= cs.n || h.x2 >= cs.n) return absl::InvalidArgumentError("halfspace index out of range");
  }
  VertexSearch search(cs, options.max_candidates);
  if (absl::Status s = search.Run(); !s.ok()) return s;
  return search.Sorted();
}

absl::StatusOr<std::vector<KernelMechanism>> EnumerateKernels(
    const std::vector<Vector>& vertices, size_t n, const EnumerationOptions& options) {
  for (const Vector& v : vertices) {
    if (v.size() != n) return absl::InvalidArgumentError("vertex length differs from n");
  }
  std::vector<std::vector<mpz_class>> big;
  for (const Vector& v : vertices) big.push_back(ScaleToIntegers(v));
  std::vector<std::vector<size_t>> found;
  bool limit_hit = false;
  bool fits = true;
  std::vector<std::vector<int64_t>> small;
  for (const auto& v : big) {
    std::vector<int64_t> row;
    for (const mpz_class& x : v) {
      if (!x.fits_slong_p()) fits = false;
      row.push_back(fits ? x.get_si() : 0);
    }
    small.push_back(std::move(row));
  }
  if (!fits || !SearchAll(small, n, options.threads, options.max_candidates, &found, &limit_hit)) {
    found.clear();
    SearchAll(big, n, options.threads, options.max_candidates, &found, &limit_hit);
  }
  if (limit_hit) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "kernel enumeration exceeded ", options.max_candidates, " search nodes"));
  }
  std::sort(found.begin(), found.end());

  const Vector uniform = UniformPrior(n);
  std::vector<KernelMechanism> kernels;
  for (const std::vector<size_t>& idx : found) {
    Matrix a(n, idx.size());
    std::vector<Vector> inners;
    for (size_t k = 0; k < idx.size(); ++k) {
      inners.push_back(vertices[idx[k]]);
      for (size_t r = 0; r < n; ++r) a(r, k) = vertices[idx[k]][r];
    }
    absl::StatusOr<LinearSolution> sol = SolveLinearSystem(a, uniform);
    if (!sol.ok()) return sol.status();
    if (sol->kind != LinearSolution::Kind::kUnique) {
      return absl::InternalError("kernel weights are not unique");
    }
    for (const Scalar& w : sol->x) {
      if (w <= 0) return absl::InternalError("kernel weight is not positive");
    }
    absl::StatusOr<Hyper> h = MakeHyper(sol->x, inners);
    if (!h.ok()) return h.status();
    kernels.push_back({idx, *std::move(h)});
  }
  return kernels;
}

bool IsVertex(const Vector& delta, const ConstraintSystem& cs) {
  if (!SatisfiesConstraints(delta, cs)) return false;
  for (const Scalar& v : delta) {
    if (v <= 0) return false;
  }
  if (cs.n == 1) return true;
  std::vector<Vector> tight;
  for (const Halfspace& h : cs.halfspaces) {
    if (delta[h.x] != h.factor * delta[h.x2]) continue;
    Vector row(cs.n);
    row[h.x] += 1;
    row[h.x2] -= h.factor;
    tight.push_back(std::move(row));
  }
  absl::StatusOr<int> r = Rank(tight);
  return r.ok() && static_cast<size_t>(*r) == cs.n - 1;
}

bool IsVertexMechanism(const Hyper& h, const ConstraintSystem& cs) {
  if (h.size() == 0) return false;
  Scalar total = 0;
  for (size_t i = 0; i < h.size(); ++i) {
    if (h.outers[i] <= 0) return false;
    if (!IsVertex(h.inners[i], cs)) return false;
    total += h.outers[i];
  }
  return total == 1 && ExpectedInner(h) == UniformPrior(cs.n);
}

bool IsKernel(const Hyper& h, const ConstraintSystem& cs) {
  if (!IsVertexMechanism(h, cs)) return false;
  absl::StatusOr<int> r = Rank(h.inners);
  return r.ok() && static_cast<size_t>(*r) == h.size();
}

absl::StatusOr<Hyper> AntiRefine(const Channel& c, const std::vector<Vector>& vertices) {
  const size_t n = c.num_inputs();
  if (vertices.empty()) return absl::InvalidArgumentError("no vertices");
  absl::StatusOr<Hyper> h = ToHyper(c, UniformPrior(n));
  if (!h.ok()) return h.status();
  const size_t m = vertices.size();
  LpProblem lp;
  lp.objective = Vector(m);
  lp.eq_lhs = Matrix(n + 1, m);
  for (size_t j = 0; j < m; ++j) {
    if (vertices[j].size() != n) return absl::InvalidArgumentError("vertex length differs from |X|");
    for (size_t x = 0; x < n; ++x) lp.eq_lhs(x, j) = vertices[j][x];
    lp.eq_lhs(n, j) = 1;
  }
  Vector outers;
  std::vector<Vector> inners;
  for (size_t i = 0; i < h->size(); ++i) {
    lp.eq_rhs = h->inners[i];
    lp.eq_rhs.push_back(1);
    absl::StatusOr<LpResult> r = LpOptimize(lp);
    if (!r.ok()) return r.status();
    if (r->kind != LpResult::Kind::kOptimal) {
      return absl::InternalError(absl::StrCat(
          "posterior ", i, " is not a convex combination of the vertices"));
    }
    for (size_t j = 0; j < m; ++j) {
      if (r->point[j] == 0) continue;
      outers.push_back(h->outers[i] * r->point[j]);
      inners.push_back(vertices[j]);
    }
  }
  return MakeHyper(std::move(outers), std::move(inners));
}

absl::StatusOr<std::vector<std::pair<Scalar, KernelMechanism>>> DecomposeVertexMechanism(
    const Hyper& v, const std::vector<KernelMechanism>& kernels) {
  std::map<Vector, Scalar> remaining;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v.outers[i] < 0) return absl::InvalidArgumentError("negative outer");
    if (v.outers[i] > 0) remaining[v.inners[i]] += v.outers[i];
  }
  std::set<Vector> known;
  for (const KernelMechanism& k : kernels) known.insert(k.hyper.inners.begin(), k.hyper.inners.end());
  for (const auto& [inner, mass] : remaining) {
    if (known.count(inner) == 0) {
      return absl::InvalidArgumentError("input has a posterior that is not a kernel vertex");
    }
  }
  std::vector<std::pair<Scalar, KernelMechanism>> out;
  while (!remaining.empty()) {
    const KernelMechanism* pick = nullptr;
    for (const KernelMechanism& k : kernels) {
      bool inside = true;
      for (const Vector& inner : k.hyper.inners) {
        if (remaining.count(inner) == 0) {
          inside = false;
          break;
        }
      }
      if (inside) {
        pick = &k;
        break;
      }
    }
    if (pick == nullptr) {
      return absl::InvalidArgumentError(
          "no kernel fits the remaining posteriors; input is not a vertex mechanism");
    }
    Scalar t;
    for (size_t i = 0; i < pick->hyper.size(); ++i) {
      Scalar r = remaining[pick->hyper.inners[i]] / pick->hyper.outers[i];
      if (i == 0 || r < t) t = r;
    }
    for (size_t i = 0; i < pick->hyper.size(); ++i) {
      auto it = remaining.find(pick->hyper.inners[i]);
      it->second -= t * pick->hyper.outers[i];
      if (it->second == 0) remaining.erase(it);
    }
    out.emplace_back(t, *pick);
  }
  // Exact reconstruction check.
  std::map<Vector, Scalar> rebuilt;
  Scalar total = 0;
  for (const auto& [t, k] : out) {
    total += t;
    for (size_t i = 0; i < k.hyper.size(); ++i) rebuilt[k.hyper.inners[i]] += t * k.hyper.outers[i];
  }
  std::map<Vector, Scalar> original;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v.outers[i] > 0) original[v.inners[i]] += v.outers[i];
  }
  if (rebuilt != original || total != Sum(v.outers)) {
    return absl::InternalError("kernel decomposition does not reconstruct the input");
  }
  return out;
}

}  // namespace mdp
