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

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "mdp/leakage.h"
#include "mdp/linear_algebra.h"
#include "mdp/polytope.h"
#include "test_util.h"

namespace mdp {
namespace {

using testing::Q;
using testing::Space;
using testing::V;

std::vector<Vector> Vertices(const MetricSpace& s) {
  return *EnumerateVertices(BuildConstraints(s));
}

std::set<Vector> AsSet(const std::vector<Vector>& v) { return {v.begin(), v.end()}; }

// Plain oracle: every (n-1)-subset of halfspaces, no pruning.
std::set<Vector> BruteForceVertices(const ConstraintSystem& cs) {
  const size_t n = cs.n, m = cs.halfspaces.size();
  std::set<Vector> out;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n - 1), true);
  do {
    Matrix a(0, n);
    Vector b;
    for (size_t h = 0; h < m; ++h) {
      if (!pick[h]) continue;
      Vector row(n);
      row[cs.halfspaces[h].x] = 1;
      row[cs.halfspaces[h].x2] = -cs.halfspaces[h].factor;
      a.AppendRow(row);
      b.push_back(0);
    }
    a.AppendRow(Vector(n, Scalar(1)));
    b.push_back(1);
    LinearSolution s = *SolveLinearSystem(a, b);
    if (s.kind == LinearSolution::Kind::kUnique && SatisfiesConstraints(s.x, cs)) out.insert(s.x);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Plain oracle: vertex subsets up to size n with independent members and
// unique positive weights averaging to uniform.
std::set<std::vector<size_t>> BruteForceKernels(const std::vector<Vector>& vertices, size_t n) {
  std::set<std::vector<size_t>> out;
  const size_t v = vertices.size();
  for (size_t size = 1; size <= n; ++size) {
    std::vector<bool> pick(v, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<size_t> idx;
      std::vector<Vector> rows;
      for (size_t i = 0; i < v; ++i) {
        if (pick[i]) {
          idx.push_back(i);
          rows.push_back(vertices[i]);
        }
      }
      if (*Rank(rows) != static_cast<int>(size)) continue;
      Matrix a(n, size);
      for (size_t j = 0; j < size; ++j) {
        for (size_t x = 0; x < n; ++x) a(x, j) = rows[j][x];
      }
      LinearSolution s = *SolveLinearSystem(a, UniformPrior(n));
      if (s.kind != LinearSolution::Kind::kUnique) continue;
      if (std::all_of(s.x.begin(), s.x.end(), [](const Scalar& w) { return w > 0; })) out.insert(idx);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::set<std::vector<size_t>> KernelIndexSets(const std::vector<KernelMechanism>& ks) {
  std::set<std::vector<size_t>> out;
  for (const KernelMechanism& k : ks) out.insert(k.vertex_indices);
  return out;
}

TEST(ConstraintTest, Counts) {
  EXPECT_EQ(BuildConstraints(Space(LineSpec(3))).halfspaces.size(), 4u);
  EXPECT_EQ(BuildConstraints(Space(DiscreteSpec(3))).halfspaces.size(), 6u);
  EXPECT_EQ(BuildConstraints(Space(HammingSpec(3))).halfspaces.size(), 24u);
  for (const Halfspace& h : BuildConstraints(Space(GridSpec(2, 2))).halfspaces) EXPECT_GE(h.factor, 1);
}

TEST(VertexTest, LineAndDiscreteExamples) {
  EXPECT_EQ(AsSet(Vertices(Space(LineSpec(3)))),
            (std::set<Vector>{V({"4/7", "2/7", "1/7"}), V({"1/4", "1/2", "1/4"}),
                              V({"1/7", "2/7", "4/7"}), V({"2/5", "1/5", "2/5"})}));
  EXPECT_EQ(AsSet(Vertices(Space(DiscreteSpec(3)))),
            (std::set<Vector>{V({"1/2", "1/4", "1/4"}), V({"1/4", "1/2", "1/4"}),
                              V({"1/4", "1/4", "1/2"}), V({"1/5", "2/5", "2/5"}),
                              V({"2/5", "1/5", "2/5"}), V({"2/5", "2/5", "1/5"})}));
}

TEST(VertexTest, CountsFollowTheTables) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(Vertices(Space(LineSpec(n))).size(), size_t{1} << (n - 1));
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(Vertices(Space(DiscreteSpec(n))).size(), (size_t{1} << n) - 2);
  EXPECT_EQ(Vertices(Space(HammingSpec(2))).size(), 6u);
  EXPECT_EQ(Vertices(Space(GridSpec(1, 1))).size(), 18u);
}

TEST(VertexTest, MatchesUnprunedOracleAndIsCanonical) {
  for (const MetricSpec& spec : {LineSpec(4), DiscreteSpec(4), HammingSpec(2), GridSpec(1, 1),
                                 LineSpec(3, Q("3/2")), CustomSpec({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}})}) {
    MetricSpace s = Space(spec);
    ConstraintSystem cs = BuildConstraints(s);
    std::vector<Vector> v = *EnumerateVertices(cs);
    EXPECT_EQ(AsSet(v), BruteForceVertices(cs)) << MetricKindName(spec.kind);
    EXPECT_TRUE(std::is_sorted(v.rbegin(), v.rend()));
    EXPECT_EQ(AsSet(v).size(), v.size());
    for (const Vector& d : v) {
      EXPECT_TRUE(IsVertex(d, cs));
      for (const Scalar& c : d) EXPECT_GT(c, 0);
    }
  }
}

TEST(VertexTest, LimitIsReported) {
  EnumerationOptions o;
  o.max_candidates = 3;
  absl::StatusOr<std::vector<Vector>> v = EnumerateVertices(BuildConstraints(Space(HammingSpec(3))), o);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(KernelTest, LineThree) {
  MetricSpace s = Space(LineSpec(3));
  std::vector<Vector> v = Vertices(s);
  std::vector<KernelMechanism> k = *EnumerateKernels(v, 3);
  ASSERT_EQ(k.size(), 2u);
  const Hyper geometric = *ToHyper(*GeometricTruncated(3, Q("1/2")), UniformPrior(3));
  const Hyper other = *MakeHyper(V({"5/9", "4/9"}), {V({"2/5", "1/5", "2/5"}), V({"1/4", "1/2", "1/4"})});
  EXPECT_EQ(geometric.outers, V({"7/18", "2/9", "7/18"}));
  EXPECT_TRUE((k[0].hyper == geometric && k[1].hyper == other) ||
              (k[1].hyper == geometric && k[0].hyper == other));
}

TEST(KernelTest, DiscreteThree) {
  MetricSpace s = Space(DiscreteSpec(3));
  std::vector<KernelMechanism> k = *EnumerateKernels(Vertices(s), 3);
  ASSERT_EQ(k.size(), 5u);
  const Hyper r = *ToHyper(*RandomResponse(3, Q("1/2")), UniformPrior(3));
  const Hyper rd = *ToHyper(*RrDual(3, Q("1/2")), UniformPrior(3));
  const Hyper mixed = *MakeHyper(V({"4/9", "5/9"}), {V({"1/4", "1/4", "1/2"}), V({"2/5", "2/5", "1/5"})});
  int found_r = 0, found_rd = 0, found_mixed = 0;
  for (const KernelMechanism& km : k) {
    found_r += km.hyper == r;
    found_rd += km.hyper == rd;
    found_mixed += km.hyper == mixed;
    if (km.hyper.size() == 2) {
      EXPECT_EQ(std::set<Scalar>(km.hyper.outers.begin(), km.hyper.outers.end()),
                (std::set<Scalar>{Q("4/9"), Q("5/9")}));
    }
  }
  EXPECT_EQ(found_r, 1);
  EXPECT_EQ(found_rd, 1);
  EXPECT_EQ(found_mixed, 1);
}

TEST(KernelTest, TwoLabelSpacesHaveTheBinaryMechanism) {
  for (const MetricSpec& spec : {LineSpec(2), DiscreteSpec(2, 5), CustomSpec({{0, Q("3/2")}, {Q("3/2"), 0}})}) {
    MetricSpace s = Space(spec);
    std::vector<KernelMechanism> k = *EnumerateKernels(Vertices(s), 2);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0].hyper, *ToHyper(*BinaryOptimal(s), UniformPrior(2)));
  }
}

TEST(KernelTest, CountsAndOracle) {
  const size_t line_counts[] = {1, 2, 11, 187};
  for (int n = 2; n <= 5; ++n) {
    EXPECT_EQ(EnumerateKernels(Vertices(Space(LineSpec(n))), n)->size(), line_counts[n - 2]);
  }
  const size_t discrete_counts[] = {1, 5, 41};
  for (int n = 2; n <= 4; ++n) {
    EXPECT_EQ(EnumerateKernels(Vertices(Space(DiscreteSpec(n))), n)->size(), discrete_counts[n - 2]);
  }
  for (const MetricSpec& spec : {LineSpec(4), DiscreteSpec(4), HammingSpec(2), GridSpec(1, 1)}) {
    MetricSpace s = Space(spec);
    std::vector<Vector> v = Vertices(s);
    std::vector<KernelMechanism> k = *EnumerateKernels(v, s.size());
    EXPECT_EQ(KernelIndexSets(k), BruteForceKernels(v, s.size())) << MetricKindName(spec.kind);
    ConstraintSystem cs = BuildConstraints(s);
    for (const KernelMechanism& km : k) {
      EXPECT_TRUE(IsKernel(km.hyper, cs));
      EXPECT_EQ(ExpectedInner(km.hyper), UniformPrior(s.size()));
    }
  }
}

TEST(KernelTest, IndependentOfThreadCount) {
  MetricSpace s = Space(LineSpec(5));
  std::vector<Vector> v = Vertices(s);
  EnumerationOptions one, many;
  many.threads = 3;
  std::vector<KernelMechanism> a = *EnumerateKernels(v, 5, one);
  std::vector<KernelMechanism> b = *EnumerateKernels(v, 5, many);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].vertex_indices, b[i].vertex_indices);
    EXPECT_EQ(a[i].hyper, b[i].hyper);
  }
  EnumerationOptions tiny;
  tiny.max_candidates = 5;
  absl::StatusOr<std::vector<KernelMechanism>> limited = EnumerateKernels(v, 5, tiny);
  ASSERT_FALSE(limited.ok());
  EXPECT_EQ(limited.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(KernelTest, NamedMechanismsAreKernels) {
  for (int n = 2; n <= 5; ++n) {
    EXPECT_TRUE(IsKernel(*ToHyper(*GeometricTruncated(n, Q("1/2")), UniformPrior(n)),
                         BuildConstraints(Space(LineSpec(n)))));
    EXPECT_TRUE(IsKernel(*ToHyper(*RandomResponse(n, Q("1/2")), UniformPrior(n)),
                         BuildConstraints(Space(DiscreteSpec(n)))));
  }
  ConstraintSystem cs = BuildConstraints(Space(LineSpec(3)));
  const Hyper trivial = *ToHyper(*TrivialChannel(3), UniformPrior(3));
  EXPECT_FALSE(IsKernel(trivial, cs));
  EXPECT_FALSE(IsVertexMechanism(trivial, cs));
  // All four line(3) vertices mixed: a vertex mechanism, not a kernel.
  const Hyper both = *MakeHyper(V({"7/36", "1/9", "7/36", "5/18", "2/9"}),
                                {V({"4/7", "2/7", "1/7"}), V({"1/4", "1/2", "1/4"}),
                                 V({"1/7", "2/7", "4/7"}), V({"2/5", "1/5", "2/5"}),
                                 V({"1/4", "1/2", "1/4"})});
  EXPECT_TRUE(IsVertexMechanism(both, cs));
  EXPECT_FALSE(IsKernel(both, cs));
  const Channel k = *Channel::Create(
      {"000", "100", "110", "111", "010", "011", "101", "001"}, {},
      testing::M({V({"2/3", "1/6", "1/12", "1/12"}), V({"1/3", "1/3", "1/6", "1/6"}),
                  V({"1/6", "1/6", "1/3", "1/3"}), V({"1/12", "1/12", "1/6", "2/3"}),
                  V({"1/3", "1/3", "1/6", "1/6"}), V({"1/6", "1/6", "1/3", "1/3"}),
                  V({"1/6", "1/6", "1/3", "1/3"}), V({"1/3", "1/3", "1/6", "1/6"})}));
  MetricSpace h3 = Space(HammingSpec(3));
  const Channel aligned = *RestrictByLabels(k, h3.labels());
  EXPECT_TRUE(IsKernel(*ToHyper(aligned, UniformPrior(8)), BuildConstraints(h3)));
}

TEST(AntiRefineTest, Examples) {
  MetricSpace s = Space(LineSpec(3));
  std::vector<Vector> v = Vertices(s);
  ConstraintSystem cs = BuildConstraints(s);
  const Channel g = *GeometricTruncated(3, Q("1/2"));
  EXPECT_EQ(*AntiRefine(g, v), *ToHyper(g, UniformPrior(3)));

  const Channel t = *TrivialChannel(3);
  const Hyper ht = *AntiRefine(t, v);
  EXPECT_TRUE(IsVertexMechanism(ht, cs));
  EXPECT_TRUE(Refines(*FromHyper(ht), t)->refines);

  const Channel e = *ExternalChoice(g, t, Q("1/2"));
  const Hyper he = *AntiRefine(e, v);
  EXPECT_TRUE(IsVertexMechanism(he, cs));
  EXPECT_TRUE(Refines(*FromHyper(he), e)->refines);
}

TEST(DecomposeTest, Examples) {
  MetricSpace s = Space(DiscreteSpec(3));
  std::vector<KernelMechanism> k = *EnumerateKernels(Vertices(s), 3);
  for (const KernelMechanism& km : k) {
    auto d = *DecomposeVertexMechanism(km.hyper, k);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].first, 1);
    EXPECT_EQ(d[0].second.hyper, km.hyper);
  }
  const Hyper r = *ToHyper(*RandomResponse(3, Q("1/2")), UniformPrior(3));
  const Hyper rd = *ToHyper(*RrDual(3, Q("1/2")), UniformPrior(3));
  Vector outers;
  std::vector<Vector> inners;
  for (const Hyper* h : {&r, &rd}) {
    for (size_t i = 0; i < h->size(); ++i) {
      outers.push_back(h->outers[i] / 2);
      inners.push_back(h->inners[i]);
    }
  }
  auto d = *DecomposeVertexMechanism(*MakeHyper(outers, inners), k);
  ASSERT_EQ(d.size(), 2u);
  std::set<std::pair<Scalar, std::vector<Vector>>> got;
  for (const auto& [w, km] : d) got.insert({w, km.hyper.inners});
  EXPECT_EQ(got, (std::set<std::pair<Scalar, std::vector<Vector>>>{{Q("1/2"), r.inners},
                                                                   {Q("1/2"), rd.inners}}));

  MetricSpace l = Space(LineSpec(3));
  std::vector<KernelMechanism> lk = *EnumerateKernels(Vertices(l), 3);
  const Hyper both = *MakeHyper(V({"7/36", "1/9", "7/36", "5/18", "2/9"}),
                                {V({"4/7", "2/7", "1/7"}), V({"1/4", "1/2", "1/4"}),
                                 V({"1/7", "2/7", "4/7"}), V({"2/5", "1/5", "2/5"}),
                                 V({"1/4", "1/2", "1/4"})});
  auto dl = *DecomposeVertexMechanism(both, lk);
  ASSERT_EQ(dl.size(), 2u);
  EXPECT_EQ(dl[0].first, Q("1/2"));
  EXPECT_EQ(dl[1].first, Q("1/2"));
}

TEST(CharacterisationTest, RandomChannels) {
  std::mt19937_64 rng(37);
  for (const MetricSpec& spec : {LineSpec(3), DiscreteSpec(3), LineSpec(4)}) {
    MetricSpace s = Space(spec);
    std::vector<Vector> v = Vertices(s);
    std::vector<KernelMechanism> k = *EnumerateKernels(v, s.size());
    ConstraintSystem cs = BuildConstraints(s);
    for (int trial = 0; trial < 15; ++trial) {
      const Channel c = testing::RandomPrivateChannel(rng, s, 1 + rng() % 4);
      const Hyper a = *AntiRefine(c, v);
      EXPECT_TRUE(IsVertexMechanism(a, cs));
      EXPECT_TRUE(Refines(*FromHyper(a, s.labels()), c)->refines);
      auto parts = *DecomposeVertexMechanism(a, k);
      Scalar total = 0;
      for (const auto& [w, km] : parts) total += w;
      EXPECT_EQ(total, 1);
    }
  }
}

TEST(CharacterisationTest, KernelsDoNotRefineEachOther) {
  for (const MetricSpec& spec : {LineSpec(4), DiscreteSpec(3), HammingSpec(2)}) {
    MetricSpace s = Space(spec);
    std::vector<KernelMechanism> k = *EnumerateKernels(Vertices(s), s.size());
    for (size_t i = 0; i < k.size(); ++i) {
      for (size_t j = 0; j < k.size(); ++j) {
        if (i == j) continue;
        EXPECT_FALSE(Refines(*FromHyper(k[i].hyper), *FromHyper(k[j].hyper))->refines);
      }
    }
  }
}

}  // namespace
}  // namespace mdp
