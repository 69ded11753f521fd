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

#ifndef MDP_TESTS_TEST_UTIL_H_
#define MDP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mdp/channel.h"
#include "mdp/loss.h"
#include "mdp/metric_space.h"
#include "mdp/polytope.h"
#include "mdp/scalar.h"

namespace mdp::testing {

inline Scalar Q(const std::string& s) { return *ParseScalar(s); }

inline Scalar R(long num, long den) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline Vector V(const std::vector<std::string>& items) {
  Vector out;
  for (const std::string& s : items) out.push_back(Q(s));
  return out;
}

inline Matrix M(const std::vector<Vector>& rows) { return *Matrix::FromRows(rows); }

inline Channel Ch(const std::vector<Vector>& rows) { return *Channel::FromMatrix(M(rows)); }

inline MetricSpace Space(const MetricSpec& spec) { return *MakeMetric(spec); }

// Rational in [lo, hi] on a grid of 1/den.
inline Scalar RandomScalar(std::mt19937_64& rng, long lo, long hi, long den) {
  const long span = (hi - lo) * den;
  return R(lo * den + static_cast<long>(rng() % static_cast<unsigned long>(span + 1)), den);
}

inline Vector RandomDistribution(std::mt19937_64& rng, size_t n) {
  while (true) {
    Vector p(n);
    Scalar total = 0;
    for (Scalar& v : p) {
      v = static_cast<long>(rng() % 50);
      total += v;
    }
    if (total == 0) continue;
    for (Scalar& v : p) v /= total;
    return p;
  }
}

inline Matrix RandomStochastic(std::mt19937_64& rng, size_t rows, size_t cols) {
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    Vector row = RandomDistribution(rng, cols);
    for (size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

// Integer entries in [0, max_entry].
inline LossFunction RandomLoss(std::mt19937_64& rng, size_t actions, size_t n,
                               unsigned long max_entry = 5) {
  Matrix t(actions, n);
  for (size_t w = 0; w < actions; ++w) {
    for (size_t x = 0; x < n; ++x) t(w, x) = static_cast<long>(rng() % (max_entry + 1));
  }
  return *MakeLoss({}, {}, t);
}

// Random stochastic matrix mixed with the constant channel just enough to
// satisfy every dx constraint, so at least one constraint is tight when
// `slack` is 0.
inline Channel RandomPrivateChannel(std::mt19937_64& rng, const MetricSpace& space,
                                    size_t columns, const Scalar& slack = 0) {
  const size_t n = space.size();
  const Matrix a = RandomStochastic(rng, n, columns);
  const Scalar k = static_cast<long>(columns);
  Scalar t = 0;
  for (size_t x = 0; x < n; ++x) {
    for (size_t x2 = 0; x2 < n; ++x2) {
      const Scalar& s = space.stretch(x, x2);
      for (size_t y = 0; y < columns; ++y) {
        const Scalar d = a(x, y) - s * a(x2, y);
        if (d > 0) t = std::max(t, Scalar(d / (d + (s - 1) / k)));
      }
    }
  }
  t = t + (1 - t) * slack;
  Matrix m(n, columns);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < columns; ++y) m(x, y) = (1 - t) * a(x, y) + t / k;
  }
  return *Channel::Create(space.labels(), {}, m);
}

// Kernels of the full type restricted to `rows`, as comparison mechanisms
// over the smaller secret set.
inline std::vector<KernelMechanism> RestrictedKernels(const std::vector<KernelMechanism>& kernels,
                                                      const std::vector<size_t>& rows) {
  std::vector<KernelMechanism> out;
  for (const KernelMechanism& k : kernels) {
    const Channel r = *Restrict(*FromHyper(k.hyper), rows);
    out.push_back({k.vertex_indices, *ToHyper(r, UniformPrior(rows.size()))});
  }
  return out;
}

}  // namespace mdp::testing

#endif  // MDP_TESTS_TEST_UTIL_H_
