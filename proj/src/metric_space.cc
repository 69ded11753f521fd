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

#include "mdp/metric_space.h"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

bool PerfectSquare(const mpz_class& v, mpz_class* root) {
  if (v < 0) return false;
  if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return false;
  mpz_sqrt(root->get_mpz_t(), v.get_mpz_t());
  return true;
}

// Exact square root of a rational, if it has one.
bool RationalSqrt(const Scalar& v, Scalar* root) {
  mpz_class n, d;
  if (!PerfectSquare(v.get_num(), &n) || !PerfectSquare(v.get_den(), &d)) return false;
  *root = Scalar(n, d);
  root->canonicalize();
  return true;
}

Scalar IntegerPower(const Scalar& base, unsigned long e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  Scalar r(n, d);
  r.canonicalize();
  return r;
}

Scalar MpqFromDecimalDigits(const char* digits, mpfr_exp_t exp10) {
  bool negative = digits[0] == '-';
  mpz_class mantissa(negative ? digits + 1 : digits, 10);
  long len = static_cast<long>(std::strlen(negative ? digits + 1 : digits));
  long shift = static_cast<long>(exp10) - len;
  Scalar r;
  mpz_class p;
  if (shift >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    r = Scalar(mantissa * p);
  } else {
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    r = Scalar(mantissa, p);
    r.canonicalize();
  }
  return negative ? Scalar(-r) : r;
}

}  // namespace

Scalar PowerRounded(const Scalar& base, const Scalar& squared_exponent, int digits,
                    bool* exact) {
  Scalar root;
  if (RationalSqrt(squared_exponent, &root) && root.get_den() == 1 &&
      root.get_num().fits_ulong_p()) {
    *exact = true;
    return IntegerPower(base, root.get_num().get_ui());
  }
  *exact = false;
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 4 + 128);
  mpfr_t b, e, r;
  mpfr_inits2(prec, b, e, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(b, base.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(e, squared_exponent.get_mpq_t(), MPFR_RNDN);
  mpfr_sqrt(e, e, MPFR_RNDN);
  mpfr_pow(r, b, e, MPFR_RNDN);
  mpfr_exp_t exp10 = 0;
  char* text = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), r, MPFR_RNDN);
  Scalar out = MpqFromDecimalDigits(text, exp10);
  mpfr_free_str(text);
  mpfr_clears(b, e, r, static_cast<mpfr_ptr>(nullptr));
  return out;
}

absl::StatusOr<MetricKind> ParseMetricKind(std::string_view name) {
  if (name == "line") return MetricKind::kLine;
  if (name == "discrete") return MetricKind::kDiscrete;
  if (name == "grid") return MetricKind::kGrid;
  if (name == "hamming") return MetricKind::kHamming;
  if (name == "custom") return MetricKind::kCustom;
  return absl::InvalidArgumentError(absl::StrCat("unknown metric kind \"", std::string(name), "\""));
}

std::string MetricKindName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kLine: return "line";
    case MetricKind::kDiscrete: return "discrete";
    case MetricKind::kGrid: return "grid";
    case MetricKind::kHamming: return "hamming";
    case MetricKind::kCustom: return "custom";
  }
  return "unknown";
}

MetricSpec LineSpec(int n, const Scalar& base) {
  MetricSpec s;
  s.kind = MetricKind::kLine;
  s.n = n;
  s.base = base;
  return s;
}

MetricSpec DiscreteSpec(int n, const Scalar& base) {
  MetricSpec s = LineSpec(n, base);
  s.kind = MetricKind::kDiscrete;
  return s;
}

MetricSpec GridSpec(int width, int height, const Scalar& base, int precision_digits) {
  MetricSpec s;
  s.kind = MetricKind::kGrid;
  s.width = width;
  s.height = height;
  s.base = base;
  s.precision_digits = precision_digits;
  return s;
}

MetricSpec HammingSpec(int bits, const Scalar& base) {
  MetricSpec s;
  s.kind = MetricKind::kHamming;
  s.bits = bits;
  s.base = base;
  return s;
}

MetricSpec CustomSpec(std::vector<Vector> distances, const Scalar& base,
                      int precision_digits) {
  MetricSpec s;
  s.kind = MetricKind::kCustom;
  s.distances = std::move(distances);
  s.base = base;
  s.precision_digits = precision_digits;
  return s;
}

absl::StatusOr<Scalar> MetricSpace::Stretch(std::string_view x, std::string_view y) const {
  absl::StatusOr<size_t> i = IndexOf(x);
  if (!i.ok()) return i.status();
  absl::StatusOr<size_t> j = IndexOf(y);
  if (!j.ok()) return j.status();
  return stretch_(*i, *j);
}

absl::StatusOr<size_t> MetricSpace::IndexOf(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    return absl::InvalidArgumentError(absl::StrCat("unknown label \"", std::string(label), "\""));
  }
  return it->second;
}

bool MetricSpace::is_tight(size_t x, size_t y) const {
  if (x > y) std::swap(x, y);
  return std::binary_search(tight_pairs_.begin(), tight_pairs_.end(), std::make_pair(x, y));
}

void MetricSpace::ComputeTightPairs() {
  tight_pairs_.clear();
  const size_t n = size();
  for (size_t x = 0; x < n; ++x) {
    for (size_t z = x + 1; z < n; ++z) {
      bool implied = false;
      for (size_t y = 0; y < n && !implied; ++y) implied = between(x, y, z);
      if (!implied) tight_pairs_.emplace_back(x, z);
    }
  }
}

absl::StatusOr<MetricSpace> MakeMetric(const MetricSpec& spec) {
  if (spec.base <= 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("base must exceed 1, got ", ToString(spec.base)));
  }
  if (spec.precision_digits < 2 || spec.precision_digits > 10000) {
    return absl::InvalidArgumentError("precision_digits must be in [2, 10000]");
  }
  MetricSpace s;
  s.base_ = spec.base;
  s.precision_digits_ = spec.precision_digits;
  s.spec_ = spec;

  // Squared distances (exact) and the betweenness predicate in source geometry.
  Matrix d2;
  std::function<bool(size_t, size_t, size_t)> between;
  std::vector<std::vector<long>> coords;
  switch (spec.kind) {
    case MetricKind::kLine:
    case MetricKind::kDiscrete: {
      if (spec.n < 1) return absl::InvalidArgumentError("n must be at least 1");
      const size_t n = static_cast<size_t>(spec.n);
      d2 = Matrix(n, n);
      for (size_t i = 0; i < n; ++i) {
        s.labels_.push_back(std::to_string(i));
        for (size_t j = 0; j < n; ++j) {
          long d = std::labs(static_cast<long>(i) - static_cast<long>(j));
          if (spec.kind == MetricKind::kDiscrete) d = d == 0 ? 0 : 1;
          d2(i, j) = d * d;
        }
      }
      if (spec.kind == MetricKind::kLine) {
        between = [](size_t x, size_t y, size_t z) {
          return (x < y && y < z) || (z < y && y < x);
        };
      } else {
        between = [](size_t, size_t, size_t) { return false; };
      }
      break;
    }
    case MetricKind::kGrid: {
      if (spec.width < 1 || spec.height < 1) {
        return absl::InvalidArgumentError("grid width and height must be at least 1");
      }
      for (long i = 0; i <= spec.width; ++i) {
        for (long j = 0; j <= spec.height; ++j) {
          coords.push_back({i, j});
          s.labels_.push_back(absl::StrCat("(", i, ",", j, ")"));
        }
      }
      const size_t n = coords.size();
      d2 = Matrix(n, n);
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          long dx = coords[a][0] - coords[b][0];
          long dy = coords[a][1] - coords[b][1];
          d2(a, b) = dx * dx + dy * dy;
        }
      }
      between = [&coords](size_t x, size_t y, size_t z) {
        if (y == x || y == z) return false;
        long ax = coords[z][0] - coords[x][0], ay = coords[z][1] - coords[x][1];
        long bx = coords[y][0] - coords[x][0], by = coords[y][1] - coords[x][1];
        if (ax * by - ay * bx != 0) return false;
        long dot = ax * bx + ay * by;
        return dot > 0 && dot < ax * ax + ay * ay;
      };
      break;
    }
    case MetricKind::kHamming: {
      if (spec.bits < 1 || spec.bits > 12) {
        return absl::InvalidArgumentError("bits must be in [1, 12]");
      }
      const size_t n = size_t{1} << spec.bits;
      d2 = Matrix(n, n);
      for (size_t i = 0; i < n; ++i) {
        std::string label;
        for (int b = spec.bits - 1; b >= 0; --b) label.push_back(((i >> b) & 1) ? '1' : '0');
        s.labels_.push_back(label);
        for (size_t j = 0; j < n; ++j) {
          long h = __builtin_popcountl(i ^ j);
          d2(i, j) = h * h;
        }
      }
      between = [](size_t x, size_t y, size_t z) {
        if (y == x || y == z) return false;
        return __builtin_popcountl(x ^ y) + __builtin_popcountl(y ^ z) ==
               __builtin_popcountl(x ^ z);
      };
      break;
    }
    case MetricKind::kCustom: {
      const std::vector<Vector>& d = spec.distances;
      const size_t n = d.size();
      if (n < 1) return absl::InvalidArgumentError("distance matrix is empty");
      for (size_t i = 0; i < n; ++i) {
        if (d[i].size() != n) {
          return absl::InvalidArgumentError(
              absl::StrCat("distance matrix row ", i, " has ", d[i].size(), " entries, expected ", n));
        }
      }
      for (size_t i = 0; i < n; ++i) {
        if (d[i][i] != 0) {
          return absl::InvalidArgumentError(
              absl::StrCat("nonzero diagonal distance at (", i, ",", i, ")"));
        }
        for (size_t j = 0; j < n; ++j) {
          if (d[i][j] != d[j][i]) {
            return absl::InvalidArgumentError(
                absl::StrCat("distance matrix not symmetric at (", i, ",", j, ")"));
          }
          if (i != j && d[i][j] <= 0) {
            return absl::InvalidArgumentError(
                absl::StrCat("distance between distinct points ", i, " and ", j, " is not positive"));
          }
        }
      }
      for (size_t x = 0; x < n; ++x) {
        for (size_t y = 0; y < n; ++y) {
          for (size_t z = 0; z < n; ++z) {
            if (d[x][z] > d[x][y] + d[y][z]) {
              return absl::InvalidArgumentError(absl::StrCat(
                  "triangle inequality violated by triple (", x, ",", y, ",", z, "): d(", x,
                  ",", z, ") > d(", x, ",", y, ") + d(", y, ",", z, ")"));
            }
          }
        }
      }
      d2 = Matrix(n, n);
      for (size_t i = 0; i < n; ++i) {
        s.labels_.push_back(std::to_string(i));
        for (size_t j = 0; j < n; ++j) d2(i, j) = d[i][j] * d[i][j];
      }
      between = [&d](size_t x, size_t y, size_t z) {
        if (y == x || y == z) return false;
        return d[x][y] + d[y][z] == d[x][z];
      };
      break;
    }
  }

  const size_t n = s.labels_.size();
  for (size_t i = 0; i < n; ++i) s.index_.emplace(s.labels_[i], i);
  s.squared_distance_ = d2;
  s.stretch_ = Matrix(n, n);
  std::map<Scalar, Scalar> memo;
  bool all_exact = true;
  for (size_t i = 0; i < n; ++i) {
    s.stretch_(i, i) = 1;
    for (size_t j = i + 1; j < n; ++j) {
      auto it = memo.find(d2(i, j));
      if (it == memo.end()) {
        bool exact = true;
        Scalar v = PowerRounded(spec.base, d2(i, j), spec.precision_digits, &exact);
        all_exact = all_exact && exact;
        it = memo.emplace(d2(i, j), v).first;
      }
      s.stretch_(i, j) = it->second;
      s.stretch_(j, i) = it->second;
    }
  }
  s.mode_ = all_exact ? MetricMode::kExact : MetricMode::kApproximate;
  s.between_.assign(n * n * n, false);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      for (size_t z = 0; z < n; ++z) s.between_[(x * n + y) * n + z] = between(x, y, z);
    }
  }
  s.ComputeTightPairs();
  return s;
}

absl::StatusOr<MetricSpace> RestrictSpace(const MetricSpace& space,
                                          const std::vector<size_t>& subset) {
  if (subset.empty()) return absl::InvalidArgumentError("empty subset");
  std::vector<bool> seen(space.size(), false);
  for (size_t i : subset) {
    if (i >= space.size()) return absl::InvalidArgumentError("subset index out of range");
    if (seen[i]) return absl::InvalidArgumentError("subset repeats an index");
    seen[i] = true;
  }
  const size_t m = subset.size();
  MetricSpace s;
  s.base_ = space.base();
  s.precision_digits_ = space.precision_digits();
  s.spec_ = space.spec();
  s.restricted_ = true;
  s.stretch_ = Matrix(m, m);
  s.squared_distance_ = Matrix(m, m);
  bool all_exact = true;
  for (size_t a = 0; a < m; ++a) {
    s.labels_.push_back(space.labels()[subset[a]]);
    s.index_.emplace(s.labels_.back(), a);
    for (size_t b = 0; b < m; ++b) {
      s.stretch_(a, b) = space.stretch(subset[a], subset[b]);
      s.squared_distance_(a, b) = space.squared_distance(subset[a], subset[b]);
      Scalar root;
      if (!RationalSqrt(s.squared_distance_(a, b), &root) || root.get_den() != 1) {
        all_exact = all_exact && space.mode() == MetricMode::kExact;
      }
    }
  }
  s.mode_ = all_exact ? MetricMode::kExact : space.mode();
  s.between_.assign(m * m * m, false);
  for (size_t x = 0; x < m; ++x) {
    for (size_t y = 0; y < m; ++y) {
      for (size_t z = 0; z < m; ++z) {
        s.between_[(x * m + y) * m + z] = space.between(subset[x], subset[y], subset[z]);
      }
    }
  }
  s.ComputeTightPairs();
  return s;
}

absl::Status ValidateMetricSpace(const MetricSpace& space) {
  const size_t n = space.size();
  Scalar slack = 0;
  if (space.mode() == MetricMode::kApproximate) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(space.precision_digits() - 2));
    slack = Scalar(1, p);
    slack.canonicalize();
  }
  for (size_t x = 0; x < n; ++x) {
    if (space.stretch(x, x) != 1) {
      return absl::InternalError(absl::StrCat("stretch(", x, ",", x, ") != 1"));
    }
    for (size_t y = 0; y < n; ++y) {
      if (space.stretch(x, y) != space.stretch(y, x)) {
        return absl::InternalError(absl::StrCat("stretch not symmetric at (", x, ",", y, ")"));
      }
      if (space.stretch(x, y) < 1) {
        return absl::InternalError(absl::StrCat("stretch below 1 at (", x, ",", y, ")"));
      }
      for (size_t z = 0; z < n; ++z) {
        Scalar bound = space.stretch(x, y) * space.stretch(y, z);
        if (space.stretch(x, z) > bound * (1 + slack)) {
          return absl::InternalError(absl::StrCat(
              "multiplicative triangle inequality fails on (", x, ",", y, ",", z, ")"));
        }
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace mdp
