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

#include "mdp/reproduce.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "mdp/capacity.h"

namespace mdp {
namespace {

enum class Enumerate { kYes, kLong, kSkip, kNotApplicable };

struct Expected {
  std::string dims;
  MetricSpec spec;
  Enumerate vertices;
  Enumerate kernels;
  std::string expected_vertices;
  std::string expected_kernels;
  // "p/q" compares exactly; a decimal compares within kTolerance.
  std::string mult;
  std::string add;
};

const Scalar kTolerance(1, 100);

bool IsDecimal(const std::string& s) { return s.find('.') != std::string::npos; }

std::vector<Expected> Table(const std::string& name) {
  std::vector<Expected> rows;
  const Enumerate y = Enumerate::kYes;
  if (name == "euclid") {
    const char* mult[] = {"4/3", "5/3", "2", "7/3", "8/3"};
    const char* add[] = {"1/3", "1/2", "2/3", "3/4", "5/6"};
    const char* verts[] = {"2", "4", "8", "16", "32"};
    const char* kers[] = {"1", "2", "11", "187", "15346"};
    for (int n = 2; n <= 6; ++n) {
      rows.push_back({absl::StrCat(n), LineSpec(n), y, y, verts[n - 2], kers[n - 2], mult[n - 2],
                      add[n - 2]});
    }
  } else if (name == "discrete") {
    const char* mult[] = {"4/3", "3/2", "8/5", "5/3"};
    const char* add[] = {"1/3", "2/5", "3/7", "4/9"};
    const char* verts[] = {"2", "6", "14", "30"};
    const char* kers[] = {"1", "5", "41", "1291"};
    for (int n = 2; n <= 5; ++n) {
      rows.push_back({absl::StrCat(n), DiscreteSpec(n), y, y, verts[n - 2], kers[n - 2],
                      mult[n - 2], add[n - 2]});
    }
  } else if (name == "hamming") {
    rows.push_back({"4", HammingSpec(2), y, y, "6", "4", "1.78", "0.56"});
    rows.push_back({"8", HammingSpec(3), y, Enumerate::kLong, "38", "29275", "2.37", "0.70"});
    rows.push_back({"16", HammingSpec(4), Enumerate::kNotApplicable, Enumerate::kNotApplicable,
                    "", "", "3.16", "0.80"});
  } else if (name == "grid") {
    rows.push_back({"1x1", GridSpec(1, 1), y, y, "18", "403", "1.68", "0.48"});
    rows.push_back({"2x2", GridSpec(2, 2), Enumerate::kSkip, Enumerate::kSkip, "4798", ">10000",
                    "2.5", "0.62"});
    rows.push_back({"3x3", GridSpec(3, 3), Enumerate::kNotApplicable, Enumerate::kNotApplicable,
                    "", "", "3.53", "0.79"});
  }
  return rows;
}

int DefaultMaxN(const std::string& name) {
  if (name == "euclid") return 5;
  if (name == "discrete") return 4;
  if (name == "hamming") return 4;
  return 3;
}

int RowSize(const std::string& name, const MetricSpec& spec) {
  if (name == "hamming") return spec.bits;
  if (name == "grid") return spec.width;
  return spec.n;
}

ReproduceCell CountCell(size_t count, const std::string& expected) {
  ReproduceCell cell;
  cell.value = absl::StrCat(count);
  cell.flag = cell.value == expected ? CellFlag::kMatch : CellFlag::kMismatch;
  return cell;
}

ReproduceCell CapacityCell(const CapacityReport& report, const std::string& expected) {
  ReproduceCell cell;
  cell.value = report.precision_digits == 0 ? ToString(report.value) : ToDecimal(report.value, 6);
  const Scalar target = *ParseScalar(expected);
  bool ok;
  if (IsDecimal(expected)) {
    Scalar diff = report.value - target;
    if (diff < 0) diff = -diff;
    ok = diff <= kTolerance;
  } else {
    ok = report.value == target;
  }
  cell.flag = ok ? CellFlag::kMatch : CellFlag::kMismatch;
  return cell;
}

}  // namespace

std::string CellFlagName(CellFlag flag) {
  switch (flag) {
    case CellFlag::kMatch: return "match";
    case CellFlag::kMismatch: return "mismatch";
    case CellFlag::kSkipped: return "skipped";
    case CellFlag::kNotApplicable: return "n/a";
  }
  return "n/a";
}

bool ReproduceResult::all_match() const {
  for (const ReproduceRow& r : rows) {
    for (const ReproduceCell* c : {&r.vertices, &r.kernels, &r.mult, &r.add}) {
      if (c->flag == CellFlag::kMismatch) return false;
    }
  }
  return true;
}

absl::StatusOr<ReproduceResult> Reproduce(const ReproduceOptions& options) {
  std::vector<Expected> table = Table(options.table);
  if (table.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown table \"", options.table, "\" (euclid, discrete, grid, hamming)"));
  }
  const int max_n = options.max_n.value_or(DefaultMaxN(options.table));
  const int min_n = RowSize(options.table, table.front().spec);
  const int top_n = RowSize(options.table, table.back().spec);
  if (max_n < min_n || max_n > top_n) {
    return absl::InvalidArgumentError(
        absl::StrCat("--max-n for ", options.table, " must lie in [", min_n, ", ", top_n, "]"));
  }
  const ResultCache no_cache("", false);
  const ResultCache& cache = options.cache != nullptr ? *options.cache : no_cache;

  ReproduceResult result;
  result.table = options.table;
  for (const Expected& e : table) {
    if (RowSize(options.table, e.spec) > max_n) break;
    absl::StatusOr<MetricSpace> space = MakeMetric(e.spec);
    if (!space.ok()) return space.status();
    ReproduceRow row;
    row.dims = e.dims;

    std::vector<Vector> vertices;
    if (e.vertices == Enumerate::kYes) {
      absl::StatusOr<std::vector<Vector>> v =
          CachedVertices(*space, options.enumeration, cache, options.verify_cache);
      if (!v.ok()) return v.status();
      vertices = *std::move(v);
      row.vertices = CountCell(vertices.size(), e.expected_vertices);
    } else if (e.vertices == Enumerate::kSkip) {
      row.vertices.flag = CellFlag::kSkipped;
    }
    const bool run_kernels = e.kernels == Enumerate::kYes ||
                             (e.kernels == Enumerate::kLong && options.long_runs);
    if (run_kernels) {
      absl::StatusOr<std::vector<KernelMechanism>> k =
          CachedKernels(*space, vertices, options.enumeration, cache, options.verify_cache);
      if (!k.ok()) return k.status();
      row.kernels = CountCell(k->size(), e.expected_kernels);
    } else if (e.kernels != Enumerate::kNotApplicable) {
      row.kernels.flag = CellFlag::kSkipped;
    }

    absl::StatusOr<CapacityReport> mult = TypeCapacityLp(*space, CapacityMode::kMultiplicative);
    if (!mult.ok()) return mult.status();
    row.mult = CapacityCell(*mult, e.mult);
    absl::StatusOr<CapacityReport> add = TypeCapacityLp(*space, CapacityMode::kAdditive);
    if (!add.ok()) return add.status();
    row.add = CapacityCell(*add, e.add);
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string ReproduceCsv(const ReproduceResult& result) {
  std::string out =
      "Dims,Vertices,Kernels,MultCapacity,AddCapacity,"
      "VerticesMatch,KernelsMatch,MultCapacityMatch,AddCapacityMatch\n";
  for (const ReproduceRow& r : result.rows) {
    absl::StrAppend(&out, r.dims, ",", r.vertices.value, ",", r.kernels.value, ",", r.mult.value,
                    ",", r.add.value, ",", CellFlagName(r.vertices.flag), ",",
                    CellFlagName(r.kernels.flag), ",", CellFlagName(r.mult.flag), ",",
                    CellFlagName(r.add.flag), "\n");
  }
  return out;
}

Json ReproduceJson(const ReproduceResult& result) {
  Json rows = Json::array();
  auto cell = [](const ReproduceCell& c) {
    return Json{{"value", c.value}, {"flag", CellFlagName(c.flag)}};
  };
  for (const ReproduceRow& r : result.rows) {
    rows.push_back(Json{{"dims", r.dims},
                        {"vertices", cell(r.vertices)},
                        {"kernels", cell(r.kernels)},
                        {"mult_capacity", cell(r.mult)},
                        {"add_capacity", cell(r.add)}});
  }
  return Json{{"table", result.table}, {"rows", rows}, {"all_match", result.all_match()}};
}

}  // namespace mdp
