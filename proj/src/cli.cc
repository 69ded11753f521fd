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

#include "mdp/cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "mdp/cache.h"
#include "mdp/capacity.h"
#include "mdp/json_io.h"
#include "mdp/leakage.h"
#include "mdp/optimality.h"
#include "mdp/reproduce.h"

namespace mdp {
namespace {

struct Globals {
  std::string format = "text";
  int threads = 1;
  bool no_cache = false;
  bool verify_cache = false;
  std::string cache_dir;
  bool long_runs = false;
};

struct Context {
  const Globals& g;
  std::ostream& out;
  std::ostream& err;
  ResultCache cache;

  bool json() const { return g.format == "json"; }
  bool csv() const { return g.format == "csv"; }
  EnumerationOptions Enumeration(std::optional<int64_t> limit) const {
    EnumerationOptions o;
    o.threads = std::max(1, g.threads);
    if (limit.has_value()) o.max_candidates = *limit;
    return o;
  }
};

// Thrown from the handlers; carries the status to report.
struct Failure {
  absl::Status status;
};

template <typename T>
T Unwrap(absl::StatusOr<T> v) {
  if (!v.ok()) throw Failure{v.status()};
  return *std::move(v);
}

void Check(const absl::Status& s) {
  if (!s.ok()) throw Failure{s};
}

std::string Tuple(const Vector& v) {
  std::vector<std::string> parts;
  for (const Scalar& s : v) parts.push_back(ToString(s));
  return absl::StrCat("(", absl::StrJoin(parts, ", "), ")");
}

std::string Csv(const Vector& v) {
  std::vector<std::string> parts;
  for (const Scalar& s : v) parts.push_back(ToString(s));
  return absl::StrJoin(parts, ",");
}

std::string ValueText(const Scalar& v, int precision_digits) {
  return precision_digits == 0 ? ToString(v) : ToDecimal(v, 10);
}

MetricSpace LoadMetric(const std::string& path) {
  const Json j = Unwrap(ReadJsonFile(path));
  absl::StatusOr<MetricSpec> spec = MetricSpecFromJson(j);
  if (!spec.ok()) throw Failure{absl::InvalidArgumentError(absl::StrCat(path, ": ", spec.status().message()))};
  absl::StatusOr<MetricSpace> space = MakeMetric(*spec);
  if (!space.ok()) throw Failure{absl::InvalidArgumentError(absl::StrCat(path, ": ", space.status().message()))};
  return *std::move(space);
}

template <typename T>
T LoadWith(const std::string& path, absl::StatusOr<T> (*parse)(const Json&)) {
  const Json j = Unwrap(ReadJsonFile(path));
  absl::StatusOr<T> v = parse(j);
  if (!v.ok()) throw Failure{absl::InvalidArgumentError(absl::StrCat(path, ": ", v.status().message()))};
  return *std::move(v);
}

// Reorders the rows of `c` to follow `labels`, keeping every column.
Channel AlignChannel(const Channel& c, const std::vector<std::string>& labels) {
  if (c.num_inputs() != labels.size()) {
    throw Failure{absl::InvalidArgumentError(absl::StrCat(
        "channel has ", c.num_inputs(), " secrets but ", labels.size(), " are expected"))};
  }
  Matrix m(c.num_inputs(), c.num_outputs());
  for (size_t r = 0; r < labels.size(); ++r) {
    auto it = std::find(c.x_labels().begin(), c.x_labels().end(), labels[r]);
    if (it == c.x_labels().end()) {
      throw Failure{absl::InvalidArgumentError(absl::StrCat("unknown label \"", labels[r], "\""))};
    }
    const size_t src = static_cast<size_t>(it - c.x_labels().begin());
    for (size_t y = 0; y < c.num_outputs(); ++y) m(r, y) = c(src, y);
  }
  return Unwrap(Channel::Create(labels, c.y_labels(), std::move(m)));
}

LossFunction AlignLoss(const LossFunction& l, const std::vector<std::string>& labels) {
  if (l.num_secrets() != labels.size()) {
    throw Failure{absl::InvalidArgumentError(absl::StrCat(
        "loss has ", l.num_secrets(), " secrets but ", labels.size(), " are expected"))};
  }
  return Unwrap(RestrictLoss(l, labels));
}

Vector LoadPrior(const std::optional<std::string>& path, size_t n) {
  Vector prior = path.has_value() ? LoadWith<Vector>(*path, PriorFromJson) : UniformPrior(n);
  Check(ValidatePrior(prior, n));
  return prior;
}

void PrintHyper(const Context& ctx, const Hyper& h, const std::vector<std::string>& labels) {
  if (ctx.json()) {
    ctx.out << HyperToJson(h).dump(2) << "\n";
  } else if (ctx.csv()) {
    ctx.out << "outer," << absl::StrJoin(labels, ",") << "\n";
    for (size_t i = 0; i < h.size(); ++i) ctx.out << ToString(h.outers[i]) << "," << Csv(h.inners[i]) << "\n";
  } else {
    for (size_t i = 0; i < h.size(); ++i) {
      ctx.out << ToString(h.outers[i]) << " : " << Tuple(h.inners[i]) << "\n";
    }
  }
}

void PrintCapacity(const Context& ctx, const CapacityReport& r) {
  if (ctx.json()) {
    ctx.out << CapacityReportToJson(r).dump(2) << "\n";
  } else if (ctx.csv()) {
    ctx.out << "mode,value,method,precision_digits\n"
            << CapacityModeName(r.mode) << "," << ValueText(r.value, r.precision_digits) << ","
            << CapacityMethodName(r.method) << "," << r.precision_digits << "\n";
  } else {
    ctx.out << ValueText(r.value, r.precision_digits) << "\n";
  }
}

int DoVertices(Context& ctx, const std::string& metric, const std::optional<std::string>& out_path,
               std::optional<int64_t> limit) {
  const MetricSpace space = LoadMetric(metric);
  const std::vector<Vector> vertices =
      Unwrap(CachedVertices(space, ctx.Enumeration(limit), ctx.cache, ctx.g.verify_cache));
  if (out_path.has_value()) {
    std::ofstream f(*out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure{absl::InvalidArgumentError(absl::StrCat("cannot write ", *out_path))};
    f << VerticesToJson(vertices).dump() << "\n";
  }
  if (ctx.json()) {
    ctx.out << Json{{"count", vertices.size()}, {"labels", space.labels()},
                    {"vertices", VerticesToJson(vertices)}}
                   .dump(2)
            << "\n";
  } else if (ctx.csv()) {
    ctx.out << "index," << absl::StrJoin(space.labels(), ",") << "\n";
    for (size_t i = 0; i < vertices.size(); ++i) ctx.out << i << "," << Csv(vertices[i]) << "\n";
  } else {
    ctx.out << vertices.size() << " vertices\n";
    for (size_t i = 0; i < vertices.size(); ++i) ctx.out << "v" << i << " " << Tuple(vertices[i]) << "\n";
  }
  return kExitOk;
}

int DoKernels(Context& ctx, const std::string& metric, std::optional<int64_t> limit) {
  const MetricSpace space = LoadMetric(metric);
  const EnumerationOptions opts = ctx.Enumeration(limit);
  const std::vector<Vector> vertices =
      Unwrap(CachedVertices(space, opts, ctx.cache, ctx.g.verify_cache));
  const std::vector<KernelMechanism> kernels =
      Unwrap(CachedKernels(space, vertices, opts, ctx.cache, ctx.g.verify_cache));
  if (ctx.json()) {
    ctx.out << Json{{"count", kernels.size()}, {"labels", space.labels()},
                    {"kernels", KernelsToJson(kernels)}}
                   .dump(2)
            << "\n";
  } else if (ctx.csv()) {
    ctx.out << "kernel,vertex,outer," << absl::StrJoin(space.labels(), ",") << "\n";
    for (size_t k = 0; k < kernels.size(); ++k) {
      const Hyper& h = kernels[k].hyper;
      for (size_t i = 0; i < h.size(); ++i) {
        auto it = std::find(vertices.begin(), vertices.end(), h.inners[i]);
        ctx.out << k << "," << (it - vertices.begin()) << "," << ToString(h.outers[i]) << ","
                << Csv(h.inners[i]) << "\n";
      }
    }
  } else {
    ctx.out << kernels.size() << " kernels\n";
    for (size_t k = 0; k < kernels.size(); ++k) {
      const Hyper& h = kernels[k].hyper;
      std::vector<std::string> parts;
      for (size_t i = 0; i < h.size(); ++i) {
        parts.push_back(absl::StrCat(ToString(h.outers[i]), "*", Tuple(h.inners[i])));
      }
      ctx.out << "k" << k << " [" << absl::StrJoin(kernels[k].vertex_indices, ",") << "] "
              << absl::StrJoin(parts, " + ") << "\n";
    }
  }
  return kExitOk;
}

int DoCheckDp(Context& ctx, const std::string& channel, const std::string& metric) {
  const MetricSpace space = LoadMetric(metric);
  const Channel c = AlignChannel(LoadWith<Channel>(channel, ChannelFromJson), space.labels());
  const std::vector<DpViolation> violations = Unwrap(CheckDxPrivate(c, space));
  auto ratio = [](const DpViolation& v) { return v.ratio.has_value() ? ToString(*v.ratio) : "inf"; };
  if (ctx.json()) {
    Json list = Json::array();
    for (const DpViolation& v : violations) {
      list.push_back(Json{{"x", space.labels()[v.x]}, {"x2", space.labels()[v.x2]},
                          {"y", c.y_labels()[v.y]}, {"ratio", ratio(v)},
                          {"bound", ToString(space.stretch(v.x, v.x2))}});
    }
    ctx.out << Json{{"private", violations.empty()}, {"violations", list}}.dump(2) << "\n";
  } else if (ctx.csv()) {
    ctx.out << "x,x2,y,ratio,bound\n";
    for (const DpViolation& v : violations) {
      ctx.out << space.labels()[v.x] << "," << space.labels()[v.x2] << "," << c.y_labels()[v.y]
              << "," << ratio(v) << "," << ToString(space.stretch(v.x, v.x2)) << "\n";
    }
  } else {
    ctx.out << "dx-private: " << (violations.empty() ? "yes" : "no") << "\n";
    for (const DpViolation& v : violations) {
      ctx.out << "  C[" << space.labels()[v.x] << "," << c.y_labels()[v.y] << "] / C["
              << space.labels()[v.x2] << "," << c.y_labels()[v.y] << "] = " << ratio(v) << " > "
              << ToString(space.stretch(v.x, v.x2)) << "\n";
    }
  }
  return violations.empty() ? kExitOk : kExitViolation;
}

int DoToHyper(Context& ctx, const std::string& channel, const std::optional<std::string>& prior_path) {
  const Channel c = LoadWith<Channel>(channel, ChannelFromJson);
  const Vector prior = LoadPrior(prior_path, c.num_inputs());
  PrintHyper(ctx, Unwrap(ToHyper(c, prior)), c.x_labels());
  return kExitOk;
}

int DoRefines(Context& ctx, const std::string& b_path, const std::string& a_path) {
  const Channel b = LoadWith<Channel>(b_path, ChannelFromJson);
  const Channel a = AlignChannel(LoadWith<Channel>(a_path, ChannelFromJson), b.x_labels());
  const Refinement r = Unwrap(Refines(b, a));
  if (ctx.json()) {
    Json j{{"refines", r.refines}};
    if (r.refines) {
      Json rows = Json::array();
      for (size_t i = 0; i < r.witness.rows(); ++i) rows.push_back(VectorToJson(r.witness.Row(i)));
      j["witness"] = rows;
    }
    ctx.out << j.dump(2) << "\n";
  } else if (ctx.csv()) {
    ctx.out << "refines\n" << (r.refines ? "yes" : "no") << "\n";
  } else {
    ctx.out << (r.refines ? "Yes" : "No") << "\n";
    if (r.refines) {
      for (size_t i = 0; i < r.witness.rows(); ++i) ctx.out << "  " << Tuple(r.witness.Row(i)) << "\n";
    }
  }
  return r.refines ? kExitOk : kExitViolation;
}

int DoUtility(Context& ctx, const std::string& channel, const std::string& loss_path,
              const std::optional<std::string>& prior_path) {
  const Channel c = LoadWith<Channel>(channel, ChannelFromJson);
  const LossFunction loss = AlignLoss(LoadWith<LossFunction>(loss_path, LossFromJson), c.x_labels());
  const Vector prior = LoadPrior(prior_path, c.num_inputs());
  const Scalar before = Unwrap(PriorUncertainty(loss, prior));
  const Scalar after = Unwrap(PosteriorUncertainty(loss, prior, c));
  if (ctx.json()) {
    ctx.out << Json{{"prior_uncertainty", ToString(before)},
                    {"posterior_uncertainty", ToString(after)},
                    {"additive_leakage", ToString(before - after)}}
                   .dump(2)
            << "\n";
  } else if (ctx.csv()) {
    ctx.out << "prior_uncertainty,posterior_uncertainty,additive_leakage\n"
            << ToString(before) << "," << ToString(after) << "," << ToString(before - after) << "\n";
  } else {
    ctx.out << "prior uncertainty: " << ToString(before) << "\n"
            << "posterior uncertainty: " << ToString(after) << "\n"
            << "additive leakage: " << ToString(before - after) << "\n";
  }
  return kExitOk;
}

int DoCapacity(Context& ctx, const std::string& metric, const std::string& mode_name,
               bool closed_form) {
  const MetricSpace space = LoadMetric(metric);
  const CapacityMode mode = Unwrap(ParseCapacityMode(mode_name));
  CapacityReport report;
  if (closed_form) {
    const MetricSpec& spec = space.spec();
    report.mode = mode;
    report.method = CapacityMethod::kClosedForm;
    report.value = Unwrap(TypeCapacityClosedForm(spec.kind, static_cast<int>(space.size()), spec.base, mode));
  } else {
    report = Unwrap(TypeCapacityLp(space, mode));
  }
  PrintCapacity(ctx, report);
  return kExitOk;
}

int DoChannelCapacity(Context& ctx, const std::string& channel, const std::string& mode_name) {
  const Channel c = LoadWith<Channel>(channel, ChannelFromJson);
  PrintCapacity(ctx, ChannelCapacityReport(c, Unwrap(ParseCapacityMode(mode_name))));
  return kExitOk;
}

int DoOptimal(Context& ctx, const std::string& channel, const std::string& loss_path,
              const std::string& metric, const std::string& mode, int samples, uint64_t seed) {
  const MetricSpace space = LoadMetric(metric);
  const Channel c = AlignChannel(LoadWith<Channel>(channel, ChannelFromJson), space.labels());
  const LossFunction loss =
      AlignLoss(LoadWith<LossFunction>(loss_path, LossFromJson), space.labels());
  if (!Unwrap(CheckDxPrivate(c, space)).empty()) {
    ctx.err << "error: the channel is not dx-private for this metric\n";
    return kExitViolation;
  }
  const EnumerationOptions opts = ctx.Enumeration(std::nullopt);
  const std::vector<Vector> vertices =
      Unwrap(CachedVertices(space, opts, ctx.cache, ctx.g.verify_cache));
  const std::vector<KernelMechanism> kernels =
      Unwrap(CachedKernels(space, vertices, opts, ctx.cache, ctx.g.verify_cache));
  OptimalityOptions o;
  o.exact = mode == "exact";
  o.samples = samples;
  o.seed = seed;
  const OptimalityVerdict v = Unwrap(CheckUniversalLOptimal(c, loss, kernels, o));
  if (ctx.json()) {
    ctx.out << VerdictToJson(v).dump(2) << "\n";
  } else if (ctx.csv()) {
    ctx.out << "verdict,rival_index,margin,prior\n" << VerdictName(v.kind) << ",";
    if (v.kind == VerdictKind::kCounterexample) {
      ctx.out << v.rival_index << "," << ToString(v.margin) << "," << absl::StrJoin(v.prior, " ", [](std::string* s, const Scalar& x) { s->append(ToString(x)); });
    } else {
      ctx.out << ",,";
    }
    ctx.out << "\n";
  } else {
    ctx.out << VerdictName(v.kind) << "\n";
    if (v.kind == VerdictKind::kCounterexample) {
      ctx.out << "prior: " << Tuple(v.prior) << "\n"
              << "rival: kernel k" << v.rival_index << "\n"
              << "margin: " << ToString(v.margin) << "\n";
    } else if (v.kind == VerdictKind::kUnknown) {
      ctx.out << "reason: " << v.reason << "\n";
    }
  }
  if (v.kind == VerdictKind::kCounterexample) return kExitViolation;
  if (v.kind == VerdictKind::kUnknown && o.exact) return kExitBudget;
  return kExitOk;
}

int DoReproduce(Context& ctx, const std::string& table, std::optional<int> max_n) {
  ReproduceOptions o;
  o.table = table;
  o.max_n = max_n;
  o.long_runs = ctx.g.long_runs;
  o.enumeration = ctx.Enumeration(std::nullopt);
  o.cache = &ctx.cache;
  o.verify_cache = ctx.g.verify_cache;
  const ReproduceResult r = Unwrap(Reproduce(o));
  if (ctx.json()) {
    ctx.out << ReproduceJson(r).dump(2) << "\n";
  } else {
    ctx.out << ReproduceCsv(r);
  }
  return r.all_match() ? kExitOk : kExitViolation;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk: return kExitOk;
    case absl::StatusCode::kResourceExhausted: return kExitBudget;
    case absl::StatusCode::kDataLoss: return kExitViolation;
    default: return kExitUsage;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Exact geometry of metric differential privacy mechanisms", "mdp");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output encoding")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the result cache");
  app.add_flag("--verify-cache", g.verify_cache, "Recompute cache hits and compare");
  app.add_option("--cache-dir", g.cache_dir, "Cache directory");
  app.add_flag("--long", g.long_runs, "Include long enumerations in reproduce");

  std::string metric, channel, loss, mode, b_path, a_path, table;
  std::optional<std::string> out_path, prior;
  std::optional<int64_t> limit;
  std::optional<int> max_n;
  bool closed_form = false;
  int samples = 1000;
  uint64_t seed = 1;
  std::function<int(Context&)> action;

  CLI::App* vertices = app.add_subcommand("vertices", "Enumerate vertex posteriors of a type");
  vertices->add_option("--metric", metric)->required();
  vertices->add_option("--out", out_path, "Also write the vertex list as JSON");
  vertices->add_option("--limit", limit, "Candidate budget")->check(CLI::PositiveNumber);
  vertices->callback([&] { action = [&](Context& c) { return DoVertices(c, metric, out_path, limit); }; });

  CLI::App* kernels = app.add_subcommand("kernels", "Enumerate kernel mechanisms of a type");
  kernels->add_option("--metric", metric)->required();
  kernels->add_option("--limit", limit, "Search budget")->check(CLI::PositiveNumber);
  kernels->callback([&] { action = [&](Context& c) { return DoKernels(c, metric, limit); }; });

  CLI::App* check_dp = app.add_subcommand("check-dp", "Check dx-privacy of a channel");
  check_dp->add_option("--channel", channel)->required();
  check_dp->add_option("--metric", metric)->required();
  check_dp->callback([&] { action = [&](Context& c) { return DoCheckDp(c, channel, metric); }; });

  CLI::App* to_hyper = app.add_subcommand("to-hyper", "Push a prior through a channel");
  to_hyper->add_option("--channel", channel)->required();
  to_hyper->add_option("--prior", prior);
  to_hyper->callback([&] { action = [&](Context& c) { return DoToHyper(c, channel, prior); }; });

  CLI::App* refines = app.add_subcommand("refines", "Decide whether B refines A");
  refines->add_option("--b", b_path)->required();
  refines->add_option("--a", a_path)->required();
  refines->callback([&] { action = [&](Context& c) { return DoRefines(c, b_path, a_path); }; });

  CLI::App* utility = app.add_subcommand("utility", "Prior and posterior expected loss");
  utility->add_option("--channel", channel)->required();
  utility->add_option("--loss", loss)->required();
  utility->add_option("--prior", prior);
  utility->callback([&] { action = [&](Context& c) { return DoUtility(c, channel, loss, prior); }; });

  CLI::App* capacity = app.add_subcommand("capacity", "Capacity of a privacy type");
  capacity->add_option("--metric", metric)->required();
  capacity->add_option("--mode", mode)->required()->check(CLI::IsMember({"add", "mult"}));
  capacity->add_flag("--closed-form", closed_form);
  capacity->callback([&] { action = [&](Context& c) { return DoCapacity(c, metric, mode, closed_form); }; });

  CLI::App* channel_capacity = app.add_subcommand("channel-capacity", "Capacity of one channel");
  channel_capacity->add_option("--channel", channel)->required();
  channel_capacity->add_option("--mode", mode)->required()->check(CLI::IsMember({"add", "mult"}));
  channel_capacity->callback([&] { action = [&](Context& c) { return DoChannelCapacity(c, channel, mode); }; });

  CLI::App* optimal = app.add_subcommand("optimal", "Decide universal optimality for a loss");
  optimal->add_option("--channel", channel)->required();
  optimal->add_option("--loss", loss)->required();
  optimal->add_option("--metric", metric)->required();
  optimal->add_option("--mode", mode)->required()->check(CLI::IsMember({"exact", "sample"}));
  optimal->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  optimal->add_option("--seed", seed);
  optimal->callback([&] {
    action = [&](Context& c) { return DoOptimal(c, channel, loss, metric, mode, samples, seed); };
  });

  CLI::App* reproduce = app.add_subcommand("reproduce", "Recompute a reference table as CSV");
  reproduce->add_option("--table", table)
      ->required()
      ->check(CLI::IsMember({"euclid", "discrete", "grid", "hamming"}));
  reproduce->add_option("--max-n", max_n);
  reproduce->callback([&] { action = [&](Context& c) { return DoReproduce(c, table, max_n); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const std::vector<CLI::App*> used = app.get_subcommands();
    out << (used.empty() ? app.help() : used.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!action) {
    err << "error: no subcommand\n";
    return kExitUsage;
  }
  const std::string dir = g.cache_dir.empty() ? ResultCache::DefaultDir() : g.cache_dir;
  Context ctx{g, out, err, ResultCache(dir, !g.no_cache)};
  try {
    return action(ctx);
  } catch (const Failure& f) {
    err << "error: " << f.status.message() << "\n";
    return ExitCodeFor(f.status);
  }
}

}  // namespace mdp
