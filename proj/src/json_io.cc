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

#include "mdp/json_io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace mdp {
namespace {

absl::Status Bad(const std::string& what) { return absl::InvalidArgumentError(what); }

absl::StatusOr<std::vector<std::string>> Strings(const Json& j, const char* field) {
  if (!j.is_array()) return Bad(absl::StrCat("\"", field, "\" must be an array of strings"));
  std::vector<std::string> out;
  for (const Json& e : j) {
    if (!e.is_string()) return Bad(absl::StrCat("\"", field, "\" must be an array of strings"));
    out.push_back(e.get<std::string>());
  }
  return out;
}

absl::StatusOr<Matrix> MatrixFromJson(const Json& j, const char* field, size_t cols_if_empty) {
  if (!j.is_array()) return Bad(absl::StrCat("\"", field, "\" must be an array of rows"));
  std::vector<Vector> rows;
  for (const Json& r : j) {
    absl::StatusOr<Vector> v = VectorFromJson(r);
    if (!v.ok()) return Bad(absl::StrCat("in \"", field, "\": ", v.status().message()));
    rows.push_back(*std::move(v));
  }
  return Matrix::FromRows(rows, cols_if_empty);
}

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) rows.push_back(VectorToJson(m.Row(r)));
  return rows;
}

absl::StatusOr<int> IntField(const Json& j, const char* field) {
  if (!j.contains(field)) return Bad(absl::StrCat("missing field \"", field, "\""));
  const Json& v = j.at(field);
  if (!v.is_number_integer()) return Bad(absl::StrCat("\"", field, "\" must be an integer"));
  return v.get<int>();
}

}  // namespace

absl::StatusOr<Json> ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    size_t line = 1, column = 1;
    const size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return Bad(absl::StrCat("malformed JSON at line ", line, ", column ", column));
  }
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<Json> j = ParseJson(buffer.str());
  if (!j.ok()) return Bad(absl::StrCat(path, ": ", j.status().message()));
  return j;
}

absl::StatusOr<Scalar> ScalarFromJson(const Json& j) {
  if (j.is_string()) return ParseScalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.dump(), 10);
  if (j.is_number_float()) return ParseScalar(j.dump());
  return Bad(absl::StrCat("expected a number, got ", j.dump()));
}

Json ScalarToJson(const Scalar& s) { return ToString(s); }

absl::StatusOr<Vector> VectorFromJson(const Json& j) {
  if (!j.is_array()) return Bad(absl::StrCat("expected an array, got ", j.dump()));
  Vector out;
  for (const Json& e : j) {
    absl::StatusOr<Scalar> s = ScalarFromJson(e);
    if (!s.ok()) return s.status();
    out.push_back(*std::move(s));
  }
  return out;
}

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (const Scalar& s : v) out.push_back(ScalarToJson(s));
  return out;
}

absl::StatusOr<MetricSpec> MetricSpecFromJson(const Json& j) {
  if (!j.is_object()) return Bad("metric must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) return Bad("metric needs a string \"kind\"");
  absl::StatusOr<MetricKind> kind = ParseMetricKind(j.at("kind").get<std::string>());
  if (!kind.ok()) return kind.status();
  MetricSpec spec;
  spec.kind = *kind;
  if (j.contains("base")) {
    absl::StatusOr<Scalar> base = ScalarFromJson(j.at("base"));
    if (!base.ok()) return base.status();
    spec.base = *base;
  }
  if (j.contains("precision_digits")) {
    absl::StatusOr<int> p = IntField(j, "precision_digits");
    if (!p.ok()) return p.status();
    spec.precision_digits = *p;
  }
  switch (spec.kind) {
    case MetricKind::kLine:
    case MetricKind::kDiscrete: {
      absl::StatusOr<int> n = IntField(j, "n");
      if (!n.ok()) return n.status();
      spec.n = *n;
      break;
    }
    case MetricKind::kGrid: {
      absl::StatusOr<int> w = IntField(j, "width");
      if (!w.ok()) return w.status();
      absl::StatusOr<int> h = IntField(j, "height");
      if (!h.ok()) return h.status();
      spec.width = *w;
      spec.height = *h;
      break;
    }
    case MetricKind::kHamming: {
      absl::StatusOr<int> b = IntField(j, "bits");
      if (!b.ok()) return b.status();
      spec.bits = *b;
      break;
    }
    case MetricKind::kCustom: {
      if (!j.contains("distances")) return Bad("custom metric needs \"distances\"");
      absl::StatusOr<Matrix> d = MatrixFromJson(j.at("distances"), "distances", 0);
      if (!d.ok()) return d.status();
      for (size_t r = 0; r < d->rows(); ++r) spec.distances.push_back(d->Row(r));
      break;
    }
  }
  return spec;
}

Json MetricSpecToJson(const MetricSpec& spec) {
  Json j = Json::object();
  j["kind"] = MetricKindName(spec.kind);
  j["base"] = ToString(spec.base);
  j["precision_digits"] = spec.precision_digits;
  switch (spec.kind) {
    case MetricKind::kLine:
    case MetricKind::kDiscrete:
      j["n"] = spec.n;
      break;
    case MetricKind::kGrid:
      j["width"] = spec.width;
      j["height"] = spec.height;
      break;
    case MetricKind::kHamming:
      j["bits"] = spec.bits;
      break;
    case MetricKind::kCustom: {
      Json rows = Json::array();
      for (const Vector& r : spec.distances) rows.push_back(VectorToJson(r));
      j["distances"] = rows;
      break;
    }
  }
  return j;
}

absl::StatusOr<Channel> ChannelFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("rows")) return Bad("channel needs \"rows\"");
  std::vector<std::string> x, y;
  if (j.contains("x_labels")) {
    absl::StatusOr<std::vector<std::string>> v = Strings(j.at("x_labels"), "x_labels");
    if (!v.ok()) return v.status();
    x = *std::move(v);
  }
  if (j.contains("y_labels")) {
    absl::StatusOr<std::vector<std::string>> v = Strings(j.at("y_labels"), "y_labels");
    if (!v.ok()) return v.status();
    y = *std::move(v);
  }
  absl::StatusOr<Matrix> m = MatrixFromJson(j.at("rows"), "rows", y.size());
  if (!m.ok()) return m.status();
  return Channel::Create(std::move(x), std::move(y), *std::move(m));
}

Json ChannelToJson(const Channel& c) {
  return Json{{"x_labels", c.x_labels()}, {"y_labels", c.y_labels()}, {"rows", MatrixToJson(c.matrix())}};
}

absl::StatusOr<Hyper> HyperFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("outers") || !j.contains("inners")) {
    return Bad("hyper needs \"outers\" and \"inners\"");
  }
  absl::StatusOr<Vector> outers = VectorFromJson(j.at("outers"));
  if (!outers.ok()) return outers.status();
  if (!j.at("inners").is_array()) return Bad("\"inners\" must be an array");
  std::vector<Vector> inners;
  for (const Json& e : j.at("inners")) {
    absl::StatusOr<Vector> v = VectorFromJson(e);
    if (!v.ok()) return v.status();
    inners.push_back(*std::move(v));
  }
  return MakeHyper(*std::move(outers), std::move(inners));
}

Json HyperToJson(const Hyper& h) {
  Json inners = Json::array();
  for (const Vector& v : h.inners) inners.push_back(VectorToJson(v));
  return Json{{"outers", VectorToJson(h.outers)}, {"inners", inners}};
}

absl::StatusOr<LossFunction> LossFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("table")) return Bad("loss needs \"table\"");
  std::vector<std::string> w, x;
  if (j.contains("w_labels")) {
    absl::StatusOr<std::vector<std::string>> v = Strings(j.at("w_labels"), "w_labels");
    if (!v.ok()) return v.status();
    w = *std::move(v);
  }
  if (j.contains("x_labels")) {
    absl::StatusOr<std::vector<std::string>> v = Strings(j.at("x_labels"), "x_labels");
    if (!v.ok()) return v.status();
    x = *std::move(v);
  }
  absl::StatusOr<Matrix> m = MatrixFromJson(j.at("table"), "table", x.size());
  if (!m.ok()) return m.status();
  return MakeLoss(std::move(w), std::move(x), *std::move(m));
}

Json LossToJson(const LossFunction& l) {
  return Json{{"w_labels", l.w_labels}, {"x_labels", l.x_labels}, {"table", MatrixToJson(l.table)}};
}

absl::StatusOr<Vector> PriorFromJson(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("prior")) return Bad("prior object needs \"prior\"");
    return VectorFromJson(j.at("prior"));
  }
  return VectorFromJson(j);
}

Json VerticesToJson(const std::vector<Vector>& vertices) {
  Json out = Json::array();
  for (const Vector& v : vertices) out.push_back(VectorToJson(v));
  return out;
}

absl::StatusOr<std::vector<Vector>> VerticesFromJson(const Json& j) {
  if (!j.is_array()) return Bad("vertex list must be an array");
  std::vector<Vector> out;
  for (const Json& e : j) {
    absl::StatusOr<Vector> v = VectorFromJson(e);
    if (!v.ok()) return v.status();
    out.push_back(*std::move(v));
  }
  return out;
}

Json KernelsToJson(const std::vector<KernelMechanism>& kernels) {
  Json out = Json::array();
  for (const KernelMechanism& k : kernels) {
    Json e = HyperToJson(k.hyper);
    e["vertex_indices"] = k.vertex_indices;
    out.push_back(std::move(e));
  }
  return out;
}

absl::StatusOr<std::vector<KernelMechanism>> KernelsFromJson(const Json& j) {
  if (!j.is_array()) return Bad("kernel list must be an array");
  std::vector<KernelMechanism> out;
  for (const Json& e : j) {
    absl::StatusOr<Hyper> h = HyperFromJson(e);
    if (!h.ok()) return h.status();
    if (!e.contains("vertex_indices") || !e.at("vertex_indices").is_array()) {
      return Bad("kernel entry needs \"vertex_indices\"");
    }
    KernelMechanism k;
    for (const Json& i : e.at("vertex_indices")) {
      if (!i.is_number_unsigned()) return Bad("vertex index must be a non-negative integer");
      k.vertex_indices.push_back(i.get<size_t>());
    }
    k.hyper = *std::move(h);
    out.push_back(std::move(k));
  }
  return out;
}

Json CapacityReportToJson(const CapacityReport& r) {
  return Json{{"mode", CapacityModeName(r.mode)},
              {"value", ToString(r.value)},
              {"method", CapacityMethodName(r.method)},
              {"witness", ChannelToJson(r.witness)},
              {"precision_digits", r.precision_digits}};
}

Json VerdictToJson(const OptimalityVerdict& v) {
  Json j{{"verdict", VerdictName(v.kind)}};
  if (v.kind == VerdictKind::kCounterexample) {
    j["prior"] = VectorToJson(v.prior);
    j["rival_index"] = v.rival_index;
    j["rival"] = HyperToJson(v.rival);
    j["margin"] = ToString(v.margin);
  }
  if (v.kind == VerdictKind::kUnknown) {
    j["reason"] = v.reason;
    j["samples_tried"] = v.samples_tried;
  }
  return j;
}

}  // namespace mdp
