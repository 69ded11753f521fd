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

#include "mdp/cache.h"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"

namespace mdp {

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

std::string ResultCache::DefaultDir() {
  if (const char* env = std::getenv("MDP_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return absl::StrCat(home, "/.cache/mdp-workbench");
  }
  return ".mdp-cache";
}

std::string ResultCache::Key(const MetricSpec& spec, const std::string& op) {
  return Sha256Hex(absl::StrCat(MetricSpecToJson(spec).dump(), "\n", op));
}

std::string ResultCache::Path(const std::string& key) const {
  return absl::StrCat(dir_, "/", key, ".json");
}

std::optional<Json> ResultCache::Load(const std::string& key, const std::string& op) const {
  if (!enabled_) return std::nullopt;
  std::ifstream in(Path(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json j = Json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("tool_version", "") != kToolVersion || j.value("key", "") != key ||
      j.value("op", "") != op || !j.contains("payload")) {
    return std::nullopt;
  }
  return j.at("payload");
}

absl::Status ResultCache::Store(const std::string& key, const std::string& op,
                                const Json& payload) const {
  if (!enabled_) return absl::OkStatus();
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return absl::UnavailableError(absl::StrCat("cannot create cache dir ", dir_));
  Json entry{{"tool_version", kToolVersion}, {"key", key}, {"op", op}, {"payload", payload}};
  const std::string tmp = Path(key) + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", tmp));
    out << entry.dump();
  }
  std::filesystem::rename(tmp, Path(key), ec);
  if (ec) return absl::UnavailableError(absl::StrCat("cannot write ", Path(key)));
  return absl::OkStatus();
}

namespace {

template <typename T, typename Compute, typename ToJson, typename FromJson>
absl::StatusOr<T> Cached(const MetricSpace& space, const std::string& op, const ResultCache& cache,
                         bool verify, Compute compute, ToJson to_json, FromJson from_json) {
  const bool cacheable = cache.enabled() && !space.restricted();
  const std::string key = ResultCache::Key(space.spec(), op);
  std::optional<Json> hit;
  if (cacheable) hit = cache.Load(key, op);
  if (hit.has_value() && !verify) {
    absl::StatusOr<T> loaded = from_json(*hit);
    if (loaded.ok()) return loaded;
    hit.reset();
  }
  absl::StatusOr<T> fresh = compute();
  if (!fresh.ok()) return fresh.status();
  const Json payload = to_json(*fresh);
  if (hit.has_value() && verify && hit->dump() != payload.dump()) {
    return absl::DataLossError(absl::StrCat("cached ", op, " differ from a fresh computation"));
  }
  if (cacheable && !hit.has_value()) {
    absl::Status stored = cache.Store(key, op, payload);
    if (!stored.ok()) return stored;
  }
  return fresh;
}

}  // namespace

absl::StatusOr<std::vector<Vector>> CachedVertices(const MetricSpace& space,
                                                   const EnumerationOptions& options,
                                                   const ResultCache& cache, bool verify) {
  return Cached<std::vector<Vector>>(
      space, "vertices", cache, verify,
      [&] { return EnumerateVertices(BuildConstraints(space), options); }, VerticesToJson,
      VerticesFromJson);
}

absl::StatusOr<std::vector<KernelMechanism>> CachedKernels(const MetricSpace& space,
                                                           const std::vector<Vector>& vertices,
                                                           const EnumerationOptions& options,
                                                           const ResultCache& cache, bool verify) {
  return Cached<std::vector<KernelMechanism>>(
      space, "kernels", cache, verify,
      [&] { return EnumerateKernels(vertices, space.size(), options); }, KernelsToJson,
      KernelsFromJson);
}

}  // namespace mdp
