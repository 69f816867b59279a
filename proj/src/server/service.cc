/*
 * Copyright 2026 The C3 Toolkit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "c3/server/service.h"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::server {

using nlohmann::json;

namespace {

Response ErrorResponse(int status, std::string message) {
  return {status, "text/plain", std::move(message) + "\n", false};
}

std::optional<uint64_t> ParseDecimal(std::string_view s) {
  if (s.empty() || s.size() > 20) return std::nullopt;
  uint64_t v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Splits an application/x-www-form-urlencoded body. Values used here are
// hex and decimal only, so no percent-decoding is needed; anything else is
// rejected by the field parsers.
std::optional<std::string_view> FormField(std::string_view body,
                                          std::string_view name) {
  while (!body.empty()) {
    auto amp = body.find('&');
    std::string_view pair = body.substr(0, amp);
    auto eq = pair.find('=');
    if (eq != std::string_view::npos && pair.substr(0, eq) == name) {
      return pair.substr(eq + 1);
    }
    if (amp == std::string_view::npos) break;
    body.remove_prefix(amp + 1);
  }
  return std::nullopt;
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

C3Service::C3Service(ServiceStores stores) : stores_(std::move(stores)) {}

std::shared_ptr<C3Service> C3Service::Open(const ServiceConfig& config) {
  const auto manifest_path = config.ManifestPath();
  if (!std::filesystem::exists(manifest_path)) {
    throw ConfigError("no manifest at " + manifest_path.string() +
                      "; run the build first");
  }
  ServiceStores s;
  s.manifest = ReadFile(manifest_path);
  json m;
  try {
    m = json::parse(s.manifest);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  auto open = [&](Protocol p) -> std::shared_ptr<const KvStore> {
    const std::string name(ProtocolName(p));
    if (!config.Enabled(p) || !m.contains(name)) return nullptr;
    return SortedFileKvStore::Open(config.data_dir /
                                   m[name].at("store").get<std::string>());
  };
  try {
    if (auto kv = open(Protocol::kHibp)) {
      s.range = kv;
      s.range_prefix_length = m["hibp"].at("prefix_length").get<size_t>();
      s.full_hash_range = config.full_hash_range;
    }
    if (auto kv = open(Protocol::kFsb)) {
      s.fsb = std::make_shared<bucketize::IntervalStore>(
          bucketize::IntervalStore::Read(*kv));
    }
    if (auto kv = open(Protocol::kGpc)) {
      s.gpc = std::make_shared<psi::PsiBucketStore>(psi::PsiBucketStore::Read(*kv));
    }
    if (auto kv = open(Protocol::kIdb)) {
      s.idb = std::make_shared<psi::PsiBucketStore>(psi::PsiBucketStore::Read(*kv));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest is incomplete: ") + e.what());
  }
  if (s.gpc || s.idb) {
    s.key = psi::ServerKey::Load(config.server_key);
    for (const auto& store : {s.gpc, s.idb}) {
      if (store && store->key_id() != s.key->id()) {
        throw ConfigError("PSI store was built with key " + store->key_id() +
                          ", loaded key is " + s.key->id());
      }
    }
  }
  return std::make_shared<C3Service>(std::move(s));
}

Response C3Service::HandleRange(std::string_view prefix) const {
  if (!stores_.range) return ErrorResponse(503, "range store unavailable");
  if (prefix.size() != stores_.range_prefix_length || !IsHexString(prefix)) {
    return ErrorResponse(400, "prefix must be " +
                          std::to_string(stores_.range_prefix_length) +
                          " hex characters");
  }
  const std::string canonical = ToUpperHex(prefix);
  Response r;
  r.immutable = true;
  stores_.range->ScanPrefix(canonical, [&](std::string_view hash,
                                           std::string_view) {
    r.body.append(stores_.full_hash_range ? hash : hash.substr(canonical.size()));
    r.body.push_back('\n');
  });
  return r;
}

Response C3Service::HandleFsb(std::string_view bucket) const {
  if (!stores_.fsb) return ErrorResponse(503, "fsb store unavailable");
  auto id = ParseDecimal(bucket);
  if (!id || *id >= stores_.fsb->params().num_buckets) {
    return ErrorResponse(400, "bucket id must be an integer in [0, " +
                          std::to_string(stores_.fsb->params().num_buckets) +
                          ")");
  }
  Response r;
  r.immutable = true;
  for (const auto& d : stores_.fsb->QueryHex(*id)) {
    r.body += d;
    r.body.push_back('\n');
  }
  return r;
}

Response C3Service::HandlePsi(std::string_view mode,
                              std::string_view body) const {
  std::shared_ptr<const psi::PsiBucketStore> store;
  if (mode == "gpc") {
    store = stores_.gpc;
  } else if (mode == "idb") {
    store = stores_.idb;
  } else {
    return ErrorResponse(404, "unknown PSI mode");
  }
  if (!store || !stores_.key) return ErrorResponse(404, "PSI mode not served");

  auto x_text = FormField(body, "x");
  auto b_text = FormField(body, "b");
  if (!x_text || !b_text) return ErrorResponse(400, "body must carry x and b");
  auto bucket = ParseDecimal(*b_text);
  if (!bucket || *bucket >= (uint64_t{1} << store->bits())) {
    return ErrorResponse(400, "bucket id out of range");
  }
  std::optional<psi::Element> x;
  try {
    x = psi::Element::FromHex(*x_text);
  } catch (const ProtocolError& e) {
    return ErrorResponse(400, e.what());
  }
  const psi::Element y = psi::ServerEvaluate(*stores_.key, *x);
  json out;
  out["y"] = y.Hex();
  out["z"] = json::array();
  for (const auto& e : store->Bucket(*bucket)) out["z"].push_back(e.Hex());
  return {200, "application/json", out.dump(), false};
}

Response C3Service::HandleMeta() const {
  return {200, "application/json", stores_.manifest, false};
}

Response C3Service::Dispatch(std::string_view method, std::string_view path,
                             std::string_view body) const {
  auto strip = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (!path.starts_with(prefix)) return std::nullopt;
    return path.substr(prefix.size());
  };
  if (method == "GET") {
    if (path == "/meta") return HandleMeta();
    if (auto rest = strip("/range/")) return HandleRange(*rest);
    if (auto rest = strip("/fsb/")) return HandleFsb(*rest);
  } else if (method == "POST") {
    if (auto rest = strip("/psi/")) return HandlePsi(*rest, body);
  }
  return ErrorResponse(404, "not found");
}

}  // namespace c3::server
