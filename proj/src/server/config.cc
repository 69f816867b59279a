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

#include "c3/server/config.h"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "c3/core/errors.h"

namespace c3::server {

using nlohmann::json;

std::string_view ProtocolName(Protocol p) {
  switch (p) {
    case Protocol::kHibp: return "hibp";
    case Protocol::kFsb: return "fsb";
    case Protocol::kGpc: return "gpc";
    case Protocol::kIdb: return "idb";
  }
  return "?";
}

Protocol ParseProtocol(std::string_view name) {
  if (name == "hibp" || name == "range") return Protocol::kHibp;
  if (name == "fsb") return Protocol::kFsb;
  if (name == "gpc") return Protocol::kGpc;
  if (name == "idb") return Protocol::kIdb;
  throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

std::filesystem::path ServiceConfig::StorePath(Protocol p) const {
  return data_dir / (std::string(ProtocolName(p)) + ".c3kv");
}

namespace {

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

ServiceConfig ParseServiceConfig(std::string_view text,
                                 const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ServiceConfig c;
  Read(j, "host", c.host);
  Read(j, "port", c.port);
  if (c.port < 0 || c.port > 65535) throw ConfigError("config field 'port' out of range");
  if (j.contains("protocols")) {
    c.protocols.clear();
    std::vector<std::string> names;
    Read(j, "protocols", names);
    for (const auto& n : names) c.protocols.insert(ParseProtocol(n));
    if (c.protocols.empty()) throw ConfigError("config enables no protocols");
  }

  std::string path;
  auto read_path = [&](const char* key, std::filesystem::path& out) {
    path.clear();
    Read(j, key, path);
    if (!path.empty()) out = Resolve(base_dir, path);
  };
  c.data_dir = base_dir / c.data_dir;
  read_path("data_dir", c.data_dir);
  read_path("hashes", c.hashes);
  read_path("passwords", c.passwords);
  read_path("pairs", c.pairs);
  read_path("server_key", c.server_key);
  if (c.server_key.empty()) c.server_key = c.data_dir / "server.key";

  if (j.contains("range_prefix_length")) {
    const auto& v = j["range_prefix_length"];
    if (v.is_string() && v.get<std::string>() == "auto") {
      c.range_prefix_length.reset();
    } else if (v.is_number_unsigned()) {
      c.range_prefix_length = v.get<size_t>();
    } else {
      throw ConfigError("config field 'range_prefix_length' must be a count or \"auto\"");
    }
  }
  std::string alg;
  Read(j, "range_algorithm", alg);
  if (!alg.empty()) c.range_algorithm = ParseAlgorithm(alg);
  if (c.range_prefix_length &&
      (*c.range_prefix_length < 1 ||
       *c.range_prefix_length > DigestHexLength(c.range_algorithm))) {
    throw ConfigError("config field 'range_prefix_length' out of range");
  }
  Read(j, "full_hash_range", c.full_hash_range);
  Read(j, "psi_bits", c.psi_bits);
  if (c.psi_bits < 1 || c.psi_bits > 32) {
    throw ConfigError("config field 'psi_bits' must be in [1, 32]");
  }
  std::string profile;
  Read(j, "slow_hash_profile", profile);
  if (!profile.empty()) c.slow_hash = psi::SlowHashProfile::Named(profile);
  Read(j, "rate_limit_per_minute", c.rate_limit_per_minute);

  if (j.contains("fsb")) {
    const json& f = j["fsb"];
    Read(f, "num_buckets", c.fsb.num_buckets);
    Read(f, "q_bar", c.fsb.q_bar);
    Read(f, "histogram_size", c.fsb.histogram_size);
    Read(f, "smoothing", c.fsb.smoothing);
    Read(f, "salt", c.fsb.salt);
    Read(f, "shards", c.fsb.shards);
    if (c.fsb.num_buckets < 1) throw ConfigError("config field 'fsb.num_buckets' must be >= 1");
    if (c.fsb.q_bar < 1) throw ConfigError("config field 'fsb.q_bar' must be >= 1");
    if (c.fsb.histogram_size < 1) throw ConfigError("config field 'fsb.histogram_size' must be >= 1");
  }
  return c;
}

ServiceConfig LoadServiceConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseServiceConfig(ss.str(), path.parent_path().empty()
                                          ? std::filesystem::path(".")
                                          : path.parent_path());
}

}  // namespace c3::server
