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

#ifndef C3_SERVER_CONFIG_H_
#define C3_SERVER_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "c3/core/password_hash.h"
#include "c3/psi/slow_hash.h"

namespace c3::server {

enum class Protocol { kHibp, kFsb, kGpc, kIdb };

std::string_view ProtocolName(Protocol p);
// Throws ConfigError on unknown names.
Protocol ParseProtocol(std::string_view name);

struct FsbConfig {
  uint64_t num_buckets = 1 << 16;
  uint64_t q_bar = 1000;
  size_t histogram_size = 100'000;
  double smoothing = 0.01;
  std::string salt = "c3-fsb";
  // 0 picks the default (about four million intervals per shard).
  size_t shards = 0;
};

// Build and serve parameters, usually read from one JSON file. Relative
// paths are resolved against the file's directory.
struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::set<Protocol> protocols = {Protocol::kHibp, Protocol::kFsb,
                                  Protocol::kGpc, Protocol::kIdb};
  std::filesystem::path data_dir = "c3-data";

  // Build inputs.
  std::filesystem::path hashes;     // digest lines for the range store
  std::filesystem::path passwords;  // password lines (fsb; range fallback)
  std::filesystem::path pairs;      // user<TAB>password lines (gpc / idb)
  std::filesystem::path server_key; // generated when missing

  // Range prefix length in hex characters; nullopt derives the minimum
  // l-diverse length from the corpus.
  std::optional<size_t> range_prefix_length = 5;
  HashAlgorithm range_algorithm = HashAlgorithm::kSha1;
  bool full_hash_range = false;
  unsigned psi_bits = 16;
  psi::SlowHashProfile slow_hash = psi::SlowHashProfile::Production();
  FsbConfig fsb;
  // Requests per client address per minute; 0 disables limiting.
  unsigned rate_limit_per_minute = 100;

  bool Enabled(Protocol p) const { return protocols.contains(p); }

  std::filesystem::path ManifestPath() const { return data_dir / "manifest.json"; }
  std::filesystem::path StorePath(Protocol p) const;
  std::filesystem::path EstimatorPath() const { return data_dir / "estimator.c3est"; }
};

// Throws ConfigError with the offending field on invalid input.
ServiceConfig ParseServiceConfig(std::string_view json,
                                 const std::filesystem::path& base_dir = ".");
ServiceConfig LoadServiceConfig(const std::filesystem::path& path);

}  // namespace c3::server

#endif  // C3_SERVER_CONFIG_H_
