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

#include "c3/server/build.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "c3/bucketize/interval_store.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/distest/estimator.h"
#include "c3/pipeline/buckets.h"
#include "c3/pipeline/prefix_length.h"
#include "c3/pipeline/preprocess.h"
#include "c3/psi/psi_store.h"
#include "c3/server/kv_store.h"

namespace c3::server {

using nlohmann::json;

namespace {

std::string Timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string StoreFile(Protocol p) {
  return std::string(ProtocolName(p)) + ".c3kv";
}

void Require(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string("build needs '") + what + "'");
  if (!std::filesystem::exists(p)) {
    throw ConfigError(std::string(what) + " file not found: " + p.string());
  }
}

json BuildRange(const ServiceConfig& c, std::ostream* log) {
  const auto sorted_path = c.data_dir / "hibp.sorted.tmp";
  {
    std::ofstream sorted(sorted_path, std::ios::trunc);
    pipeline::PreprocessOptions opts;
    opts.temp_dir = c.data_dir;
    pipeline::PreprocessStats stats;
    if (!c.hashes.empty()) {
      Require(c.hashes, "hashes");
      std::ifstream in(c.hashes);
      stats = pipeline::Preprocess(in, sorted, opts);
    } else {
      Require(c.passwords, "passwords");
      // Digest the plaintext corpus on the fly.
      std::ifstream in(c.passwords);
      std::stringstream digests;
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!IsCleanPassword(line)) continue;
        digests << HashPassword(line, c.range_algorithm).hex() << '\n';
      }
      stats = pipeline::Preprocess(digests, sorted, opts);
    }
    if (!sorted) throw Error("failed writing " + sorted_path.string());
    if (log) *log << "hibp: " << stats.unique_written << " unique digests\n";
  }

  size_t length;
  if (c.range_prefix_length) {
    length = *c.range_prefix_length;
  } else {
    pipeline::FileHashSource src(sorted_path, /*sorted=*/true);
    length = pipeline::MinPrefixLength(src);
    if (log) *log << "hibp: minimum l-diverse prefix length " << length << "\n";
  }

  pipeline::FileHashSource src(sorted_path, /*sorted=*/true);
  SortedFileKvWriter writer(c.StorePath(Protocol::kHibp));
  const auto stats = pipeline::ExportBucketStore(src, length, writer);
  std::filesystem::remove(sorted_path);

  json j;
  j["store"] = StoreFile(Protocol::kHibp);
  j["prefix_length"] = length;
  j["algorithm"] = std::string(AlgorithmName(c.range_algorithm));
  j["count"] = stats.total;
  j["full_hash"] = c.full_hash_range;
  j["buckets"] = {{"count", stats.bucket_count},
                  {"min", stats.min_size},
                  {"max", stats.max_size},
                  {"median", stats.median_size},
                  {"mean", stats.mean_size}};
  return j;
}

json BuildFsb(const ServiceConfig& c, std::ostream* log) {
  Require(c.passwords, "passwords");
  const LeakDataset dataset = LeakDataset::ReadPasswordsFile(c.passwords.string());
  if (dataset.empty()) throw ConfigError("password corpus is empty after cleaning");

  distest::EstimatorOptions eopts;
  eopts.t = c.fsb.histogram_size;
  eopts.smoothing = c.fsb.smoothing;
  const auto estimator = distest::HybridEstimator::Train(dataset, eopts);
  estimator.Save(c.EstimatorPath());
  if (c.fsb.q_bar > estimator.histogram().size()) {
    throw ConfigError("fsb.q_bar exceeds the number of distinct passwords in the histogram");
  }
  const auto scheme = bucketize::FsbScheme::FromEstimator(
      estimator, c.fsb.num_buckets, c.fsb.q_bar, c.fsb.salt);
  const size_t shards = c.fsb.shards
                            ? c.fsb.shards
                            : bucketize::IntervalStore::DefaultShardCount(dataset.size());
  const auto store = bucketize::IntervalStore::Build(dataset, scheme, shards,
                                                     estimator.digest());
  SortedFileKvWriter writer(c.StorePath(Protocol::kFsb));
  store.Write(writer);
  if (log) {
    *log << "fsb: " << store.password_count() << " passwords over "
         << store.shard_count() << " shards\n";
  }

  json j;
  j["store"] = StoreFile(Protocol::kFsb);
  j["num_buckets"] = scheme.params().num_buckets;
  j["q_bar"] = scheme.params().q_bar;
  j["p_qbar"] = scheme.params().p_qbar;
  j["salt_hex"] = ToHex(AsBytes(scheme.params().salt));
  j["shards"] = store.shard_count();
  j["passwords"] = store.password_count();
  j["estimator"] = c.EstimatorPath().filename().string();
  j["estimator_digest"] = estimator.digest();
  return j;
}

json BuildPsi(const ServiceConfig& c, const LeakDataset& pairs,
              const psi::ServerKey& key, Protocol p, std::ostream* log) {
  psi::PsiBucketStore::Options opts;
  opts.bits = c.psi_bits;
  opts.mode = p == Protocol::kGpc ? psi::PsiMode::kGpc : psi::PsiMode::kIdb;
  opts.profile = c.slow_hash;
  const auto store = psi::PsiBucketStore::Precompute(pairs, key, opts);
  SortedFileKvWriter writer(c.StorePath(p));
  store.Write(writer);
  if (log) {
    *log << ProtocolName(p) << ": " << store.element_count() << " elements in "
         << store.bucket_count() << " buckets\n";
  }
  json j;
  j["store"] = StoreFile(p);
  j["bits"] = store.bits();
  j["group"] = std::string(psi::kGroupName);
  j["key_id"] = store.key_id();
  j["slow_hash"] = store.profile_name();
  j["count"] = store.element_count();
  return j;
}

}  // namespace

std::string BuildStores(const ServiceConfig& config, std::ostream* log) {
  std::filesystem::create_directories(config.data_dir);
  std::filesystem::remove(config.ManifestPath());

  json manifest;
  manifest["format"] = "c3-manifest";
  manifest["version"] = 1;
  json protocols = json::array();
  for (Protocol p : config.protocols) protocols.push_back(std::string(ProtocolName(p)));
  manifest["protocols"] = protocols;

  if (config.Enabled(Protocol::kHibp)) manifest["hibp"] = BuildRange(config, log);
  if (config.Enabled(Protocol::kFsb)) manifest["fsb"] = BuildFsb(config, log);
  if (config.Enabled(Protocol::kGpc) || config.Enabled(Protocol::kIdb)) {
    Require(config.pairs, "pairs");
    const LeakDataset pairs = LeakDataset::ReadPairsFile(config.pairs.string());
    if (pairs.empty()) throw ConfigError("pair corpus is empty after cleaning");
    std::filesystem::path key_path = config.server_key;
    if (!std::filesystem::exists(key_path)) {
      psi::ServerKey::Generate().Save(key_path);
      if (log) *log << "generated server key " << key_path.string() << "\n";
    }
    const auto key = psi::ServerKey::Load(key_path);
    for (Protocol p : {Protocol::kGpc, Protocol::kIdb}) {
      if (config.Enabled(p)) {
        manifest[std::string(ProtocolName(p))] =
            BuildPsi(config, pairs, key, p, log);
      }
    }
  }
  manifest["created"] = Timestamp();

  const std::string text = manifest.dump(2) + "\n";
  AtomicWriteFile(config.ManifestPath(), text);
  return text;
}

}  // namespace c3::server
