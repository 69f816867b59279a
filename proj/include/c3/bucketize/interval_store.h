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

#ifndef C3_BUCKETIZE_INTERVAL_STORE_H_
#define C3_BUCKETIZE_INTERVAL_STORE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "c3/bucketize/fsb.h"
#include "c3/bucketize/interval_tree.h"
#include "c3/core/credential.h"
#include "c3/server/kv_store.h"

namespace c3::bucketize {

// Shards hold about this many intervals by default.
inline constexpr size_t kDefaultIntervalsPerShard = 4'000'000;

// FSB server store: bucket ids are split into r contiguous shard ranges of
// floor(|B| / r) ids each (the last range absorbs the remainder), and each
// shard keeps an interval tree over the segments that fall inside it. A
// password interval crossing shard boundaries is stored, clipped, in every
// shard it touches.
class IntervalStore {
 public:
  // One interval per distinct password. Throws InvalidArgument on an empty
  // password list or shards == 0; shards is clamped to |B|.
  static IntervalStore Build(std::span<const std::string> passwords,
                             const FsbScheme& scheme, size_t shards,
                             std::string estimator_digest = "");
  static IntervalStore Build(const LeakDataset& dataset,
                             const FsbScheme& scheme, size_t shards,
                             std::string estimator_digest = "");

  // Shard count giving about kDefaultIntervalsPerShard per shard, min 1.
  static size_t DefaultShardCount(size_t passwords);

  // Digests of every stored password whose interval covers `bucket`, sorted.
  // Throws InvalidArgument when bucket >= |B|.
  std::vector<Sha256Digest> Query(uint64_t bucket) const;
  std::vector<std::string> QueryHex(uint64_t bucket) const;

  size_t shard_count() const { return shards_.size(); }
  // Inclusive id range of shard i.
  std::pair<uint64_t, uint64_t> ShardRange(size_t shard) const;
  size_t ShardOf(uint64_t bucket) const;
  const IntervalTree& shard(size_t i) const { return shards_[i]; }

  const FsbParams& params() const { return params_; }
  const std::string& estimator_digest() const { return estimator_digest_; }
  size_t password_count() const { return password_count_; }

  // Largest number of passwords any single bucket returns.
  size_t MaxBucketLoad() const;

  // Persists through the KV layer: metadata entries plus one record per shard.
  void Write(server::KvWriter& out) const;
  static IntervalStore Read(const server::KvStore& in);

 private:
  size_t ShardOfWidth(uint64_t bucket, size_t r) const;
  std::pair<uint64_t, uint64_t> RangeOfWidth(size_t shard, size_t r) const;

  FsbParams params_;
  uint64_t shard_width_ = 1;
  std::vector<IntervalTree> shards_;
  std::string estimator_digest_;
  size_t password_count_ = 0;
};

// Reference linear scan: digests of every password whose interval covers
// `bucket`, sorted.
std::vector<Sha256Digest> NaiveBucketContents(
    std::span<const std::string> passwords, const FsbScheme& scheme,
    uint64_t bucket);

}  // namespace c3::bucketize

#endif  // C3_BUCKETIZE_INTERVAL_STORE_H_
