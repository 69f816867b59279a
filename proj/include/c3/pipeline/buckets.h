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

#ifndef C3_PIPELINE_BUCKETS_H_
#define C3_PIPELINE_BUCKETS_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "c3/core/password_hash.h"
#include "c3/pipeline/preprocess.h"
#include "c3/server/kv_store.h"

namespace c3::pipeline {

using BucketMap = std::map<HashPrefix, std::vector<PasswordHash>>;
using BucketSink =
    std::function<void(const HashPrefix&, std::span<const PasswordHash>)>;

// Streams contiguous buckets of a sorted source to `sink`, holding at most
// one bucket in memory. Throws InvalidArgument if the source is unsorted or
// `length` is 0 or longer than the digests.
void ForEachBucket(HashSource& source, size_t length, const BucketSink& sink);

// Groups every digest under its `length`-character prefix.
BucketMap PopulateBuckets(HashSource& source, size_t length);

struct BucketStats {
  size_t prefix_length = 0;
  size_t bucket_count = 0;
  size_t total = 0;
  size_t min_size = 0;
  size_t max_size = 0;
  double mean_size = 0;
  // Mean of the two middle sizes when bucket_count is even.
  double median_size = 0;
  // First prefix (in key order) attaining the extreme.
  HashPrefix argmin;
  HashPrefix argmax;
};

// Incremental form, for streaming over buckets that are never all resident.
class BucketStatsAccumulator {
 public:
  void Add(const HashPrefix& prefix, size_t size);
  // Throws InvalidArgument when nothing was added.
  BucketStats Finish() const;

 private:
  std::vector<size_t> sizes_;
  BucketStats partial_;
};

// Throws InvalidArgument on an empty map.
BucketStats ComputeBucketStats(const BucketMap& buckets);

// Format A: one `<PREFIX>.txt` per bucket in `dir`, full digests one per
// line. Returns the statistics of what was written.
BucketStats ExportBucketFiles(HashSource& source, size_t length,
                              const std::filesystem::path& dir);

// Format B: (hash -> prefix) records in a KV store; keys are full digests so
// a prefix scan doubles as the prefix index. Store metadata records the
// prefix length and algorithm.
BucketStats ExportBucketStore(HashSource& source, size_t length,
                              server::KvWriter& store);

// Recomputes statistics from a format-B store.
BucketStats StoreBucketStats(const server::KvStore& store);

}  // namespace c3::pipeline

#endif  // C3_PIPELINE_BUCKETS_H_
