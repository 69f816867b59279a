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

#include "c3/pipeline/buckets.h"

#include <algorithm>
#include <fstream>
#include <optional>

#include "c3/core/errors.h"

namespace c3::pipeline {

void ForEachBucket(HashSource& source, size_t length, const BucketSink& sink) {
  if (!source.sorted()) {
    throw InvalidArgument("bucket population requires sorted input");
  }
  if (length == 0) throw InvalidArgument("prefix length must be >= 1");

  std::optional<HashPrefix> current;
  std::vector<PasswordHash> bucket;
  while (auto h = source.Next()) {
    HashPrefix prefix = Truncate(*h, length);
    if (current && prefix != *current) {
      sink(*current, bucket);
      bucket.clear();
    }
    current = std::move(prefix);
    bucket.push_back(std::move(*h));
  }
  if (current) sink(*current, bucket);
}

BucketMap PopulateBuckets(HashSource& source, size_t length) {
  BucketMap out;
  ForEachBucket(source, length,
                [&](const HashPrefix& p, std::span<const PasswordHash> hs) {
                  out.emplace(p, std::vector<PasswordHash>(hs.begin(), hs.end()));
                });
  return out;
}

void BucketStatsAccumulator::Add(const HashPrefix& prefix, size_t size) {
  if (sizes_.empty()) {
    partial_.prefix_length = prefix.length();
    partial_.min_size = partial_.max_size = size;
    partial_.argmin = partial_.argmax = prefix;
  } else {
    if (size < partial_.min_size) {
      partial_.min_size = size;
      partial_.argmin = prefix;
    }
    if (size > partial_.max_size) {
      partial_.max_size = size;
      partial_.argmax = prefix;
    }
  }
  partial_.total += size;
  sizes_.push_back(size);
}

BucketStats BucketStatsAccumulator::Finish() const {
  if (sizes_.empty()) throw InvalidArgument("bucket stats of an empty map");
  BucketStats s = partial_;
  s.bucket_count = sizes_.size();
  s.mean_size = static_cast<double>(s.total) / static_cast<double>(s.bucket_count);
  std::vector<size_t> sorted = sizes_;
  const size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
  double upper = static_cast<double>(sorted[mid]);
  if (sorted.size() % 2 == 1) {
    s.median_size = upper;
  } else {
    double lower = static_cast<double>(
        *std::max_element(sorted.begin(), sorted.begin() + mid));
    s.median_size = (lower + upper) / 2;
  }
  return s;
}

BucketStats ComputeBucketStats(const BucketMap& buckets) {
  BucketStatsAccumulator acc;
  for (const auto& [prefix, hashes] : buckets) acc.Add(prefix, hashes.size());
  return acc.Finish();
}

BucketStats ExportBucketFiles(HashSource& source, size_t length,
                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  BucketStatsAccumulator acc;
  ForEachBucket(source, length,
                [&](const HashPrefix& p, std::span<const PasswordHash> hs) {
                  auto path = dir / (p.hex() + ".txt");
                  std::ofstream out(path, std::ios::trunc);
                  for (const auto& h : hs) out << h.hex() << '\n';
                  if (!out) throw Error("failed writing " + path.string());
                  acc.Add(p, hs.size());
                });
  return acc.Finish();
}

BucketStats ExportBucketStore(HashSource& source, size_t length,
                              server::KvWriter& store) {
  BucketStatsAccumulator acc;
  std::optional<HashAlgorithm> alg;
  ForEachBucket(source, length,
                [&](const HashPrefix& p, std::span<const PasswordHash> hs) {
                  for (const auto& h : hs) store.Put(h.hex(), p.hex());
                  alg = hs.front().algorithm();
                  acc.Add(p, hs.size());
                });
  BucketStats stats = acc.Finish();
  store.SetMeta("scheme", "range");
  store.SetMeta("prefix_length", std::to_string(length));
  store.SetMeta("algorithm", std::string(AlgorithmName(*alg)));
  store.SetMeta("count", std::to_string(stats.total));
  store.Finish();
  return stats;
}

BucketStats StoreBucketStats(const server::KvStore& store) {
  BucketStatsAccumulator acc;
  std::string current;
  size_t count = 0;
  store.ForEach([&](std::string_view, std::string_view prefix) {
    if (count > 0 && prefix != current) {
      acc.Add(HashPrefix::FromHex(current), count);
      count = 0;
    }
    current = std::string(prefix);
    ++count;
  });
  if (count > 0) acc.Add(HashPrefix::FromHex(current), count);
  return acc.Finish();
}

}  // namespace c3::pipeline
