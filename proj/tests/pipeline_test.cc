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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "c3/core/errors.h"
#include "c3/pipeline/bounded_queue.h"
#include "c3/pipeline/buckets.h"
#include "c3/pipeline/prefix_length.h"
#include "c3/pipeline/preprocess.h"
#include "c3/server/kv_store.h"
#include "oracles.h"

namespace c3::pipeline {
namespace {

std::vector<PasswordHash> ToHashes(const std::vector<std::string>& hex) {
  std::vector<PasswordHash> out;
  for (const auto& h : hex) out.push_back(PasswordHash::FromHex(h, HashAlgorithm::kSha1));
  return out;
}

// Digests that share prefixes often enough for long LCPs to occur.
std::vector<std::string> ClusteredCorpus(std::mt19937_64& rng, size_t n) {
  std::set<std::string> out;
  while (out.size() < n) {
    std::string d = oracle::RandomHexDigest(rng);
    if (!out.empty() && rng() % 2) {
      auto it = out.begin();
      std::advance(it, static_cast<long>(rng() % out.size()));
      const size_t keep = rng() % 12;
      d.replace(0, keep, it->substr(0, keep));
    }
    out.insert(d);
  }
  return {out.begin(), out.end()};
}

TEST(Preprocess, SortsDeduplicatesAndUppercases) {
  std::istringstream in("bbbb" + std::string(36, '0') + "\n" + "AAAA" + std::string(36, '0') +
                        "\n" + "BBBB" + std::string(36, '0') + "\n");
  std::ostringstream out;
  const auto stats = Preprocess(in, out);
  EXPECT_EQ(stats.lines_read, 3u);
  EXPECT_EQ(stats.unique_written, 2u);
  EXPECT_EQ(out.str(), "AAAA" + std::string(36, '0') + "\nBBBB" + std::string(36, '0') + "\n");
}

TEST(Preprocess, ExternalSortMatchesStdSort) {
  std::mt19937_64 rng(11);
  std::vector<std::string> raw;
  for (int i = 0; i < 5000; ++i) {
    raw.push_back(oracle::RandomHexDigest(rng));
    if (i % 7 == 0) raw.push_back(raw[rng() % raw.size()]);
  }
  std::string text;
  for (const auto& r : raw) text += r + "\n";
  oracle::TempDir tmp;
  PreprocessOptions opts;
  opts.chunk_entries = 300;
  opts.temp_dir = tmp.path();
  std::istringstream in(text);
  std::ostringstream out;
  const auto stats = Preprocess(in, out, opts);
  EXPECT_GT(stats.runs_spilled, 1u);

  std::set<std::string> want(raw.begin(), raw.end());
  std::string expected;
  for (const auto& w : want) expected += w + "\n";
  EXPECT_EQ(out.str(), expected);
  EXPECT_EQ(stats.unique_written, want.size());
  // Scratch runs are cleaned up.
  EXPECT_TRUE(std::filesystem::is_empty(tmp.path()));
}

TEST(Preprocess, MalformedPolicies) {
  const std::string text = std::string(40, 'A') + "\nnot-a-hash\n" + std::string(40, 'B') + "\n";
  {
    std::istringstream in(text);
    std::ostringstream out;
    EXPECT_THROW(Preprocess(in, out), ParseError);
  }
  std::istringstream in(text);
  std::ostringstream out;
  PreprocessOptions opts;
  opts.malformed = MalformedPolicy::kLenient;
  const auto stats = Preprocess(in, out, opts);
  EXPECT_EQ(stats.skipped, 1u);
  EXPECT_EQ(stats.unique_written, 2u);
}

TEST(LineHashSource, SortedStreamRejectsDisorder) {
  std::istringstream in(std::string(40, 'B') + "\n" + std::string(40, 'A') + "\n");
  LineHashSource src(in, true);
  EXPECT_TRUE(src.Next());
  EXPECT_THROW(src.Next(), ParseError);
}

TEST(LineHashSource, MixedAlgorithmsRejected) {
  std::istringstream in(std::string(40, 'A') + "\n" + std::string(64, 'B') + "\n");
  LineHashSource src(in, false);
  EXPECT_TRUE(src.Next());
  EXPECT_THROW(src.Next(), ParseError);
}

TEST(PrefixLength, MatchesBruteForceOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto corpus = ClusteredCorpus(rng, 3 + rng() % 400);
    VectorHashSource src(ToHashes(corpus), true);
    PrefixLengthOptions opts;
    opts.batch_size = 1 + rng() % 16;
    opts.queue_depth = 1 + rng() % 8;
    EXPECT_EQ(MinPrefixLength(src, opts), oracle::BruteMinPrefixLength(corpus));
  }
}

TEST(PrefixLength, DiversityAndMinimality) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = ClusteredCorpus(rng, 50 + rng() % 200);
    VectorHashSource src(ToHashes(corpus), true);
    const size_t len = MinPrefixLength(src);
    for (auto [p, n] : oracle::NaiveBucketSizes(corpus, len)) EXPECT_GE(n, 2u) << p;
    bool singleton = false;
    for (auto [p, n] : oracle::NaiveBucketSizes(corpus, len + 1)) singleton |= n == 1;
    EXPECT_TRUE(singleton);
  }
}

TEST(PrefixLength, SmallWorkedCorpora) {
  // Pad to full SHA-1 width with distinct tails.
  auto padded = [](std::vector<std::string> heads) {
    for (size_t i = 0; i < heads.size(); ++i) {
      heads[i] += std::string(39 - heads[i].size(), '0') + static_cast<char>('1' + i);
    }
    return heads;
  };
  for (const auto& [heads, want] : std::vector<std::pair<std::vector<std::string>, size_t>>{
           {{"AA00", "AA01", "AB00", "AB01"}, 3}, {{"A0", "A1", "B0", "B1"}, 1}}) {
    const auto corpus = padded(heads);
    ASSERT_EQ(oracle::BruteMinPrefixLength(corpus), want);
    VectorHashSource src(ToHashes(corpus), true);
    EXPECT_EQ(MinPrefixLength(src), want);
  }
}

TEST(PrefixLength, RejectsBadInput) {
  VectorHashSource two(ToHashes({std::string(40, 'A'), std::string(40, 'B')}), true);
  EXPECT_THROW(MinPrefixLength(two), InvalidArgument);
  VectorHashSource unsorted(
      ToHashes({std::string(40, 'C'), std::string(40, 'A'), std::string(40, 'B')}), false);
  EXPECT_THROW(MinPrefixLength(unsorted), InvalidArgument);
  EXPECT_THROW(VectorHashSource(ToHashes({std::string(40, 'C'), std::string(40, 'A')}), true),
               InvalidArgument);
}

TEST(PrefixLength, ReportsQueueUsage) {
  std::mt19937_64 rng(8);
  const auto corpus = ClusteredCorpus(rng, 5000);
  VectorHashSource src(ToHashes(corpus), true);
  PrefixLengthOptions opts;
  opts.queue_depth = 4;
  opts.batch_size = 16;
  const auto r = ComputeMinPrefixLength(src, opts);
  EXPECT_EQ(r.hashes_scanned, corpus.size());
  EXPECT_LE(r.peak_batches_queued, 4u);
}

TEST(Buckets, DisjointCoverAndStatsMatchNaive) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = ClusteredCorpus(rng, 1 + rng() % 2000);
    const size_t len = 1 + rng() % 4;
    VectorHashSource src(ToHashes(corpus), true);
    const auto buckets = PopulateBuckets(src, len);

    std::multiset<std::string> seen;
    for (const auto& [prefix, members] : buckets) {
      EXPECT_FALSE(members.empty());
      for (const auto& h : members) {
        EXPECT_TRUE(prefix.Matches(h));
        seen.insert(h.hex());
      }
    }
    EXPECT_EQ(seen, std::multiset<std::string>(corpus.begin(), corpus.end()));

    const auto naive = oracle::NaiveBucketSizes(corpus, len);
    const auto stats = ComputeBucketStats(buckets);
    std::vector<size_t> sizes;
    for (auto [p, n] : naive) sizes.push_back(n);
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(stats.bucket_count, naive.size());
    EXPECT_EQ(stats.total, corpus.size());
    EXPECT_EQ(stats.min_size, sizes.front());
    EXPECT_EQ(stats.max_size, sizes.back());
    EXPECT_DOUBLE_EQ(stats.mean_size, double(corpus.size()) / double(naive.size()));
    const size_t m = sizes.size();
    const double median = m % 2 ? double(sizes[m / 2]) : (sizes[m / 2 - 1] + sizes[m / 2]) / 2.0;
    EXPECT_DOUBLE_EQ(stats.median_size, median);
    // First prefix in key order attaining each extreme.
    for (auto [p, n] : naive) {
      if (n == stats.min_size) {
        EXPECT_EQ(stats.argmin.hex(), p);
        break;
      }
    }
    for (auto [p, n] : naive) {
      if (n == stats.max_size) {
        EXPECT_EQ(stats.argmax.hex(), p);
        break;
      }
    }
  }
}

TEST(Buckets, ExportFormatsAgree) {
  std::mt19937_64 rng(10);
  const auto corpus = ClusteredCorpus(rng, 700);
  oracle::TempDir tmp;
  VectorHashSource a(ToHashes(corpus), true);
  const auto file_stats = ExportBucketFiles(a, 2, tmp / "files");
  size_t lines = 0;
  for (const auto& entry : std::filesystem::directory_iterator(tmp / "files")) {
    const std::string prefix = entry.path().stem().string();
    std::ifstream in(entry.path());
    for (std::string line; std::getline(in, line); ++lines) {
      EXPECT_TRUE(line.starts_with(prefix));
    }
  }
  EXPECT_EQ(lines, corpus.size());

  server::MemoryKvStore store;
  VectorHashSource b(ToHashes(corpus), true);
  const auto store_stats = ExportBucketStore(b, 2, store);
  EXPECT_EQ(store.size(), corpus.size());
  EXPECT_EQ(store.Meta("prefix_length"), "2");
  EXPECT_EQ(store.Meta("algorithm"), "sha1");
  const auto reread = StoreBucketStats(store);
  for (const auto* s : {&store_stats, &reread}) {
    EXPECT_EQ(s->bucket_count, file_stats.bucket_count);
    EXPECT_EQ(s->max_size, file_stats.max_size);
    EXPECT_EQ(s->argmax, file_stats.argmax);
  }
}

TEST(Buckets, RejectsUnsortedAndBadLength) {
  VectorHashSource unsorted(ToHashes({std::string(40, 'B'), std::string(40, 'A')}), false);
  EXPECT_THROW(PopulateBuckets(unsorted, 2), InvalidArgument);
  VectorHashSource sorted(ToHashes({std::string(40, 'A')}), true);
  EXPECT_THROW(PopulateBuckets(sorted, 0), InvalidArgument);
  EXPECT_THROW(BucketStatsAccumulator().Finish(), InvalidArgument);
}

TEST(BoundedQueue, ProducerConsumerOrderAndBackpressure) {
  BoundedQueue<int> q(3);
  std::vector<int> got;
  std::thread consumer([&] {
    while (auto v = q.Pop()) got.push_back(*v);
  });
  for (int i = 0; i < 1000; ++i) ASSERT_TRUE(q.Push(i));
  q.Close();
  consumer.join();
  ASSERT_EQ(got.size(), 1000u);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(got[i], i);
  EXPECT_LE(q.peak(), 3u);
  EXPECT_FALSE(q.Push(1));
}

}  // namespace
}  // namespace c3::pipeline
