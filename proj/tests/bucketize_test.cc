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

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "c3/bucketize/bandwidth.h"
#include "c3/bucketize/fsb.h"
#include "c3/bucketize/hpb.h"
#include "c3/bucketize/interval_store.h"
#include "c3/bucketize/interval_tree.h"
#include "c3/core/credential.h"
#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/server/kv_store.h"
#include "oracles.h"

namespace c3::bucketize {
namespace {

std::vector<std::string> RandomPasswords(std::mt19937_64& rng, size_t n) {
  std::set<std::string> out;
  while (out.size() < n) {
    std::string w(4 + rng() % 8, 'a');
    for (char& c : w) c = static_cast<char>('a' + rng() % 26);
    out.insert(w);
  }
  return {out.begin(), out.end()};
}

// Heavy-tailed probabilities so some intervals cover many buckets and wrap.
ProbabilityFn ZipfLike(const std::vector<std::string>& pws) {
  std::map<std::string, double, std::less<>> p;
  double z = 0;
  for (size_t i = 0; i < pws.size(); ++i) z += 1.0 / double(i + 1);
  for (size_t i = 0; i < pws.size(); ++i) p[pws[i]] = 1.0 / double(i + 1) / z;
  return [p = std::move(p)](std::string_view w) {
    auto it = p.find(w);
    return it == p.end() ? 1e-9 : it->second;
  };
}

TEST(Hpb, PrefixBitsAndIdb) {
  HpbParams p;
  p.bits = 20;
  p.algorithm = HashAlgorithm::kSha1;
  // SHA1("test") = A94A8FE5..., first 20 bits = 0xA94A8.
  EXPECT_EQ(HpbBucket("test", p), 0xA94A8u);
  EXPECT_EQ(HpbBucketBits("test", p), "10101001010010101000");
  p.bits = 64;
  EXPECT_EQ(HpbBucket("test", p), 0xA94A8FE5CCB19BA6u);
  p.bits = 65;
  EXPECT_THROW(HpbBucket("test", p), ConfigError);
  EXPECT_EQ(HpbBucketBits("test", p).size(), 65u);
  p.bits = 161;
  EXPECT_THROW(ValidateHpbParams(p), ConfigError);
  p.bits = 0;
  EXPECT_THROW(ValidateHpbParams(p), ConfigError);

  HpbParams q;
  q.bits = 12;
  q.algorithm = HashAlgorithm::kSha256;
  EXPECT_EQ(HpbBucket(Credential{"alice", "pw"}, q), HpbBucket(SerializePair("alice", "pw"), q));
  EXPECT_EQ(HpbBucket(Credential{"", "pw"}, q), HpbBucket("pw", q));
  EXPECT_EQ(IdbBucket("alice", q), HpbBucket("alice", q));
  q.salt = "s";
  EXPECT_EQ(HpbBucket("pw", q), HpbBucket("spw", HpbParams{12, HashAlgorithm::kSha256, ""}));
}

TEST(Fsb, ReplicationCountFormula) {
  EXPECT_EQ(ReplicationCount(0.5, 0.1, 100), 100u);
  EXPECT_EQ(ReplicationCount(0.1, 0.1, 100), 100u);
  EXPECT_EQ(ReplicationCount(0.05, 0.1, 100), 50u);
  EXPECT_EQ(ReplicationCount(0.0501, 0.1, 100), 51u);
  EXPECT_EQ(ReplicationCount(1e-12, 0.1, 100), 1u);
  EXPECT_EQ(ReplicationCount(0, 0.1, 100), 1u);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng) * 0.2, pq = 0.01 + u(rng) * 0.1;
    const uint64_t B = 1 + rng() % 5000;
    const double want = std::min<double>(double(B), std::max(1.0, std::ceil(double(B) * p / pq)));
    EXPECT_EQ(ReplicationCount(p, pq, B), uint64_t(want));
  }
}

TEST(Fsb, HashMatchesDigestBits) {
  const auto d = Sha256(AsBytes("saltpw"));
  uint64_t head = 0;
  for (int i = 0; i < 8; ++i) head = head << 8 | d[i];
  EXPECT_EQ(FsbHash("pw", "salt", 1024), head >> 54);
  EXPECT_EQ(FsbHash("pw", "salt", 1000), head % 1000);
  EXPECT_EQ(FsbHash("pw", "salt", 1), 0u);
  EXPECT_EQ(FsbDigest("pw", "salt"), d);
  EXPECT_THROW(FsbHash("pw", "salt", 0), InvalidArgument);
}

TEST(Fsb, IntervalGeometry) {
  const BucketInterval wrap{8, 5, 10};
  EXPECT_TRUE(wrap.wraps());
  EXPECT_EQ(wrap.Buckets(), (std::vector<uint64_t>{8, 9, 0, 1, 2}));
  EXPECT_EQ(wrap.Segments(), (std::vector<std::pair<uint64_t, uint64_t>>{{0, 2}, {8, 9}}));
  for (uint64_t b = 0; b < 12; ++b) {
    const bool want = b == 8 || b == 9 || b <= 2;
    EXPECT_EQ(wrap.Covers(b), want) << b;
  }
  const BucketInterval full{3, 10, 10};
  const auto all = full.Buckets();
  EXPECT_EQ(all.size(), 10u);
  EXPECT_EQ(std::set<uint64_t>(all.begin(), all.end()).size(), 10u);
}

TEST(Fsb, PicksStayInsideInterval) {
  std::mt19937_64 rng(2);
  const std::array<uint8_t, 32> cookie{1, 2, 3};
  for (int i = 0; i < 500; ++i) {
    const BucketInterval iv{rng() % 97, 1 + rng() % 97, 97};
    EXPECT_TRUE(iv.Covers(PickBucketRandom(iv, rng)));
    const auto d = PickBucketDerandomized("pw" + std::to_string(i), iv, cookie, "s");
    EXPECT_TRUE(iv.Covers(d));
    EXPECT_EQ(d, PickBucketDerandomized("pw" + std::to_string(i), iv, cookie, "s"));
  }
  // Every id in the interval is reachable by the random pick.
  const BucketInterval iv{95, 4, 97};
  std::set<uint64_t> seen;
  for (int i = 0; i < 400; ++i) seen.insert(PickBucketRandom(iv, rng));
  EXPECT_EQ(seen, (std::set<uint64_t>{95, 96, 0, 1}));
}

TEST(Fsb, ParameterValidation) {
  FsbParams p;
  p.p_qbar = 0;
  EXPECT_THROW(ValidateFsbParams(p), ConfigError);
  p.p_qbar = 0.1;
  p.num_buckets = 0;
  EXPECT_THROW(ValidateFsbParams(p), ConfigError);
  p.num_buckets = 4;
  p.q_bar = 0;
  EXPECT_THROW(ValidateFsbParams(p), ConfigError);
  p.q_bar = 1;
  EXPECT_THROW(FsbScheme(p, nullptr), ConfigError);
}

TEST(IntervalTree, StabbingMatchesLinearScan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<StoredInterval> ivs;
    const size_t n = rng() % 300;
    for (size_t i = 0; i < n; ++i) {
      StoredInterval s;
      s.lo = rng() % 1000;
      s.hi = s.lo + rng() % (rng() % 4 == 0 ? 600 : 20);
      s.digest[0] = static_cast<uint8_t>(i);
      s.digest[1] = static_cast<uint8_t>(i >> 8);
      ivs.push_back(s);
    }
    const IntervalTree tree(ivs);
    EXPECT_EQ(tree.size(), n);
    for (int q = 0; q < 100; ++q) {
      const uint64_t point = rng() % 1700;
      std::multiset<std::pair<uint64_t, uint64_t>> want, got;
      for (const auto& s : ivs) {
        if (s.lo <= point && point <= s.hi) want.insert({s.lo, s.digest[0] | s.digest[1] << 8});
      }
      for (const auto& s : tree.Stab(point)) got.insert({s.lo, s.digest[0] | s.digest[1] << 8});
      EXPECT_EQ(got, want);
    }
  }
}

TEST(IntervalStore, MatchesNaiveScanAcrossShards) {
  std::mt19937_64 rng(4);
  for (uint64_t buckets : {uint64_t{64}, uint64_t{1000}, uint64_t{1} << 12}) {
    const auto pws = RandomPasswords(rng, 300);
    FsbParams params;
    params.num_buckets = buckets;
    params.q_bar = 20;
    params.salt = "salt-" + std::to_string(buckets);
    const auto prob = ZipfLike(pws);
    params.p_qbar = prob(pws[19]);
    const FsbScheme scheme(params, prob);
    for (size_t shards : {size_t{1}, size_t{3}, size_t{16}}) {
      const auto store = IntervalStore::Build(pws, scheme, shards);
      EXPECT_EQ(store.shard_count(), std::min<size_t>(shards, buckets));
      EXPECT_EQ(store.password_count(), pws.size());
      size_t max_load = 0;
      for (uint64_t b = 0; b < buckets; b += 1 + rng() % 7) {
        // Test-side linear scan over every password's interval.
        std::vector<Sha256Digest> want;
        for (const auto& w : pws) {
          if (scheme.Interval(w).Covers(b)) want.push_back(FsbDigest(w, params.salt));
        }
        std::sort(want.begin(), want.end());
        const auto got = store.Query(b);
        EXPECT_EQ(got, want) << "bucket " << b << " shards " << shards;
        EXPECT_EQ(NaiveBucketContents(pws, scheme, b), want);
        max_load = std::max(max_load, got.size());
      }
      EXPECT_LE(max_load, store.MaxBucketLoad());
      EXPECT_THROW(store.Query(buckets), InvalidArgument);
    }
  }
}

TEST(IntervalStore, ShardRangesTileTheRing) {
  std::mt19937_64 rng(5);
  const auto pws = RandomPasswords(rng, 20);
  FsbParams params;
  params.num_buckets = 103;
  params.p_qbar = 0.1;
  const FsbScheme scheme(params, ZipfLike(pws));
  const auto store = IntervalStore::Build(pws, scheme, 7);
  uint64_t next = 0;
  for (size_t s = 0; s < store.shard_count(); ++s) {
    const auto [lo, hi] = store.ShardRange(s);
    EXPECT_EQ(lo, next);
    for (uint64_t b = lo; b <= hi; ++b) EXPECT_EQ(store.ShardOf(b), s);
    next = hi + 1;
  }
  EXPECT_EQ(next, 103u);
  EXPECT_THROW(IntervalStore::Build(std::vector<std::string>{}, scheme, 1), InvalidArgument);
  EXPECT_THROW(IntervalStore::Build(pws, scheme, 0), InvalidArgument);
}

TEST(IntervalStore, PersistsThroughKvStore) {
  std::mt19937_64 rng(6);
  const auto pws = RandomPasswords(rng, 200);
  FsbParams params;
  params.num_buckets = 500;
  params.q_bar = 10;
  params.salt = "persist";
  const auto prob = ZipfLike(pws);
  params.p_qbar = prob(pws[9]);
  const FsbScheme scheme(params, prob);
  const auto store = IntervalStore::Build(pws, scheme, 4, "DIGEST");
  oracle::TempDir tmp;
  {
    server::SortedFileKvWriter w(tmp / "fsb.kv");
    store.Write(w);
    w.Finish();
  }
  const auto kv = server::SortedFileKvStore::Open(tmp / "fsb.kv");
  const auto back = IntervalStore::Read(*kv);
  EXPECT_EQ(back.estimator_digest(), "DIGEST");
  EXPECT_EQ(back.params().salt, "persist");
  EXPECT_EQ(back.params().p_qbar, params.p_qbar);
  EXPECT_EQ(back.shard_count(), store.shard_count());
  for (uint64_t b = 0; b < 500; ++b) ASSERT_EQ(back.Query(b), store.Query(b)) << b;
  EXPECT_EQ(back.QueryHex(0).size(), store.Query(0).size());
}

TEST(Bandwidth, BoundsFormulas) {
  EXPECT_DOUBLE_EQ(HpbBandwidthBound(100000, 10), 2.0 * 100000 / 1024);
  FsbParams p;
  p.num_buckets = 1000;
  p.q_bar = 10;
  p.p_qbar = 0.01;
  EXPECT_DOUBLE_EQ(FsbBandwidthBound(p, 5000), 2 * (10 + 100 + 5.0));
}

TEST(Bandwidth, HpbMaxLoadMatchesCount) {
  std::mt19937_64 rng(7);
  const auto pws = RandomPasswords(rng, 3000);
  HpbParams p;
  p.bits = 6;
  std::map<uint64_t, size_t> load;
  for (const auto& w : pws) ++load[HpbBucket(w, p)];
  size_t want = 0;
  for (auto [b, n] : load) want = std::max(want, n);
  EXPECT_EQ(HpbMaxBucketLoad(pws, p), want);
}

}  // namespace
}  // namespace c3::bucketize
