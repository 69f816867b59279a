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

#include "c3/bucketize/interval_store.h"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <set>

#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::bucketize {

namespace {

constexpr size_t kRecordSize = 8 + 8 + 32;

std::string ShardKey(size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shard/%06zu", i);
  return buf;
}

std::string DoubleToString(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T ParseNumber(const server::KvStore& in, std::string_view key) {
  auto text = in.Meta(key);
  if (!text) throw ParseError("interval store: missing meta '" + std::string(key) + "'");
  T value{};
  auto res = std::from_chars(text->data(), text->data() + text->size(), value);
  if (res.ec != std::errc() || res.ptr != text->data() + text->size()) {
    throw ParseError("interval store: bad meta '" + std::string(key) + "'");
  }
  return value;
}

void PutU64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

uint64_t GetU64(const char* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<uint64_t>(static_cast<uint8_t>(p[i])) << (8 * i);
  }
  return v;
}

}  // namespace

size_t IntervalStore::DefaultShardCount(size_t passwords) {
  return std::max<size_t>(1, passwords / kDefaultIntervalsPerShard);
}

IntervalStore IntervalStore::Build(std::span<const std::string> passwords,
                                   const FsbScheme& scheme, size_t shards,
                                   std::string estimator_digest) {
  if (passwords.empty()) throw InvalidArgument("interval store of no passwords");
  if (shards == 0) throw InvalidArgument("interval store needs >= 1 shard");

  IntervalStore store;
  store.params_ = scheme.params();
  store.estimator_digest_ = std::move(estimator_digest);
  const uint64_t num_buckets = store.params_.num_buckets;
  const size_t r = static_cast<size_t>(std::min<uint64_t>(shards, num_buckets));
  store.shard_width_ = num_buckets / r;

  std::vector<std::vector<StoredInterval>> pending(r);
  std::set<std::string_view> seen;
  for (const auto& w : passwords) {
    if (!seen.insert(w).second) continue;
    const BucketInterval iv = scheme.Interval(w);
    const Sha256Digest digest = FsbDigest(w, store.params_.salt);
    for (auto [lo, hi] : iv.Segments()) {
      for (size_t s = store.ShardOfWidth(lo, r); s <= store.ShardOfWidth(hi, r);
           ++s) {
        const auto [shard_lo, shard_hi] = store.RangeOfWidth(s, r);
        pending[s].push_back(
            {std::max(lo, shard_lo), std::min(hi, shard_hi), digest});
      }
    }
  }
  store.password_count_ = seen.size();
  store.shards_.reserve(r);
  for (auto& list : pending) store.shards_.emplace_back(std::move(list));
  return store;
}

IntervalStore IntervalStore::Build(const LeakDataset& dataset,
                                   const FsbScheme& scheme, size_t shards,
                                   std::string estimator_digest) {
  if (dataset.mode() != DatasetMode::kPasswordOnly) {
    throw InvalidArgument("interval store needs a password-only dataset");
  }
  auto passwords = dataset.Passwords();
  return Build(passwords, scheme, shards, std::move(estimator_digest));
}

size_t IntervalStore::ShardOfWidth(uint64_t bucket, size_t r) const {
  return static_cast<size_t>(std::min<uint64_t>(bucket / shard_width_, r - 1));
}

std::pair<uint64_t, uint64_t> IntervalStore::RangeOfWidth(size_t shard,
                                                          size_t r) const {
  const uint64_t lo = shard * shard_width_;
  const uint64_t hi = shard + 1 == r ? params_.num_buckets - 1
                                     : lo + shard_width_ - 1;
  return {lo, hi};
}

std::pair<uint64_t, uint64_t> IntervalStore::ShardRange(size_t shard) const {
  if (shard >= shards_.size()) throw InvalidArgument("shard index out of range");
  return RangeOfWidth(shard, shards_.size());
}

size_t IntervalStore::ShardOf(uint64_t bucket) const {
  return ShardOfWidth(bucket, shards_.size());
}

std::vector<Sha256Digest> IntervalStore::Query(uint64_t bucket) const {
  if (bucket >= params_.num_buckets) {
    throw InvalidArgument("bucket id " + std::to_string(bucket) +
                          " out of range [0, " +
                          std::to_string(params_.num_buckets) + ")");
  }
  std::vector<Sha256Digest> out;
  shards_[ShardOf(bucket)].Stab(
      bucket, [&](const StoredInterval& iv) { out.push_back(iv.digest); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> IntervalStore::QueryHex(uint64_t bucket) const {
  std::vector<std::string> out;
  for (const auto& d : Query(bucket)) out.push_back(ToHex(d));
  return out;
}

size_t IntervalStore::MaxBucketLoad() const {
  size_t best = 0;
  for (const auto& tree : shards_) {
    // Sweep over +1 at lo and -1 past hi.
    std::vector<std::pair<uint64_t, int>> events;
    events.reserve(tree.size() * 2);
    for (const auto& iv : tree.intervals()) {
      events.emplace_back(iv.lo, +1);
      events.emplace_back(iv.hi + 1, -1);
    }
    std::sort(events.begin(), events.end());
    size_t load = 0;
    for (const auto& [pos, delta] : events) {
      load += delta;
      best = std::max(best, load);
    }
  }
  return best;
}

void IntervalStore::Write(server::KvWriter& out) const {
  out.SetMeta("scheme", "fsb");
  out.SetMeta("num_buckets", std::to_string(params_.num_buckets));
  out.SetMeta("q_bar", std::to_string(params_.q_bar));
  out.SetMeta("p_qbar", DoubleToString(params_.p_qbar));
  out.SetMeta("salt", ToHex(AsBytes(params_.salt)));
  out.SetMeta("shards", std::to_string(shards_.size()));
  out.SetMeta("estimator_digest", estimator_digest_);
  out.SetMeta("passwords", std::to_string(password_count_));
  for (size_t i = 0; i < shards_.size(); ++i) {
    std::string blob;
    blob.reserve(shards_[i].size() * kRecordSize);
    for (const auto& iv : shards_[i].intervals()) {
      PutU64(blob, iv.lo);
      PutU64(blob, iv.hi);
      blob.append(reinterpret_cast<const char*>(iv.digest.data()),
                  iv.digest.size());
    }
    out.Put(ShardKey(i), blob);
  }
  out.Finish();
}

IntervalStore IntervalStore::Read(const server::KvStore& in) {
  if (in.Meta("scheme") != "fsb") throw ParseError("not an FSB interval store");
  IntervalStore store;
  store.params_.num_buckets = ParseNumber<uint64_t>(in, "num_buckets");
  store.params_.q_bar = ParseNumber<uint64_t>(in, "q_bar");
  store.params_.p_qbar = ParseNumber<double>(in, "p_qbar");
  auto salt = FromHex(in.Meta("salt").value_or(""));
  if (!salt) throw ParseError("interval store: bad salt");
  store.params_.salt.assign(salt->begin(), salt->end());
  ValidateFsbParams(store.params_);
  store.estimator_digest_ = in.Meta("estimator_digest").value_or("");
  store.password_count_ = ParseNumber<size_t>(in, "passwords");
  const auto r = ParseNumber<size_t>(in, "shards");
  if (r == 0 || r > store.params_.num_buckets) {
    throw ParseError("interval store: bad shard count");
  }
  store.shard_width_ = store.params_.num_buckets / r;
  for (size_t i = 0; i < r; ++i) {
    auto blob = in.Get(ShardKey(i));
    if (!blob || blob->size() % kRecordSize != 0) {
      throw ParseError("interval store: bad shard " + std::to_string(i));
    }
    const auto [shard_lo, shard_hi] = store.RangeOfWidth(i, r);
    std::vector<StoredInterval> list(blob->size() / kRecordSize);
    for (size_t k = 0; k < list.size(); ++k) {
      const char* p = blob->data() + k * kRecordSize;
      list[k].lo = GetU64(p);
      list[k].hi = GetU64(p + 8);
      std::memcpy(list[k].digest.data(), p + 16, 32);
      if (list[k].lo > list[k].hi || list[k].lo < shard_lo ||
          list[k].hi > shard_hi) {
        throw ParseError("interval store: interval outside its shard");
      }
    }
    store.shards_.emplace_back(std::move(list));
  }
  return store;
}

std::vector<Sha256Digest> NaiveBucketContents(
    std::span<const std::string> passwords, const FsbScheme& scheme,
    uint64_t bucket) {
  std::set<Sha256Digest> out;
  for (const auto& w : passwords) {
    if (scheme.Interval(w).Covers(bucket)) {
      out.insert(FsbDigest(w, scheme.params().salt));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace c3::bucketize
