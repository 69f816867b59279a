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

#include "c3/psi/psi_store.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::psi {

namespace {

std::string BucketKeyPrefix(bucketize::BucketId b) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%08llX/", static_cast<unsigned long long>(b));
  return buf;
}

}  // namespace

std::string_view ModeName(PsiMode mode) {
  return mode == PsiMode::kGpc ? "gpc" : "idb";
}

PsiMode ParseMode(std::string_view name) {
  if (name == "gpc") return PsiMode::kGpc;
  if (name == "idb") return PsiMode::kIdb;
  throw ConfigError("unknown PSI mode '" + std::string(name) + "'");
}

bucketize::HpbParams PsiBucketParams(unsigned bits) {
  bucketize::HpbParams p;
  p.bits = bits;
  p.algorithm = HashAlgorithm::kSha256;
  if (bits > 32) throw ConfigError("PSI bucket bits must be <= 32");
  bucketize::ValidateHpbParams(p);
  return p;
}

bucketize::BucketId PsiBucketOf(std::string_view username,
                                std::string_view password, PsiMode mode,
                                unsigned bits) {
  const auto params = PsiBucketParams(bits);
  if (mode == PsiMode::kIdb) return bucketize::IdbBucket(username, params);
  return bucketize::HpbBucket(SerializePair(username, password), params);
}

PsiBucketStore PsiBucketStore::Precompute(const LeakDataset& dataset,
                                          const ServerKey& key,
                                          const Options& options) {
  if (dataset.mode() != DatasetMode::kUsernamePassword) {
    throw InvalidArgument("PSI precomputation needs username-password pairs");
  }
  PsiBucketParams(options.bits);  // validates

  PsiBucketStore store;
  store.bits_ = options.bits;
  store.mode_ = options.mode;
  store.key_id_ = key.id();
  store.profile_name_ = ProfileName(options.profile);

  const auto& entries = dataset.entries();
  std::vector<std::optional<Element>> evaluated(entries.size());
  size_t threads = options.threads ? options.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<size_t>(entries.size(), 1));

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        try {
          for (size_t i = next++; i < entries.size(); i = next++) {
            evaluated[i] =
                Oprf(key.scalar(), entries[i].Serialize(), options.profile);
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = entries.size();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (size_t i = 0; i < entries.size(); ++i) {
    const auto& c = entries[i];
    auto b = PsiBucketOf(c.username, c.password, options.mode, options.bits);
    store.buckets_[b].push_back(*evaluated[i]);
  }
  for (auto& [b, elems] : store.buckets_) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    store.element_count_ += elems.size();
  }
  return store;
}

std::span<const Element> PsiBucketStore::Bucket(bucketize::BucketId b) const {
  auto it = buckets_.find(b);
  if (it == buckets_.end()) return {};
  return it->second;
}

void PsiBucketStore::Rotate(const ServerKey& old_key, const ServerKey& new_key) {
  if (old_key.id() != key_id_) {
    throw InvalidArgument("store was not built with the supplied old key");
  }
  const Scalar factor = new_key.scalar().Multiply(old_key.scalar().Inverse());
  for (auto& [b, elems] : buckets_) {
    for (auto& e : elems) e = e.Exp(factor);
    std::sort(elems.begin(), elems.end());
  }
  key_id_ = new_key.id();
}

size_t PsiBucketStore::MaxBucketSize() const {
  size_t best = 0;
  for (const auto& [b, elems] : buckets_) best = std::max(best, elems.size());
  return best;
}

void PsiBucketStore::Write(server::KvWriter& out) const {
  out.SetMeta("scheme", std::string("psi-") + std::string(ModeName(mode_)));
  out.SetMeta("bits", std::to_string(bits_));
  out.SetMeta("group", std::string(kGroupName));
  out.SetMeta("element_encoding", "ristretto255-compressed-32B-hex");
  out.SetMeta("key_id", key_id_);
  out.SetMeta("slow_hash", profile_name_);
  out.SetMeta("count", std::to_string(element_count_));
  for (const auto& [b, elems] : buckets_) {
    const std::string prefix = BucketKeyPrefix(b);
    for (const auto& e : elems) out.Put(prefix + e.Hex(), "");
  }
  out.Finish();
}

PsiBucketStore PsiBucketStore::Read(const server::KvStore& in) {
  auto scheme = in.Meta("scheme");
  if (!scheme || !scheme->starts_with("psi-")) {
    throw ParseError("not a PSI bucket store");
  }
  PsiBucketStore store;
  store.mode_ = ParseMode(scheme->substr(4));
  auto bits_text = in.Meta("bits").value_or("");
  unsigned bits = 0;
  auto res = std::from_chars(bits_text.data(), bits_text.data() + bits_text.size(), bits);
  if (res.ec != std::errc()) throw ParseError("PSI store: bad bits");
  PsiBucketParams(bits);
  store.bits_ = bits;
  store.key_id_ = in.Meta("key_id").value_or("");
  store.profile_name_ = in.Meta("slow_hash").value_or("");
  in.ForEach([&](std::string_view key, std::string_view) {
    if (key.size() != 9 + 2 * kElementSize || key[8] != '/') {
      throw ParseError("PSI store: bad record key");
    }
    bucketize::BucketId b = 0;
    auto r = std::from_chars(key.data(), key.data() + 8, b, 16);
    if (r.ec != std::errc() || r.ptr != key.data() + 8) {
      throw ParseError("PSI store: bad bucket id");
    }
    store.buckets_[b].push_back(Element::FromHex(key.substr(9)));
    ++store.element_count_;
  });
  // Keys are sorted by hex, which is byte order, so buckets arrive sorted.
  return store;
}

}  // namespace c3::psi
