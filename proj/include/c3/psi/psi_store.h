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

#ifndef C3_PSI_PSI_STORE_H_
#define C3_PSI_PSI_STORE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c3/bucketize/hpb.h"
#include "c3/core/credential.h"
#include "c3/psi/oprf.h"
#include "c3/server/kv_store.h"

namespace c3::psi {

// gpc buckets by the hash prefix of u || w; idb by that of u alone.
enum class PsiMode { kGpc, kIdb };

std::string_view ModeName(PsiMode mode);
// Throws ConfigError for anything but "gpc" / "idb".
PsiMode ParseMode(std::string_view name);

// Bucketing hash parameters shared by client and server (SHA-256, no salt).
bucketize::HpbParams PsiBucketParams(unsigned bits);

// The bucket a client queries for (u, w) in `mode`.
bucketize::BucketId PsiBucketOf(std::string_view username,
                                std::string_view password, PsiMode mode,
                                unsigned bits);

// Server-side precomputed buckets of F_k(u || w).
class PsiBucketStore {
 public:
  struct Options {
    unsigned bits = 16;
    PsiMode mode = PsiMode::kGpc;
    SlowHashProfile profile;
    // 0 = hardware concurrency.
    size_t threads = 0;
  };

  // Throws InvalidArgument unless the dataset holds username-password pairs.
  static PsiBucketStore Precompute(const LeakDataset& dataset,
                                   const ServerKey& key, const Options& options);

  // Sorted elements of `bucket`; empty when nothing was stored there.
  std::span<const Element> Bucket(bucketize::BucketId bucket) const;

  // Re-exponentiates every element by new * old^-1 so the store matches
  // `new_key`. Throws InvalidArgument if `old_key` is not the current key.
  void Rotate(const ServerKey& old_key, const ServerKey& new_key);

  unsigned bits() const { return bits_; }
  PsiMode mode() const { return mode_; }
  const std::string& key_id() const { return key_id_; }
  const std::string& profile_name() const { return profile_name_; }
  size_t element_count() const { return element_count_; }
  size_t bucket_count() const { return buckets_.size(); }
  size_t MaxBucketSize() const;

  // Keys are "<8 hex bucket>/<element hex>" with empty values.
  void Write(server::KvWriter& out) const;
  static PsiBucketStore Read(const server::KvStore& in);

 private:
  unsigned bits_ = 16;
  PsiMode mode_ = PsiMode::kGpc;
  std::string key_id_;
  std::string profile_name_;
  size_t element_count_ = 0;
  std::map<bucketize::BucketId, std::vector<Element>> buckets_;
};

}  // namespace c3::psi

#endif  // C3_PSI_PSI_STORE_H_
