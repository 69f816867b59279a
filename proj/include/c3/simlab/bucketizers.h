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

#ifndef C3_SIMLAB_BUCKETIZERS_H_
#define C3_SIMLAB_BUCKETIZERS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "c3/bucketize/fsb.h"
#include "c3/bucketize/hpb.h"
#include "c3/simlab/world.h"

namespace c3::simlab {

using bucketize::BucketInterval;

// β: maps a credential to the contiguous set of buckets it is stored in.
// Single-bucket schemes return intervals with gamma = 1.
class Bucketizer {
 public:
  virtual ~Bucketizer() = default;
  virtual std::string name() const = 0;
  virtual uint64_t num_buckets() const = 0;
  virtual BucketInterval Buckets(std::string_view user,
                                 std::string_view password) const = 0;
};

// Hash-prefix buckets of u || w (or of w alone when `with_username` is
// false), SHA-256, `bits` <= 32.
class HpbBucketizer : public Bucketizer {
 public:
  explicit HpbBucketizer(unsigned bits, bool with_username = true);
  std::string name() const override { return "hpb"; }
  uint64_t num_buckets() const override { return uint64_t{1} << params_.bits; }
  BucketInterval Buckets(std::string_view user,
                         std::string_view password) const override;

 private:
  bucketize::HpbParams params_;
  bool with_username_;
};

// Hash-prefix buckets of the username alone.
class IdbBucketizer : public Bucketizer {
 public:
  explicit IdbBucketizer(unsigned bits);
  std::string name() const override { return "idb"; }
  uint64_t num_buckets() const override { return uint64_t{1} << params_.bits; }
  BucketInterval Buckets(std::string_view user,
                         std::string_view password) const override;

 private:
  bucketize::HpbParams params_;
};

// Frequency-smoothing buckets of the password.
class FsbBucketizer : public Bucketizer {
 public:
  explicit FsbBucketizer(bucketize::FsbScheme scheme)
      : scheme_(std::move(scheme)) {}
  // The estimate is the world's own password marginal (p-hat = p) and
  // p_qbar the mass of its q_bar-th most likely password.
  static FsbBucketizer Exact(const SyntheticWorld& world, uint64_t num_buckets,
                             uint64_t q_bar, std::string salt = "simlab");

  std::string name() const override { return "fsb"; }
  uint64_t num_buckets() const override { return scheme_.params().num_buckets; }
  BucketInterval Buckets(std::string_view user,
                         std::string_view password) const override;
  const bucketize::FsbScheme& scheme() const { return scheme_; }

 private:
  bucketize::FsbScheme scheme_;
};

// Everything in one bucket.
class SingleBucketizer : public Bucketizer {
 public:
  std::string name() const override { return "single"; }
  uint64_t num_buckets() const override { return 1; }
  BucketInterval Buckets(std::string_view, std::string_view) const override {
    return {0, 1, 1};
  }
};

// β evaluated once for every cell of a world.
class BucketAssignment {
 public:
  BucketAssignment(const SyntheticWorld& world, const Bucketizer& bucketizer);

  const BucketInterval& at(size_t u, size_t w) const {
    return intervals_[u * num_passwords_ + w];
  }
  uint64_t num_buckets() const { return num_buckets_; }
  std::string name() const { return name_; }

 private:
  size_t num_passwords_;
  uint64_t num_buckets_;
  std::string name_;
  std::vector<BucketInterval> intervals_;
};

// "hpb" / "idb" / "fsb" / "single"; fsb is exact for `world`.
std::unique_ptr<Bucketizer> MakeBucketizer(std::string_view scheme,
                                           const SyntheticWorld& world,
                                           unsigned bits, uint64_t fsb_buckets,
                                           uint64_t q_bar);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_BUCKETIZERS_H_
