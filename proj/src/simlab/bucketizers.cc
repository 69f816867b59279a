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

#include "c3/simlab/bucketizers.h"

#include <map>

#include "c3/core/credential.h"
#include "c3/core/errors.h"

namespace c3::simlab {

namespace {

bucketize::HpbParams Params(unsigned bits) {
  if (bits == 0 || bits > 32) {
    throw ConfigError("simulation bucket bits must be in [1, 32]");
  }
  bucketize::HpbParams p;
  p.bits = bits;
  p.algorithm = HashAlgorithm::kSha256;
  return p;
}

}  // namespace

HpbBucketizer::HpbBucketizer(unsigned bits, bool with_username)
    : params_(Params(bits)), with_username_(with_username) {}

BucketInterval HpbBucketizer::Buckets(std::string_view user,
                                      std::string_view password) const {
  const auto b = with_username_
                     ? bucketize::HpbBucket(SerializePair(user, password), params_)
                     : bucketize::HpbBucket(password, params_);
  return {b, 1, num_buckets()};
}

IdbBucketizer::IdbBucketizer(unsigned bits) : params_(Params(bits)) {}

BucketInterval IdbBucketizer::Buckets(std::string_view user,
                                      std::string_view) const {
  return {bucketize::IdbBucket(user, params_), 1, num_buckets()};
}

FsbBucketizer FsbBucketizer::Exact(const SyntheticWorld& world,
                                   uint64_t num_buckets, uint64_t q_bar,
                                   std::string salt) {
  if (q_bar == 0 || q_bar > world.num_passwords()) {
    throw ConfigError("q_bar must be in [1, |W|]");
  }
  bucketize::FsbParams params;
  params.num_buckets = num_buckets;
  params.q_bar = q_bar;
  params.p_qbar = world.password_mass(world.ByMass()[q_bar - 1]);
  params.salt = std::move(salt);
  std::map<std::string, double, std::less<>> mass;
  for (size_t w = 0; w < world.num_passwords(); ++w) {
    mass.emplace(world.password(w), world.password_mass(w));
  }
  auto probability = [mass = std::move(mass)](std::string_view pw) {
    auto it = mass.find(pw);
    return it == mass.end() ? 0.0 : it->second;
  };
  return FsbBucketizer(bucketize::FsbScheme(std::move(params), probability));
}

BucketInterval FsbBucketizer::Buckets(std::string_view,
                                      std::string_view password) const {
  return scheme_.Interval(password);
}

BucketAssignment::BucketAssignment(const SyntheticWorld& world,
                                   const Bucketizer& bucketizer)
    : num_passwords_(world.num_passwords()),
      num_buckets_(bucketizer.num_buckets()),
      name_(bucketizer.name()) {
  intervals_.reserve(world.num_users() * world.num_passwords());
  for (size_t u = 0; u < world.num_users(); ++u) {
    for (size_t w = 0; w < world.num_passwords(); ++w) {
      intervals_.push_back(bucketizer.Buckets(world.user(u), world.password(w)));
    }
  }
}

std::unique_ptr<Bucketizer> MakeBucketizer(std::string_view scheme,
                                           const SyntheticWorld& world,
                                           unsigned bits, uint64_t fsb_buckets,
                                           uint64_t q_bar) {
  if (scheme == "hpb") return std::make_unique<HpbBucketizer>(bits);
  if (scheme == "idb") return std::make_unique<IdbBucketizer>(bits);
  if (scheme == "fsb") {
    return std::make_unique<FsbBucketizer>(
        FsbBucketizer::Exact(world, fsb_buckets, q_bar));
  }
  if (scheme == "single") return std::make_unique<SingleBucketizer>();
  throw ConfigError("unknown scheme '" + std::string(scheme) + "'");
}

}  // namespace c3::simlab
