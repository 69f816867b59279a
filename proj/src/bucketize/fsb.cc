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

#include "c3/bucketize/fsb.h"

#include <bit>
#include <cmath>

#include "c3/core/errors.h"
#include "c3/distest/estimator.h"

namespace c3::bucketize {

void ValidateFsbParams(const FsbParams& params) {
  if (params.num_buckets < 1) throw ConfigError("FSB needs at least 1 bucket");
  if (params.q_bar < 1) throw ConfigError("FSB q_bar must be >= 1");
  if (!(params.p_qbar > 0) || !std::isfinite(params.p_qbar)) {
    throw ConfigError("FSB p_qbar must be a positive probability");
  }
}

bool BucketInterval::Covers(uint64_t bucket) const {
  if (bucket >= num_buckets) return false;
  // Distance walked forward from start, modulo the ring.
  uint64_t offset =
      bucket >= start ? bucket - start : bucket + (num_buckets - start);
  return offset < gamma;
}

std::vector<std::pair<uint64_t, uint64_t>> BucketInterval::Segments() const {
  if (!wraps()) return {{start, start + gamma - 1}};
  const uint64_t head = gamma - (num_buckets - start);
  return {{0, head - 1}, {start, num_buckets - 1}};
}

std::vector<uint64_t> BucketInterval::Buckets() const {
  std::vector<uint64_t> out;
  out.reserve(gamma);
  for (uint64_t i = 0; i < gamma; ++i) out.push_back((start + i) % num_buckets);
  return out;
}

uint64_t ReplicationCount(double probability, double p_qbar,
                          uint64_t num_buckets) {
  const double ratio = probability / p_qbar;
  if (!(ratio < 1)) return num_buckets;
  const long double scaled =
      std::ceil(static_cast<long double>(num_buckets) * ratio);
  if (scaled < 1) return 1;
  if (scaled >= static_cast<long double>(num_buckets)) return num_buckets;
  return static_cast<uint64_t>(scaled);
}

uint64_t FsbHash(std::string_view input, std::string_view salt,
                 uint64_t num_buckets) {
  if (num_buckets == 0) throw InvalidArgument("FsbHash over zero buckets");
  auto d = Sha256Concat({salt, input});
  uint64_t head = 0;
  for (int i = 0; i < 8; ++i) head = (head << 8) | d[i];
  if (std::has_single_bit(num_buckets)) {
    const int bits = std::countr_zero(num_buckets);
    return bits == 0 ? 0 : head >> (64 - bits);
  }
  return head % num_buckets;
}

Sha256Digest FsbDigest(std::string_view password, std::string_view salt) {
  return Sha256Concat({salt, password});
}

BucketInterval FsbInterval(std::string_view password, double probability,
                           const FsbParams& params) {
  ValidateFsbParams(params);
  BucketInterval iv;
  iv.num_buckets = params.num_buckets;
  iv.gamma = ReplicationCount(probability, params.p_qbar, params.num_buckets);
  iv.start = FsbHash(password, params.salt, params.num_buckets);
  return iv;
}

uint64_t PickBucketRandom(const BucketInterval& interval, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> offset(0, interval.gamma - 1);
  return (interval.start + offset(rng)) % interval.num_buckets;
}

uint64_t PickBucketDerandomized(std::string_view password,
                                const BucketInterval& interval,
                                std::span<const uint8_t> cookie,
                                std::string_view salt) {
  std::string keyed(password);
  keyed.push_back('\0');
  keyed.append(reinterpret_cast<const char*>(cookie.data()), cookie.size());
  const uint64_t j = FsbHash(keyed, salt, interval.num_buckets) % interval.gamma;
  return (interval.start + j) % interval.num_buckets;
}

FsbScheme::FsbScheme(FsbParams params, ProbabilityFn probability)
    : params_(std::move(params)), probability_(std::move(probability)) {
  ValidateFsbParams(params_);
  if (!probability_) throw ConfigError("FSB scheme needs a probability model");
}

FsbScheme FsbScheme::FromEstimator(const distest::HybridEstimator& estimator,
                                   uint64_t num_buckets, uint64_t q_bar,
                                   std::string salt,
                                   std::span<const std::string> domain) {
  if (q_bar < 1) throw ConfigError("FSB q_bar must be >= 1");
  auto top = domain.empty() ? estimator.TopQ(q_bar)
                            : estimator.TopQ(q_bar, domain);
  FsbParams params;
  params.num_buckets = num_buckets;
  params.q_bar = q_bar;
  params.p_qbar = estimator.Estimate(top.back());
  params.salt = std::move(salt);
  return FsbScheme(std::move(params), [&estimator](std::string_view w) {
    return estimator.Estimate(w);
  });
}

}  // namespace c3::bucketize
