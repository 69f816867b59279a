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

#ifndef C3_BUCKETIZE_FSB_H_
#define C3_BUCKETIZE_FSB_H_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "c3/bucketize/hpb.h"
#include "c3/core/digest.h"

namespace c3::distest {
class HybridEstimator;
}

namespace c3::bucketize {

struct FsbParams {
  uint64_t num_buckets = uint64_t{1} << 30;
  // Expected attacker budget the scheme is tuned for.
  uint64_t q_bar = 1000;
  // Estimated probability of the q_bar-th most likely password.
  double p_qbar = 0;
  // Public per-deployment salt for f and the returned digests.
  std::string salt;
};

// Throws ConfigError unless num_buckets >= 1, q_bar >= 1, p_qbar > 0.
void ValidateFsbParams(const FsbParams& params);

// Contiguous run of `gamma` bucket ids starting at `start`, wrapping past
// num_buckets - 1 back to 0.
struct BucketInterval {
  uint64_t start = 0;
  uint64_t gamma = 1;
  uint64_t num_buckets = 1;

  bool wraps() const { return start + gamma > num_buckets; }
  bool Covers(uint64_t bucket) const;
  // One or two inclusive [lo, hi] ranges, ascending.
  std::vector<std::pair<uint64_t, uint64_t>> Segments() const;
  // The covered ids in interval order (start first). Materializes gamma ids.
  std::vector<uint64_t> Buckets() const;

  friend bool operator==(const BucketInterval&, const BucketInterval&) = default;
};

// min(num_buckets, ceil(num_buckets * p / p_qbar)), at least 1.
uint64_t ReplicationCount(double probability, double p_qbar,
                          uint64_t num_buckets);

// f(x): salted SHA-256 of x reduced to [0, num_buckets). For a power-of-two
// bucket count this is the leading log2(num_buckets) bits; otherwise the
// leading 64 bits modulo num_buckets.
uint64_t FsbHash(std::string_view input, std::string_view salt,
                 uint64_t num_buckets);

// SHA-256(salt || password); the form stored and served for FSB buckets.
Sha256Digest FsbDigest(std::string_view password, std::string_view salt);

BucketInterval FsbInterval(std::string_view password, double probability,
                           const FsbParams& params);

// Uniform over the covered ids.
uint64_t PickBucketRandom(const BucketInterval& interval, std::mt19937_64& rng);
// start + (f(w || 0x00 || cookie) mod gamma), stable for a fixed cookie.
uint64_t PickBucketDerandomized(std::string_view password,
                                const BucketInterval& interval,
                                std::span<const uint8_t> cookie,
                                std::string_view salt);

using ProbabilityFn = std::function<double(std::string_view)>;

// FSB bucketizer bound to a probability estimate.
class FsbScheme {
 public:
  FsbScheme(FsbParams params, ProbabilityFn probability);

  // Derives p_qbar as the estimate of the q_bar-th most likely password. The
  // estimator must outlive the scheme. `domain` is required when q_bar
  // exceeds the histogram head.
  static FsbScheme FromEstimator(const distest::HybridEstimator& estimator,
                                 uint64_t num_buckets, uint64_t q_bar,
                                 std::string salt,
                                 std::span<const std::string> domain = {});

  BucketInterval Interval(std::string_view password) const {
    return FsbInterval(password, probability_(password), params_);
  }
  double Probability(std::string_view password) const {
    return probability_(password);
  }
  const FsbParams& params() const { return params_; }

 private:
  FsbParams params_;
  ProbabilityFn probability_;
};

}  // namespace c3::bucketize

#endif  // C3_BUCKETIZE_FSB_H_
