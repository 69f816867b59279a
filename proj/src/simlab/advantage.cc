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

#include "c3/simlab/advantage.h"

#include <algorithm>
#include <functional>
#include <map>

#include "c3/core/errors.h"

namespace c3::simlab {

namespace {

size_t Budget(int64_t q) {
  if (q < 0) throw InvalidArgument("guessing budget must be non-negative");
  return static_cast<size_t>(q);
}

void CheckExact(const SyntheticWorld& world) {
  if (world.num_users() * world.num_passwords() > kMaxExactStates) {
    throw ConfigError("world too large for exact computation; use run_game");
  }
}

}  // namespace

double TopQSum(std::vector<double> weights, size_t q) {
  q = std::min(q, weights.size());
  std::partial_sort(weights.begin(), weights.begin() + q, weights.end(),
                    std::greater<>());
  double total = 0;
  for (size_t i = 0; i < q; ++i) total += weights[i];
  return total;
}

double Lambda(const SyntheticWorld& world, int64_t q) {
  const size_t n = std::min(Budget(q), world.num_passwords());
  double total = 0;
  for (size_t i = 0; i < n; ++i) total += world.password_mass(world.ByMass()[i]);
  return total;
}

double AdvGuess(const SyntheticWorld& world, int64_t q) {
  const size_t budget = Budget(q);
  CheckExact(world);
  double total = 0;
  for (size_t u = 0; u < world.num_users(); ++u) {
    auto row = world.Row(u);
    total += TopQSum({row.begin(), row.end()}, budget);
  }
  return total;
}

double AdvBucket(const SyntheticWorld& world, const BucketAssignment& buckets,
                 int64_t q) {
  const size_t budget = Budget(q);
  CheckExact(world);
  double total = 0;
  std::map<uint64_t, std::vector<double>> in_bucket;
  for (size_t u = 0; u < world.num_users(); ++u) {
    in_bucket.clear();
    for (size_t w = 0; w < world.num_passwords(); ++w) {
      const auto& iv = buckets.at(u, w);
      const double weight = world.p(u, w) / static_cast<double>(iv.gamma);
      for (auto [lo, hi] : iv.Segments()) {
        for (uint64_t b = lo;; ++b) {
          in_bucket[b].push_back(weight);
          if (b == hi) break;
        }
      }
    }
    for (auto& [b, weights] : in_bucket) {
      total += TopQSum(std::move(weights), budget);
    }
  }
  return total;
}

double AdvBucket(const SyntheticWorld& world, const Bucketizer& bucketizer,
                 int64_t q) {
  return AdvBucket(world, BucketAssignment(world, bucketizer), q);
}

double SecurityLoss(const SyntheticWorld& world,
                    const BucketAssignment& buckets, int64_t q) {
  return AdvBucket(world, buckets, q) - AdvGuess(world, q);
}

double SecurityLoss(const SyntheticWorld& world, const Bucketizer& bucketizer,
                    int64_t q) {
  return SecurityLoss(world, BucketAssignment(world, bucketizer), q);
}

}  // namespace c3::simlab
