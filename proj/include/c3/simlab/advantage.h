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

#ifndef C3_SIMLAB_ADVANTAGE_H_
#define C3_SIMLAB_ADVANTAGE_H_

#include <cstdint>
#include <vector>

#include "c3/simlab/bucketizers.h"
#include "c3/simlab/world.h"

namespace c3::simlab {

// Exact success probabilities of the optimal attacker. Budgets are signed so
// that a negative q is reported instead of wrapping; worlds above
// kMaxExactStates cells are refused with ConfigError.

// Sum of the q largest weights, added largest first.
double TopQSum(std::vector<double> weights, size_t q);

// λ_q: mass of the q most likely passwords under the marginal.
double Lambda(const SyntheticWorld& world, int64_t q);

// Σ_u max over q-sets W' of Σ_{w in W'} p(u, w).
double AdvGuess(const SyntheticWorld& world, int64_t q);

// Σ_u Σ_b max over q-sets of in-bucket weights p(u, w) / |β(u, w)|.
double AdvBucket(const SyntheticWorld& world, const BucketAssignment& buckets,
                 int64_t q);
double AdvBucket(const SyntheticWorld& world, const Bucketizer& bucketizer,
                 int64_t q);

// AdvBucket - AdvGuess.
double SecurityLoss(const SyntheticWorld& world,
                    const BucketAssignment& buckets, int64_t q);
double SecurityLoss(const SyntheticWorld& world, const Bucketizer& bucketizer,
                    int64_t q);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_ADVANTAGE_H_
