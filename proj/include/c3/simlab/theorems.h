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

#ifndef C3_SIMLAB_THEOREMS_H_
#define C3_SIMLAB_THEOREMS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "c3/simlab/bucketizers.h"
#include "c3/simlab/world.h"

namespace c3::simlab {

// Absolute slack allowed on every bound.
inline constexpr double kBoundTolerance = 1e-12;

// One bound evaluated on one world: lower <= observed <= upper, each side
// checked separately.
struct BoundCheck {
  std::string name;
  int64_t q = 0;
  double observed = 0;
  double lower = 0;
  double upper = 0;
  bool lower_ok = true;
  bool upper_ok = true;
  // Filled in when a side fails.
  std::string counterexample;

  bool holds() const { return lower_ok && upper_ok; }
};

// "hpb-bound": AdvBucket_HPB(q) <= AdvGuess(q * |B|). `observed` is AdvBucket.
BoundCheck CheckHpbBound(const SyntheticWorld& world,
                         const HpbBucketizer& hpb, int64_t q);

// "idb-equality": AdvBucket_IDB(q) == AdvGuess(q). `observed` is the loss.
BoundCheck CheckIdbEquality(const SyntheticWorld& world,
                            const IdbBucketizer& idb, int64_t q);

// FSB bounds for a bucketizer whose estimate is the world's own marginal.
// q <= q_bar ("fsb-zero-loss"): loss == 0. q > q_bar ("fsb-bounds"):
//   (λ_q - λ_qbar) / 2 <= loss <= (q - q_bar) * p(w_qbar) - (λ_q - λ_qbar).
// Throws InvalidArgument unless the world is a product distribution, the
// setting in which the estimate can equal every user's distribution.
BoundCheck CheckFsbBounds(const SyntheticWorld& world,
                          const FsbBucketizer& fsb, int64_t q);

struct TheoremOptions {
  unsigned hpb_bits = 2;
  unsigned idb_bits = 2;
  uint64_t fsb_buckets = 16;
  uint64_t q_bar = 3;
};

// Every applicable check for budgets 1..|W|; FSB only for product worlds.
std::vector<BoundCheck> CheckTheorems(const SyntheticWorld& world,
                                      const TheoremOptions& options);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_THEOREMS_H_
