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

#ifndef C3_SIMLAB_GAME_H_
#define C3_SIMLAB_GAME_H_

#include <cstdint>
#include <random>
#include <vector>

#include "c3/simlab/attacker.h"
#include "c3/simlab/bucketizers.h"
#include "c3/simlab/world.h"

namespace c3::simlab {

enum class Game { kGuess, kBucketGuess };

struct GameResult {
  size_t trials = 0;
  size_t successes = 0;
  double rate = 0;
  // Binomial standard error of `rate`.
  double sigma = 0;
};

// Draws (u, w) from the world's joint distribution.
class CellSampler {
 public:
  explicit CellSampler(const SyntheticWorld& world);
  Cell Sample(std::mt19937_64& rng) const;

 private:
  size_t num_passwords_;
  std::vector<double> cumulative_;
};

// Monte-Carlo estimate of the attacker's success. Each trial: sample (u, w),
// in the bucket game pick b uniformly from β(u, w), ask the attacker for q
// guesses given u (and b), win if w is among them. Trial i draws from its
// own generator seeded with seed + i, so results do not depend on `threads`
// (0 = hardware concurrency).
GameResult RunGame(const SyntheticWorld& world, Game game,
                   const Attacker& attacker, const BucketAssignment* buckets,
                   size_t q, size_t trials, uint64_t seed, size_t threads = 0);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_GAME_H_
