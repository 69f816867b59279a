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

#include "c3/simlab/game.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "c3/bucketize/fsb.h"
#include "c3/core/errors.h"
#include "c3/distest/ngram.h"

namespace c3::simlab {

CellSampler::CellSampler(const SyntheticWorld& world)
    : num_passwords_(world.num_passwords()) {
  cumulative_.reserve(world.num_users() * world.num_passwords());
  double total = 0;
  for (size_t u = 0; u < world.num_users(); ++u) {
    for (double x : world.Row(u)) {
      total += x;
      cumulative_.push_back(total);
    }
  }
}

Cell CellSampler::Sample(std::mt19937_64& rng) const {
  // Scale by the actual total so rounding never leaves a gap at the top.
  const double r = distest::UnitUniform(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  size_t i = static_cast<size_t>(it - cumulative_.begin());
  if (i == cumulative_.size()) --i;
  // Zero-mass cells share their predecessor's cumulative value, so
  // upper_bound already skips them.
  return {i / num_passwords_, i % num_passwords_};
}

GameResult RunGame(const SyntheticWorld& world, Game game,
                   const Attacker& attacker, const BucketAssignment* buckets,
                   size_t q, size_t trials, uint64_t seed, size_t threads) {
  if (game == Game::kBucketGuess && !buckets) {
    throw InvalidArgument("bucket game needs a bucket assignment");
  }
  const CellSampler sampler(world);
  auto play = [&](size_t i) {
    std::mt19937_64 rng(seed + i);
    const auto [u, w] = sampler.Sample(rng);
    std::optional<uint64_t> bucket;
    if (game == Game::kBucketGuess) {
      bucket = bucketize::PickBucketRandom(buckets->at(u, w), rng);
    }
    const auto guesses = attacker.Guesses(u, bucket, q);
    return std::find(guesses.begin(), guesses.end(), w) != guesses.end();
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<size_t>(1, std::min(threads, trials / 256 + 1));
  std::atomic<size_t> successes{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          size_t local = 0;
          for (size_t i = t; i < trials; i += threads) local += play(i) ? 1 : 0;
          successes += local;
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  GameResult r;
  r.trials = trials;
  r.successes = successes;
  if (trials > 0) {
    r.rate = static_cast<double>(r.successes) / static_cast<double>(trials);
    r.sigma = std::sqrt(r.rate * (1 - r.rate) / static_cast<double>(trials));
  }
  return r;
}

}  // namespace c3::simlab
