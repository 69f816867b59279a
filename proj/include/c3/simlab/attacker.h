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

#ifndef C3_SIMLAB_ATTACKER_H_
#define C3_SIMLAB_ATTACKER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "c3/bucketize/fsb.h"
#include "c3/core/credential.h"
#include "c3/simlab/bucketizers.h"
#include "c3/simlab/world.h"

namespace c3::distest {
class HybridEstimator;
}

namespace c3::simlab {

// Guesses for the user's password, best first, as indices into the world.
class Attacker {
 public:
  virtual ~Attacker() = default;
  // `bucket` is empty in the plain guessing game.
  virtual std::vector<size_t> Guesses(size_t user,
                                      std::optional<uint64_t> bucket,
                                      size_t q) const = 0;
};

// Knows p exactly and ranks by p(u, w) / |β(u, w)|, ties by password. Its
// success equals AdvGuess / AdvBucket.
class OptimalAttacker : public Attacker {
 public:
  // `buckets` may be null when only the plain game is played.
  OptimalAttacker(const SyntheticWorld& world, const BucketAssignment* buckets)
      : world_(world), buckets_(buckets) {}
  std::vector<size_t> Guesses(size_t user, std::optional<uint64_t> bucket,
                              size_t q) const override;

 private:
  const SyntheticWorld& world_;
  const BucketAssignment* buckets_;
};

using TargetedSource =
    std::function<std::vector<std::string>(std::string_view user)>;

// What a realistic attacker works from: a candidate list in weight order, a
// probability estimate for the weights, and optionally per-user targeted
// guesses tried first.
struct AttackerModel {
  std::vector<std::string> candidates;
  bucketize::ProbabilityFn weight;
  TargetedSource targeted;
  // Guesses per query; 0 returns the whole list.
  size_t q = 0;

  // Leaked passwords by frequency, then `tail_samples` draws from the
  // estimator that are not already listed. Weights come from the estimator.
  // `targeted` defaults to the user's own leaked passwords.
  static AttackerModel FromLeak(const distest::HybridEstimator& estimator,
                                const LeakDataset& leak, size_t tail_samples,
                                uint64_t seed, size_t q);
  // Candidates are the world's passwords by marginal mass, weights the
  // marginal itself, targeted guesses the user's leaked passwords.
  static AttackerModel FromWorld(const SyntheticWorld& world, size_t q);
};

// Candidates w with `bucket` in β(u, w), ordered by weight(w) / |β(u, w)|
// descending, ties by password; the user's targeted guesses that fall in
// the bucket come first. Without a bucket, nothing is filtered and weights
// are not divided. De-duplicated, truncated to model.q when it is set.
std::vector<std::string> AttackCandidates(const AttackerModel& model,
                                          std::string_view user,
                                          std::optional<uint64_t> bucket,
                                          const Bucketizer* bucketizer);

// Plays an AttackerModel inside a world. Guesses outside the world's
// universe use up budget without being able to succeed.
class ModelAttacker : public Attacker {
 public:
  ModelAttacker(const SyntheticWorld& world, AttackerModel model,
                const Bucketizer* bucketizer)
      : world_(world), model_(std::move(model)), bucketizer_(bucketizer) {}
  std::vector<size_t> Guesses(size_t user, std::optional<uint64_t> bucket,
                              size_t q) const override;

 private:
  const SyntheticWorld& world_;
  AttackerModel model_;
  const Bucketizer* bucketizer_;
};

}  // namespace c3::simlab

#endif  // C3_SIMLAB_ATTACKER_H_
