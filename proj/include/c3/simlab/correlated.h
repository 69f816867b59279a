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

#ifndef C3_SIMLAB_CORRELATED_H_
#define C3_SIMLAB_CORRELATED_H_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "c3/simlab/bucketizers.h"
#include "c3/simlab/game.h"
#include "c3/simlab/world.h"

namespace c3::simlab {

// τ_(u, w1)(w2) up to normalization: a non-negative weight for the user
// picking w2 after w1.
using SimilarityKernel = std::function<double(
    std::string_view user, std::string_view w1, std::string_view w2)>;

// Passwords one typical edit away from `w`: toggled case (first letter or
// whole word), a trailing number moved by one, a trailing digit appended or
// removed, and single leet substitutions in either direction.
std::set<std::string> TweakNeighbours(std::string_view w);

// The default kernel: 1 for tweak neighbours, `base` for everything else
// (including w2 == w1), so rows are never all zero.
SimilarityKernel TweakKernel(double base = 1e-3);
// Every w2 equally likely.
SimilarityKernel UniformKernel();
// w2 = w1 with certainty.
SimilarityKernel IdentityKernel();

// τ normalized over the world's unleaked passwords, the set the second
// password is drawn from. A (u, w1) whose kernel row has no weight on any
// unleaked password keeps an all-zero row and cannot start the game (the
// identity kernel does this for leaked w1).
class CorrelatedModel {
 public:
  // Throws InvalidArgument when a kernel weight is negative or not finite,
  // or when no cell of positive mass has a usable row; ConfigError when
  // |U| * |W|^2 exceeds 10^7.
  CorrelatedModel(const SyntheticWorld& world, SimilarityKernel kernel);

  // τ_(u, w1)(w2); zero when w2 is leaked.
  double Tau(size_t u, size_t w1, size_t w2) const {
    return tau_[(u * n_ + w1) * n_ + w2];
  }
  bool HasRow(size_t u, size_t w1) const { return has_row_[u * n_ + w1]; }
  // P(w2 = w | u) = Σ_w1 P(w1 | u) τ_(u, w1)(w); zero for users of zero mass.
  double SecondMass(size_t u, size_t w) const { return second_[u * n_ + w]; }
  const SyntheticWorld& world() const { return world_; }

 private:
  const SyntheticWorld& world_;
  size_t n_;
  std::vector<double> tau_;
  std::vector<bool> has_row_;
  std::vector<double> second_;
};

struct ScoredGuess {
  size_t password;
  double score;
};

// The maximum-a-posteriori ordering of candidates for w2 given the buckets
// b1, b2 of both queries and the user u:
//   score(w) = Σ_{w1 in α(b1)} τ_(u,w1)(w) P(w1 | u)
//              / (|β(u, w)| · P(w2 = w | u))
// over unleaked w with b2 in β(u, w); α(b1) ranges over the whole universe.
// Descending score, ties by password; truncated to q (0 keeps all).
std::vector<ScoredGuess> CorrelatedAttack(const CorrelatedModel& model,
                                          const BucketAssignment& buckets,
                                          uint64_t b1, uint64_t b2, size_t u,
                                          size_t q);

struct CorrelatedGameResult {
  GameResult correlated;
  // The optimal single-query attacker that only sees b2, on the same draws.
  GameResult single;
};

// Monte-Carlo correlated-query game: (u, w1) ~ p, w2 ~ τ_(u, w1) over the
// unleaked passwords, b_i uniform in β(u, w_i); success when w2 is among
// the q guesses. Trial i uses seed + i.
CorrelatedGameResult RunCorrelatedGame(const CorrelatedModel& model,
                                       const BucketAssignment& buckets,
                                       size_t q, size_t trials, uint64_t seed);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_CORRELATED_H_
