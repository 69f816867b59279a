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

#include "c3/simlab/attacker.h"

#include <algorithm>
#include <map>
#include <set>

#include "c3/core/errors.h"
#include "c3/distest/estimator.h"

namespace c3::simlab {

std::vector<size_t> OptimalAttacker::Guesses(size_t user,
                                             std::optional<uint64_t> bucket,
                                             size_t q) const {
  if (bucket && !buckets_) {
    throw InvalidArgument("bucket game needs a bucket assignment");
  }
  std::vector<std::pair<double, size_t>> ranked;
  for (size_t w = 0; w < world_.num_passwords(); ++w) {
    double weight = world_.p(user, w);
    if (bucket) {
      const auto& iv = buckets_->at(user, w);
      if (!iv.Covers(*bucket)) continue;
      weight /= static_cast<double>(iv.gamma);
    }
    ranked.emplace_back(weight, w);
  }
  const size_t n = std::min(q, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + n, ranked.end(),
                    [&](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return world_.password(a.second) < world_.password(b.second);
                    });
  std::vector<size_t> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(ranked[i].second);
  return out;
}

AttackerModel AttackerModel::FromLeak(const distest::HybridEstimator& estimator,
                                      const LeakDataset& leak,
                                      size_t tail_samples, uint64_t seed,
                                      size_t q) {
  AttackerModel m;
  std::vector<std::pair<std::string, uint64_t>> counted(
      leak.password_counts().begin(), leak.password_counts().end());
  std::stable_sort(counted.begin(), counted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::set<std::string, std::less<>> seen;
  for (auto& [pw, count] : counted) {
    seen.insert(pw);
    m.candidates.push_back(pw);
  }
  for (auto& pw : estimator.Sample(tail_samples, seed)) {
    if (seen.insert(pw).second) m.candidates.push_back(std::move(pw));
  }
  m.weight = [&estimator](std::string_view pw) { return estimator.Estimate(pw); };
  if (leak.mode() == DatasetMode::kUsernamePassword) {
    m.targeted = [&leak](std::string_view user) {
      return leak.PasswordsOf(NormalizeUsername(user));
    };
  }
  m.q = q;
  return m;
}

AttackerModel AttackerModel::FromWorld(const SyntheticWorld& world, size_t q) {
  AttackerModel m;
  for (size_t w : world.ByMass()) m.candidates.push_back(world.password(w));
  m.weight = [&world](std::string_view pw) {
    auto w = world.PasswordIndex(pw);
    return w ? world.password_mass(*w) : 0.0;
  };
  m.targeted = [&world](std::string_view user) {
    std::vector<std::string> out;
    if (auto u = world.UserIndex(user)) {
      for (size_t w : world.LeakedPasswordsOf(*u)) out.push_back(world.password(w));
    }
    return out;
  };
  m.q = q;
  return m;
}

namespace {

// `limit` 0 means unlimited.
std::vector<std::string> RankCandidates(const AttackerModel& model,
                                        std::string_view user,
                                        std::optional<uint64_t> bucket,
                                        const Bucketizer* bucketizer,
                                        size_t limit) {
  if (bucket && !bucketizer) {
    throw InvalidArgument("bucket-restricted candidates need a bucketizer");
  }
  auto in_bucket = [&](std::string_view pw) -> std::optional<uint64_t> {
    if (!bucket) return 1;
    const auto iv = bucketizer->Buckets(user, pw);
    if (!iv.Covers(*bucket)) return std::nullopt;
    return iv.gamma;
  };

  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  auto full = [&] { return limit != 0 && out.size() >= limit; };

  if (model.targeted) {
    for (auto& pw : model.targeted(user)) {
      if (full()) return out;
      if (in_bucket(pw) && seen.insert(pw).second) out.push_back(pw);
    }
  }

  struct Ranked {
    double score;
    const std::string* pw;
  };
  std::vector<Ranked> ranked;
  for (const auto& pw : model.candidates) {
    if (seen.contains(pw)) continue;
    auto gamma = in_bucket(pw);
    if (!gamma) continue;
    ranked.push_back({model.weight(pw) / static_cast<double>(*gamma), &pw});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return *a.pw < *b.pw;
  });
  for (const auto& r : ranked) {
    if (full()) break;
    // The candidate list itself may repeat entries.
    if (seen.insert(*r.pw).second) out.push_back(*r.pw);
  }
  return out;
}

}  // namespace

std::vector<std::string> AttackCandidates(const AttackerModel& model,
                                          std::string_view user,
                                          std::optional<uint64_t> bucket,
                                          const Bucketizer* bucketizer) {
  return RankCandidates(model, user, bucket, bucketizer, model.q);
}

std::vector<size_t> ModelAttacker::Guesses(size_t user,
                                           std::optional<uint64_t> bucket,
                                           size_t q) const {
  std::vector<size_t> out;
  if (q == 0) return out;
  for (const auto& pw : RankCandidates(model_, world_.user(user), bucket,
                                       bucketizer_, q)) {
    if (auto w = world_.PasswordIndex(pw)) out.push_back(*w);
  }
  return out;
}

}  // namespace c3::simlab
