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

#include "c3/simlab/correlated.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "c3/bucketize/fsb.h"
#include "c3/core/errors.h"
#include "c3/distest/ngram.h"

namespace c3::simlab {

namespace {

constexpr size_t kMaxKernelCells = 10'000'000;
constexpr int kMaxRedraws = 1'000'000;

struct LeetPair {
  char plain;
  char leet;
};
constexpr LeetPair kLeet[] = {{'a', '4'}, {'a', '@'}, {'e', '3'}, {'i', '1'},
                              {'i', '!'}, {'o', '0'}, {'s', '5'}, {'s', '$'}};

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }

}  // namespace

std::set<std::string> TweakNeighbours(std::string_view w) {
  std::set<std::string> out;
  if (w.empty()) return out;
  const std::string base(w);

  if (IsAlpha(base[0])) {
    std::string t = base;
    t[0] = static_cast<char>(std::isupper(static_cast<unsigned char>(t[0]))
                                 ? std::tolower(static_cast<unsigned char>(t[0]))
                                 : std::toupper(static_cast<unsigned char>(t[0])));
    out.insert(t);
  }
  std::string upper = base, lower = base;
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  out.insert(upper);
  out.insert(lower);

  out.insert(base + "1");
  size_t digits_at = base.size();
  while (digits_at > 0 && IsDigit(base[digits_at - 1])) --digits_at;
  if (digits_at < base.size()) {
    if (base.size() > 1) out.insert(base.substr(0, base.size() - 1));
    const std::string stem = base.substr(0, digits_at);
    const std::string num = base.substr(digits_at);
    if (num.size() <= 18) {
      const uint64_t n = std::stoull(num);
      // Keep leading zeros: "007" -> "008".
      auto padded = [&](uint64_t v) {
        std::string s = std::to_string(v);
        if (s.size() < num.size()) s.insert(0, num.size() - s.size(), '0');
        return stem + s;
      };
      out.insert(padded(n + 1));
      if (n > 0) out.insert(padded(n - 1));
    }
  }

  for (size_t i = 0; i < base.size(); ++i) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(base[i])));
    for (auto [plain, leet] : kLeet) {
      std::string t = base;
      if (c == plain) {
        t[i] = leet;
        out.insert(t);
      } else if (base[i] == leet) {
        t[i] = plain;
        out.insert(t);
      }
    }
  }
  out.erase(base);
  return out;
}

SimilarityKernel TweakKernel(double base) {
  return [base](std::string_view, std::string_view w1, std::string_view w2) {
    // Neighbourhoods are small; recomputing keeps the kernel stateless.
    return TweakNeighbours(w1).contains(std::string(w2)) ? 1.0 : base;
  };
}

SimilarityKernel UniformKernel() {
  return [](std::string_view, std::string_view, std::string_view) { return 1.0; };
}

SimilarityKernel IdentityKernel() {
  return [](std::string_view, std::string_view w1, std::string_view w2) {
    return w1 == w2 ? 1.0 : 0.0;
  };
}

CorrelatedModel::CorrelatedModel(const SyntheticWorld& world,
                                 SimilarityKernel kernel)
    : world_(world), n_(world.num_passwords()) {
  const size_t nu = world.num_users();
  if (nu * n_ * n_ > kMaxKernelCells) {
    throw ConfigError("world too large for an explicit correlation kernel");
  }
  tau_.assign(nu * n_ * n_, 0.0);
  has_row_.assign(nu * n_, false);
  second_.assign(nu * n_, 0.0);
  bool usable = false;
  for (size_t u = 0; u < nu; ++u) {
    for (size_t w1 = 0; w1 < n_; ++w1) {
      double* row = &tau_[(u * n_ + w1) * n_];
      double total = 0;
      for (size_t w2 = 0; w2 < n_; ++w2) {
        const double k =
            kernel(world.user(u), world.password(w1), world.password(w2));
        if (!std::isfinite(k) || k < 0) {
          throw InvalidArgument("similarity weights must be finite and non-negative");
        }
        if (world.IsLeakedPassword(w2)) continue;
        row[w2] = k;
        total += k;
      }
      if (total <= 0) {
        std::fill(row, row + n_, 0.0);
        continue;
      }
      for (size_t w2 = 0; w2 < n_; ++w2) row[w2] /= total;
      has_row_[u * n_ + w1] = true;
      if (world.p(u, w1) > 0) usable = true;
    }
    const double pu = world.user_mass(u);
    if (pu <= 0) continue;
    for (size_t w1 = 0; w1 < n_; ++w1) {
      const double p1 = world.p(u, w1) / pu;
      if (p1 == 0) continue;
      for (size_t w = 0; w < n_; ++w) second_[u * n_ + w] += p1 * Tau(u, w1, w);
    }
  }
  if (!usable) {
    throw InvalidArgument("no credential of positive mass has a second-password distribution");
  }
}

std::vector<ScoredGuess> CorrelatedAttack(const CorrelatedModel& model,
                                          const BucketAssignment& buckets,
                                          uint64_t b1, uint64_t b2, size_t u,
                                          size_t q) {
  const SyntheticWorld& world = model.world();
  const double pu = world.user_mass(u);
  std::vector<ScoredGuess> out;
  if (pu <= 0) return out;
  const size_t n = world.num_passwords();

  std::vector<size_t> first;  // α(b1)
  for (size_t w1 = 0; w1 < n; ++w1) {
    if (buckets.at(u, w1).Covers(b1)) first.push_back(w1);
  }
  for (size_t w = 0; w < n; ++w) {
    if (world.IsLeakedPassword(w)) continue;
    const auto& iv = buckets.at(u, w);
    if (!iv.Covers(b2)) continue;
    const double second = model.SecondMass(u, w);
    if (second <= 0) continue;  // w can never be the second password
    double numerator = 0;
    for (size_t w1 : first) numerator += model.Tau(u, w1, w) * (world.p(u, w1) / pu);
    out.push_back({w, numerator / (static_cast<double>(iv.gamma) * second)});
  }
  std::sort(out.begin(), out.end(), [&](const ScoredGuess& a, const ScoredGuess& b) {
    if (a.score != b.score) return a.score > b.score;
    return world.password(a.password) < world.password(b.password);
  });
  if (q != 0 && out.size() > q) out.resize(q);
  return out;
}

CorrelatedGameResult RunCorrelatedGame(const CorrelatedModel& model,
                                       const BucketAssignment& buckets,
                                       size_t q, size_t trials, uint64_t seed) {
  const SyntheticWorld& world = model.world();
  const CellSampler sampler(world);
  const OptimalAttacker single(world, &buckets);
  const size_t n = world.num_passwords();
  size_t hits_corr = 0, hits_single = 0;
  for (size_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(seed + i);
    Cell cell = sampler.Sample(rng);
    for (int tries = 0; !model.HasRow(cell.first, cell.second); ++tries) {
      if (tries == kMaxRedraws) throw Error("correlated game could not draw a first password");
      cell = sampler.Sample(rng);
    }
    const auto [u, w1] = cell;
    double r = distest::UnitUniform(rng);
    size_t w2 = 0;
    for (size_t w = 0; w < n; ++w) {
      const double t = model.Tau(u, w1, w);
      if (t == 0) continue;
      w2 = w;
      if (r < t) break;
      r -= t;
    }
    const uint64_t b1 = bucketize::PickBucketRandom(buckets.at(u, w1), rng);
    const uint64_t b2 = bucketize::PickBucketRandom(buckets.at(u, w2), rng);
    for (const auto& g : CorrelatedAttack(model, buckets, b1, b2, u, q)) {
      if (g.password == w2) {
        ++hits_corr;
        break;
      }
    }
    const auto guesses = single.Guesses(u, b2, q);
    if (std::find(guesses.begin(), guesses.end(), w2) != guesses.end()) ++hits_single;
  }
  auto summarize = [trials](size_t hits) {
    GameResult g;
    g.trials = trials;
    g.successes = hits;
    if (trials > 0) {
      g.rate = static_cast<double>(hits) / static_cast<double>(trials);
      g.sigma = std::sqrt(g.rate * (1 - g.rate) / static_cast<double>(trials));
    }
    return g;
  };
  return {summarize(hits_corr), summarize(hits_single)};
}

}  // namespace c3::simlab
