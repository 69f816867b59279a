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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "c3/core/errors.h"
#include "c3/distest/estimator.h"
#include "c3/distest/histogram.h"
#include "c3/distest/ngram.h"
#include "oracles.h"

namespace c3::distest {
namespace {

const std::map<std::string, uint64_t> kCorpus = {
    {"123456", 50}, {"password", 30}, {"qwerty", 10}, {"abc123", 5},
    {"letmein", 3}, {"dragon", 1},    {"monkey", 1}};

TEST(Histogram, HeadProbabilitiesAndTies) {
  const auto h = HistogramModel::Train({{"b", 2}, {"a", 2}, {"c", 1}, {"d", 5}}, 3);
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h.entries()[0].password, "d");
  EXPECT_EQ(h.entries()[1].password, "a");  // tie on 2, lexicographic
  EXPECT_EQ(h.entries()[2].password, "b");
  EXPECT_EQ(h.total_count(), 10u);
  EXPECT_DOUBLE_EQ(*h.Lookup("d"), 0.5);
  EXPECT_DOUBLE_EQ(h.head_mass(), 0.9);
  EXPECT_FALSE(h.Lookup("c"));
  EXPECT_THROW(HistogramModel::Train(std::map<std::string, uint64_t>{}, 3), InvalidArgument);
  EXPECT_THROW(HistogramModel::Train({{"a", 1}}, 0), InvalidArgument);
}

// Independent trigram count with start padding and an end marker.
double ReferenceProbability(const std::map<std::string, uint64_t>& corpus, double s,
                            const std::string& w) {
  constexpr int kStart = -1, kEnd = 256;
  std::map<std::tuple<int, int, int>, double> tri;
  std::map<std::pair<int, int>, double> ctx;
  auto symbols = [&](const std::string& x) {
    std::vector<int> v = {kStart, kStart};
    for (unsigned char c : x) v.push_back(c);
    v.push_back(kEnd);
    return v;
  };
  for (const auto& [pw, n] : corpus) {
    const auto v = symbols(pw);
    for (size_t i = 2; i < v.size(); ++i) {
      tri[{v[i - 2], v[i - 1], v[i]}] += double(n);
      ctx[{v[i - 2], v[i - 1]}] += double(n);
    }
  }
  const auto v = symbols(w);
  double p = 1;
  for (size_t i = 2; i < v.size(); ++i) {
    const double c = tri.count({v[i - 2], v[i - 1], v[i]}) ? tri[{v[i - 2], v[i - 1], v[i]}] : 0;
    const double t = ctx.count({v[i - 2], v[i - 1]}) ? ctx[{v[i - 2], v[i - 1]}] : 0;
    p *= t == 0 ? 1.0 / 96 : (c + s) / (t + 96 * s);
  }
  return p;
}

TEST(NGram, ProbabilityMatchesReferenceCounts) {
  const auto m = NGramModel::Train(kCorpus, 0.01);
  for (const std::string w : {"123456", "password", "pass", "zzz", "a", "monkey1"}) {
    EXPECT_NEAR(m.Probability(w), ReferenceProbability(kCorpus, 0.01, w),
                1e-12 * ReferenceProbability(kCorpus, 0.01, w))
        << w;
    EXPECT_NEAR(m.LogProbability(w), std::log(m.Probability(w)), 1e-9);
  }
}

TEST(NGram, ConditionalsSumToOne) {
  const auto m = NGramModel::Train(kCorpus, 0.5);
  std::vector<NGramModel::ContextKey> keys;
  for (const auto& [k, c] : m.contexts()) keys.push_back(k);
  keys.push_back(NGramModel::MakeContext(NGramModel::SymbolOf('~'), NGramModel::SymbolOf('~')));
  for (auto k : keys) {
    double total = 0;
    for (int s = 0; s < NGramModel::kSymbols; ++s) total += m.Conditional(k, s);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(NGram, SymbolsAndSampling) {
  EXPECT_EQ(NGramModel::SymbolOf(' '), 0);
  EXPECT_EQ(NGramModel::SymbolOf('~'), 94);
  EXPECT_EQ(NGramModel::SymbolOf('\t'), NGramModel::kUnknown);
  const auto m = NGramModel::Train(kCorpus, 0.01);
  EXPECT_LE(m.Probability("a\tb"), NGramModel::kFloor);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto s = m.Sample(rng);
    EXPECT_LE(s.size(), NGramModel::kMaxSampleLength);
    for (char c : s) EXPECT_NE(NGramModel::SymbolOf(c), NGramModel::kUnknown);
  }
  EXPECT_THROW(NGramModel::Train(std::map<std::string, uint64_t>{}, 0.1), InvalidArgument);
  EXPECT_THROW(NGramModel::Train(kCorpus, -1), InvalidArgument);
}

TEST(HybridEstimator, HeadExactTailRescaled) {
  EstimatorOptions opts;
  opts.t = 3;
  const auto e = HybridEstimator::Train(kCorpus, opts);
  EXPECT_DOUBLE_EQ(e.Estimate("123456"), 50.0 / 100);
  EXPECT_TRUE(e.IsHead("qwerty"));
  EXPECT_FALSE(e.IsHead("dragon"));
  EXPECT_DOUBLE_EQ(e.Estimate("dragon"), e.tail_scale() * e.ngram().Probability("dragon"));
  // Head mass plus the rescaled tail mass is the whole distribution.
  EXPECT_NEAR(e.head_mass() + e.tail_scale() * (1 - e.head_ngram_mass()), 1.0, 1e-12);
  EXPECT_EQ(e.TopQ(2), (std::vector<std::string>{"123456", "password"}));
  EXPECT_THROW(e.TopQ(4), InvalidArgument);
  const std::vector<std::string> domain = {"dragon", "password", "zzzzzz", "123456"};
  const auto top = e.TopQ(4, domain);
  for (size_t i = 1; i < top.size(); ++i) EXPECT_GE(e.Estimate(top[i - 1]), e.Estimate(top[i]));
}

TEST(HybridEstimator, SerializationRoundTripAndTamper) {
  EstimatorOptions opts;
  opts.t = 4;
  const auto e = HybridEstimator::Train(kCorpus, opts);
  const std::string bytes = e.Serialize();
  const auto back = HybridEstimator::Deserialize(bytes);
  EXPECT_EQ(back.digest(), e.digest());
  for (const std::string w : {"123456", "dragon", "x", "Password1"}) {
    EXPECT_EQ(back.Estimate(w), e.Estimate(w)) << w;
  }
  for (size_t pos : {size_t{0}, size_t{5}, bytes.size() / 2, bytes.size() - 1}) {
    std::string bad = bytes;
    bad[pos] ^= 1;
    EXPECT_THROW(HybridEstimator::Deserialize(bad), ParseError) << pos;
  }
  EXPECT_THROW(HybridEstimator::Deserialize(bytes.substr(0, bytes.size() - 3)), ParseError);

  oracle::TempDir tmp;
  e.Save(tmp / "e.c3est");
  EXPECT_EQ(HybridEstimator::Load(tmp / "e.c3est").digest(), e.digest());

  opts.t = 5;
  EXPECT_NE(HybridEstimator::Train(kCorpus, opts).digest(), e.digest());
}

TEST(HybridEstimator, SamplesAreReproducible) {
  const auto e = HybridEstimator::Train(kCorpus, {});
  EXPECT_EQ(e.Sample(20, 4), e.Sample(20, 4));
  EXPECT_NE(e.Sample(20, 4), e.Sample(20, 5));
}

}  // namespace
}  // namespace c3::distest
