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

#ifndef C3_DISTEST_NGRAM_H_
#define C3_DISTEST_NGRAM_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace c3::distest {

// Character 3-gram model over printable ASCII with an end marker. Each
// password is padded with two start markers; the conditional distribution of
// the next symbol given the previous two is the additively smoothed count
// ratio (count + s) / (total + 96 s).
class NGramModel {
 public:
  static constexpr int kOrder = 3;
  static constexpr int kChars = 95;            // 0x20 .. 0x7E
  static constexpr int kSymbols = kChars + 1;  // plus end marker
  static constexpr int kEnd = kChars;
  static constexpr int kStart = kSymbols;      // context-only
  static constexpr int kUnknown = kSymbols + 1;
  static constexpr int kContextSymbols = kSymbols + 2;
  // Probability floor for characters outside the alphabet.
  static constexpr double kFloor = 1e-12;
  // Sampled strings longer than this are rejected and redrawn.
  static constexpr size_t kMaxSampleLength = 30;

  struct ContextCounts {
    std::array<uint64_t, kSymbols> next{};
    uint64_t total = 0;
  };
  using ContextKey = uint32_t;

  NGramModel() = default;

  // Each password counted `weight` times. Passwords containing characters
  // outside the alphabet are skipped. Throws InvalidArgument on an empty
  // corpus or negative smoothing.
  static NGramModel Train(const std::map<std::string, uint64_t>& weighted,
                          double smoothing);
  static NGramModel Train(std::span<const std::string> passwords,
                          double smoothing);
  static NGramModel FromCounts(std::map<ContextKey, ContextCounts> contexts,
                               double smoothing);

  static ContextKey MakeContext(int first, int second) {
    return static_cast<ContextKey>(first * kContextSymbols + second);
  }
  // Alphabet index of `c`, or kUnknown.
  static int SymbolOf(char c);

  // P(symbol | context); unseen contexts are uniform over all symbols.
  double Conditional(ContextKey context, int symbol) const;

  double Probability(std::string_view password) const;
  double LogProbability(std::string_view password) const;

  // One ancestral draw.
  std::string Sample(std::mt19937_64& rng) const;

  double smoothing() const { return smoothing_; }
  const std::map<ContextKey, ContextCounts>& contexts() const {
    return contexts_;
  }

 private:
  std::map<ContextKey, ContextCounts> contexts_;
  double smoothing_ = 0;
};

// Uniform double in [0, 1) from 53 random bits.
inline double UnitUniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace c3::distest

#endif  // C3_DISTEST_NGRAM_H_
