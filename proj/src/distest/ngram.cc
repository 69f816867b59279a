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

#include "c3/distest/ngram.h"

#include <cmath>
#include <limits>

#include "c3/core/errors.h"

namespace c3::distest {

namespace {

bool InAlphabet(std::string_view pw) {
  for (char c : pw) {
    if (NGramModel::SymbolOf(c) == NGramModel::kUnknown) return false;
  }
  return true;
}

void Count(std::map<NGramModel::ContextKey, NGramModel::ContextCounts>& ctx,
           std::string_view pw, uint64_t weight) {
  int a = NGramModel::kStart, b = NGramModel::kStart;
  auto bump = [&](int sym) {
    auto& cc = ctx[NGramModel::MakeContext(a, b)];
    cc.next[sym] += weight;
    cc.total += weight;
  };
  for (char c : pw) {
    int sym = NGramModel::SymbolOf(c);
    bump(sym);
    a = b;
    b = sym;
  }
  bump(NGramModel::kEnd);
}

}  // namespace

int NGramModel::SymbolOf(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u < 0x20 || u > 0x7E) return kUnknown;
  return u - 0x20;
}

NGramModel NGramModel::Train(const std::map<std::string, uint64_t>& weighted,
                             double smoothing) {
  std::map<ContextKey, ContextCounts> ctx;
  for (const auto& [pw, w] : weighted) {
    if (w == 0 || !InAlphabet(pw)) continue;
    Count(ctx, pw, w);
  }
  if (ctx.empty()) throw InvalidArgument("n-gram training corpus is empty");
  return FromCounts(std::move(ctx), smoothing);
}

NGramModel NGramModel::Train(std::span<const std::string> passwords,
                             double smoothing) {
  std::map<ContextKey, ContextCounts> ctx;
  for (const auto& pw : passwords) {
    if (InAlphabet(pw)) Count(ctx, pw, 1);
  }
  if (ctx.empty()) throw InvalidArgument("n-gram training corpus is empty");
  return FromCounts(std::move(ctx), smoothing);
}

NGramModel NGramModel::FromCounts(std::map<ContextKey, ContextCounts> contexts,
                                  double smoothing) {
  if (!(smoothing >= 0) || !std::isfinite(smoothing)) {
    throw InvalidArgument("n-gram smoothing must be finite and >= 0");
  }
  NGramModel m;
  m.contexts_ = std::move(contexts);
  m.smoothing_ = smoothing;
  return m;
}

double NGramModel::Conditional(ContextKey context, int symbol) const {
  auto it = contexts_.find(context);
  if (it == contexts_.end()) return 1.0 / kSymbols;
  const ContextCounts& cc = it->second;
  double count = (symbol >= 0 && symbol < kSymbols) ? cc.next[symbol] : 0;
  return (count + smoothing_) /
         (static_cast<double>(cc.total) + kSymbols * smoothing_);
}

double NGramModel::LogProbability(std::string_view password) const {
  int a = kStart, b = kStart;
  double logp = 0;
  auto step = [&](int sym) {
    // Characters outside the alphabet carry no trained mass.
    const double p = sym == kUnknown ? kFloor : Conditional(MakeContext(a, b), sym);
    logp += p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  };
  for (char c : password) {
    int sym = SymbolOf(c);
    step(sym);
    a = b;
    b = sym;
  }
  step(kEnd);
  return logp;
}

double NGramModel::Probability(std::string_view password) const {
  return std::exp(LogProbability(password));
}

std::string NGramModel::Sample(std::mt19937_64& rng) const {
  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::string out;
    int a = kStart, b = kStart;
    bool too_long = false;
    for (;;) {
      const ContextKey key = MakeContext(a, b);
      double u = UnitUniform(rng);
      int sym = kSymbols - 1;
      double acc = 0;
      for (int s = 0; s < kSymbols; ++s) {
        acc += Conditional(key, s);
        if (u < acc) {
          sym = s;
          break;
        }
      }
      if (sym == kEnd) break;
      if (out.size() == kMaxSampleLength) {
        too_long = true;
        break;
      }
      out.push_back(static_cast<char>(sym + 0x20));
      a = b;
      b = sym;
    }
    if (!too_long) return out;
  }
  throw Error("n-gram sampling failed to terminate");
}

}  // namespace c3::distest
