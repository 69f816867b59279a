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

#include "c3/distest/estimator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/server/kv_store.h"

namespace c3::distest {

namespace {

constexpr char kMagic[4] = {'C', '3', 'E', 'S'};
constexpr size_t kDigestSize = 32;
// magic, version, t, alphabet size, smoothing, tail scale
constexpr size_t kHeaderSize = 4 + 4 + 8 + 4 + 8 + 8;
constexpr double kMassFloor = 1e-12;

class Writer {
 public:
  void U8(uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U16(uint16_t v) { Le(v, 2); }
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Str(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    out_.append(s);
  }
  void Raw(std::string_view s) { out_.append(s); }
  std::string& str() { return out_; }

 private:
  void Le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>(v >> (8 * i)));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  uint8_t U8() { return static_cast<uint8_t>(Le(1)); }
  uint16_t U16() { return static_cast<uint16_t>(Le(2)); }
  uint32_t U32() { return static_cast<uint32_t>(Le(4)); }
  uint64_t U64() { return Le(8); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string_view Raw(size_t n) {
    Need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string Str() { return std::string(Raw(U32())); }
  bool done() const { return pos_ == in_.size(); }

 private:
  void Need(size_t n) const {
    if (pos_ + n > in_.size()) throw ParseError("estimator: truncated artifact");
  }
  uint64_t Le(int n) {
    Need(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<uint8_t>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += n;
    return v;
  }
  std::string_view in_;
  size_t pos_ = 0;
};

// Header and body without the digest; the digest is spliced in afterwards.
std::string EncodeSections(const HybridEstimator& e, std::string* header) {
  Writer h;
  h.Raw(std::string_view(kMagic, sizeof(kMagic)));
  h.U32(HybridEstimator::kFormatVersion);
  h.U64(e.t());
  h.U32(NGramModel::kSymbols);
  h.F64(e.ngram().smoothing());
  h.F64(e.tail_scale());
  *header = std::move(h.str());

  Writer b;
  const auto& hist = e.histogram();
  b.U64(hist.total_count());
  b.U32(static_cast<uint32_t>(hist.size()));
  for (const auto& entry : hist.entries()) {
    b.Str(entry.password);
    b.U64(entry.count);
  }
  const auto& ctx = e.ngram().contexts();
  b.U32(static_cast<uint32_t>(ctx.size()));
  for (const auto& [key, cc] : ctx) {
    b.U32(key);
    b.U64(cc.total);
    uint16_t nnz = 0;
    for (uint64_t c : cc.next) nnz += c != 0;
    b.U16(nnz);
    for (int s = 0; s < NGramModel::kSymbols; ++s) {
      if (cc.next[s] == 0) continue;
      b.U8(static_cast<uint8_t>(s));
      b.U64(cc.next[s]);
    }
  }
  return std::move(b.str());
}

}  // namespace

HybridEstimator HybridEstimator::Train(
    const std::map<std::string, uint64_t>& counts,
    const EstimatorOptions& options) {
  return FromParts(HistogramModel::Train(counts, options.t),
                   NGramModel::Train(counts, options.smoothing), options.t);
}

HybridEstimator HybridEstimator::FromParts(HistogramModel histogram,
                                           NGramModel ngram, size_t t) {
  HybridEstimator e;
  e.histogram_ = std::move(histogram);
  e.ngram_ = std::move(ngram);
  e.t_ = t;
  e.Finalize();
  return e;
}

void HybridEstimator::Finalize() {
  head_ngram_mass_ = 0;
  for (const auto& entry : histogram_.entries()) {
    head_ngram_mass_ += ngram_.Probability(entry.password);
  }
  tail_scale_ = std::max(1.0 - histogram_.head_mass(), kMassFloor) /
                std::max(1.0 - head_ngram_mass_, kMassFloor);
  std::string header;
  std::string body = EncodeSections(*this, &header);
  digest_ = ToHex(Sha256Concat({header, body}));
}

double HybridEstimator::Estimate(std::string_view password) const {
  if (auto p = histogram_.Lookup(password)) return *p;
  return tail_scale_ * ngram_.Probability(password);
}

std::vector<std::string> HybridEstimator::TopQ(size_t q) const {
  if (q > histogram_.size()) {
    throw InvalidArgument("top-" + std::to_string(q) + " exceeds the head (" +
                          std::to_string(histogram_.size()) +
                          "); supply an enumeration domain");
  }
  std::vector<std::string> out;
  out.reserve(q);
  for (size_t i = 0; i < q; ++i) out.push_back(histogram_.entries()[i].password);
  return out;
}

std::vector<std::string> HybridEstimator::TopQ(
    size_t q, std::span<const std::string> domain) const {
  std::vector<std::pair<double, std::string>> ranked;
  ranked.reserve(domain.size());
  for (const auto& w : domain) ranked.emplace_back(Estimate(w), w);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  ranked.erase(std::unique(ranked.begin(), ranked.end(),
                           [](const auto& a, const auto& b) {
                             return a.second == b.second;
                           }),
               ranked.end());
  if (q > ranked.size()) {
    throw InvalidArgument("top-" + std::to_string(q) +
                          " exceeds the enumeration domain");
  }
  std::vector<std::string> out;
  out.reserve(q);
  for (size_t i = 0; i < q; ++i) out.push_back(std::move(ranked[i].second));
  return out;
}

std::vector<std::string> HybridEstimator::Sample(size_t count,
                                                 uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) out.push_back(ngram_.Sample(rng));
  return out;
}

std::string HybridEstimator::Serialize() const {
  std::string header;
  std::string body = EncodeSections(*this, &header);
  Bytes digest_bytes = *FromHex(digest_);
  std::string out = header;
  out.append(reinterpret_cast<const char*>(digest_bytes.data()),
             digest_bytes.size());
  out += body;
  return out;
}

HybridEstimator HybridEstimator::Deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (r.Raw(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw ParseError("estimator: bad magic");
  }
  if (r.U32() != kFormatVersion) {
    throw ParseError("estimator: unsupported artifact version");
  }
  const uint64_t t = r.U64();
  if (r.U32() != NGramModel::kSymbols) {
    throw ParseError("estimator: alphabet size mismatch");
  }
  const double smoothing = r.F64();
  const double stored_tail_scale = r.F64();
  std::string_view stored_digest = r.Raw(kDigestSize);
  std::string_view body = bytes.substr(kHeaderSize + kDigestSize);
  Sha256Digest actual = Sha256Concat({bytes.substr(0, kHeaderSize), body});
  if (std::memcmp(actual.data(), stored_digest.data(), kDigestSize) != 0) {
    throw ParseError("estimator: content digest mismatch");
  }

  const uint64_t total = r.U64();
  const uint32_t head_size = r.U32();
  std::vector<HistogramEntry> entries;
  entries.reserve(head_size);
  for (uint32_t i = 0; i < head_size; ++i) {
    HistogramEntry e;
    e.password = r.Str();
    e.count = r.U64();
    entries.push_back(std::move(e));
  }
  std::map<NGramModel::ContextKey, NGramModel::ContextCounts> ctx;
  const uint32_t nctx = r.U32();
  for (uint32_t i = 0; i < nctx; ++i) {
    const auto key = r.U32();
    NGramModel::ContextCounts cc;
    cc.total = r.U64();
    const uint16_t nnz = r.U16();
    for (uint16_t j = 0; j < nnz; ++j) {
      const uint8_t sym = r.U8();
      if (sym >= NGramModel::kSymbols) throw ParseError("estimator: bad symbol");
      cc.next[sym] = r.U64();
    }
    ctx.emplace(key, cc);
  }
  if (!r.done()) throw ParseError("estimator: trailing bytes");

  HybridEstimator e = FromParts(
      HistogramModel::FromEntries(std::move(entries), total),
      NGramModel::FromCounts(std::move(ctx), smoothing), t);
  if (e.tail_scale_ != stored_tail_scale) {
    throw ParseError("estimator: tail scale does not match its tables");
  }
  return e;
}

void HybridEstimator::Save(const std::filesystem::path& path) const {
  server::AtomicWriteFile(path, Serialize());
}

HybridEstimator HybridEstimator::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open estimator " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Deserialize(ss.str());
}

}  // namespace c3::distest
