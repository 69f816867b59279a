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

#include "c3/server/kv_store.h"

#include <algorithm>
#include <cstring>
#include <sstream>

#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::server {

namespace {

constexpr char kMagic[4] = {'C', '3', 'K', 'V'};
constexpr uint32_t kVersion = 1;

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void PutU64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void PutString(std::string& out, std::string_view s) {
  PutU32(out, static_cast<uint32_t>(s.size()));
  out.append(s);
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  uint64_t Uint(int bytes) {
    Need(bytes);
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<uint64_t>(static_cast<uint8_t>(data_[pos_ + i]))
           << (8 * i);
    }
    pos_ += bytes;
    return v;
  }

  std::string_view String() {
    auto len = static_cast<size_t>(Uint(4));
    Need(len);
    std::string_view s = data_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  std::string_view Raw(size_t len) {
    Need(len);
    std::string_view s = data_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  size_t pos() const { return pos_; }

 private:
  void Need(size_t n) const {
    if (pos_ + n > data_.size()) throw ParseError("kv store: truncated file");
  }
  std::string_view data_;
  size_t pos_ = 0;
};

bool HasPrefix(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

void AtomicWriteFile(const std::filesystem::path& path,
                     std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::string> MemoryKvStore::Get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MemoryKvStore::ScanPrefix(std::string_view prefix,
                               const KvVisitor& visit) const {
  for (auto it = entries_.lower_bound(prefix);
       it != entries_.end() && HasPrefix(it->first, prefix); ++it) {
    visit(it->first, it->second);
  }
}

std::optional<std::string> MemoryKvStore::Meta(std::string_view key) const {
  auto it = meta_.find(key);
  if (it == meta_.end()) return std::nullopt;
  return it->second;
}

void MemoryKvStore::Put(std::string_view key, std::string_view value) {
  if (!entries_.emplace(std::string(key), std::string(value)).second) {
    throw InvalidArgument("duplicate key: " + std::string(key));
  }
}

void MemoryKvStore::SetMeta(std::string_view key, std::string_view value) {
  meta_[std::string(key)] = std::string(value);
}

SortedFileKvWriter::SortedFileKvWriter(std::filesystem::path path)
    : path_(std::move(path)) {}

void SortedFileKvWriter::Put(std::string_view key, std::string_view value) {
  if (finished_) throw InvalidArgument("kv writer already finished");
  if (!entries_.emplace(std::string(key), std::string(value)).second) {
    throw InvalidArgument("duplicate key: " + std::string(key));
  }
}

void SortedFileKvWriter::SetMeta(std::string_view key,
                                 std::string_view value) {
  meta_[std::string(key)] = std::string(value);
}

void SortedFileKvWriter::Finish() {
  if (finished_) return;
  std::string out(kMagic, sizeof(kMagic));
  PutU32(out, kVersion);
  PutU32(out, static_cast<uint32_t>(meta_.size()));
  for (const auto& [k, v] : meta_) {
    PutString(out, k);
    PutString(out, v);
  }
  PutU64(out, entries_.size());
  for (const auto& [k, v] : entries_) {
    PutString(out, k);
    PutString(out, v);
  }
  Sha256Digest sum = Sha256(AsBytes(out));
  out.append(reinterpret_cast<const char*>(sum.data()), sum.size());
  AtomicWriteFile(path_, out);
  finished_ = true;
}

std::unique_ptr<SortedFileKvStore> SortedFileKvStore::Open(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open store " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();

  std::unique_ptr<SortedFileKvStore> store(new SortedFileKvStore());
  store->buffer_ = std::move(ss).str();
  std::string_view data = store->buffer_;
  if (data.size() < sizeof(kMagic) + 32 ||
      std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0) {
    throw ParseError(path.string() + ": not a C3 kv store");
  }
  std::string_view body = data.substr(0, data.size() - 32);
  Sha256Digest sum = Sha256(AsBytes(body));
  if (std::memcmp(sum.data(), data.data() + body.size(), 32) != 0) {
    throw ParseError(path.string() + ": checksum mismatch");
  }

  Reader r(body);
  r.Raw(sizeof(kMagic));
  if (r.Uint(4) != kVersion) {
    throw ParseError(path.string() + ": unsupported kv store version");
  }
  auto meta_count = r.Uint(4);
  for (uint64_t i = 0; i < meta_count; ++i) {
    std::string k(r.String());
    std::string v(r.String());
    store->meta_.emplace(std::move(k), std::move(v));
  }
  auto count = r.Uint(8);
  store->records_.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Record rec{r.String(), r.String()};
    if (!store->records_.empty() && !(store->records_.back().key < rec.key)) {
      throw ParseError(path.string() + ": keys out of order");
    }
    store->records_.push_back(rec);
  }
  if (r.pos() != body.size()) {
    throw ParseError(path.string() + ": trailing bytes");
  }
  return store;
}

std::optional<std::string> SortedFileKvStore::Get(std::string_view key) const {
  auto it = std::lower_bound(
      records_.begin(), records_.end(), key,
      [](const Record& r, std::string_view k) { return r.key < k; });
  if (it == records_.end() || it->key != key) return std::nullopt;
  return std::string(it->value);
}

void SortedFileKvStore::ScanPrefix(std::string_view prefix,
                                   const KvVisitor& visit) const {
  auto it = std::lower_bound(
      records_.begin(), records_.end(), prefix,
      [](const Record& r, std::string_view k) { return r.key < k; });
  for (; it != records_.end() && HasPrefix(it->key, prefix); ++it) {
    visit(it->key, it->value);
  }
}

std::optional<std::string> SortedFileKvStore::Meta(std::string_view key) const {
  auto it = meta_.find(key);
  if (it == meta_.end()) return std::nullopt;
  return it->second;
}

}  // namespace c3::server
