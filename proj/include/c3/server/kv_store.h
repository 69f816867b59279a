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

#ifndef C3_SERVER_KV_STORE_H_
#define C3_SERVER_KV_STORE_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace c3::server {

using KvVisitor =
    std::function<void(std::string_view key, std::string_view value)>;

// Read side of an ordered key -> value map with prefix scans. Implementations
// are immutable once opened and safe for concurrent readers.
class KvStore {
 public:
  virtual ~KvStore() = default;

  virtual std::optional<std::string> Get(std::string_view key) const = 0;
  // Visits every entry whose key starts with `prefix`, in key order.
  virtual void ScanPrefix(std::string_view prefix,
                          const KvVisitor& visit) const = 0;
  virtual size_t size() const = 0;

  // Store-level metadata (prefix length, algorithm, ...).
  virtual std::optional<std::string> Meta(std::string_view key) const = 0;

  void ForEach(const KvVisitor& visit) const { ScanPrefix("", visit); }
};

// Write side. Keys are unique; Finish() publishes the store.
class KvWriter {
 public:
  virtual ~KvWriter() = default;
  // Throws InvalidArgument on a duplicate key.
  virtual void Put(std::string_view key, std::string_view value) = 0;
  virtual void SetMeta(std::string_view key, std::string_view value) = 0;
  virtual void Finish() = 0;
};

class MemoryKvStore : public KvStore, public KvWriter {
 public:
  std::optional<std::string> Get(std::string_view key) const override;
  void ScanPrefix(std::string_view prefix,
                  const KvVisitor& visit) const override;
  size_t size() const override { return entries_.size(); }
  std::optional<std::string> Meta(std::string_view key) const override;

  void Put(std::string_view key, std::string_view value) override;
  void SetMeta(std::string_view key, std::string_view value) override;
  void Finish() override {}

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::map<std::string, std::string, std::less<>> meta_;
};

// Single-file engine. Layout (little-endian, documented in docs/formats.md):
//   "C3KV" u32 version
//   u32 meta_count  { u32 klen key u32 vlen value }*
//   u64 record_count { u32 klen key u32 vlen value }*   (ascending keys)
//   32-byte SHA-256 of everything above
// Entries are buffered and sorted at Finish(); the file is written next to
// its destination and renamed into place, so readers never observe a
// partially written store.
class SortedFileKvWriter : public KvWriter {
 public:
  explicit SortedFileKvWriter(std::filesystem::path path);

  void Put(std::string_view key, std::string_view value) override;
  void SetMeta(std::string_view key, std::string_view value) override;
  void Finish() override;

 private:
  std::filesystem::path path_;
  std::map<std::string, std::string, std::less<>> entries_;
  std::map<std::string, std::string, std::less<>> meta_;
  bool finished_ = false;
};

class SortedFileKvStore : public KvStore {
 public:
  // Loads and verifies the checksum; throws ParseError on corruption.
  static std::unique_ptr<SortedFileKvStore> Open(
      const std::filesystem::path& path);

  std::optional<std::string> Get(std::string_view key) const override;
  void ScanPrefix(std::string_view prefix,
                  const KvVisitor& visit) const override;
  size_t size() const override { return records_.size(); }
  std::optional<std::string> Meta(std::string_view key) const override;

 private:
  struct Record {
    std::string_view key;
    std::string_view value;
  };

  SortedFileKvStore() = default;

  std::string buffer_;
  std::vector<Record> records_;
  std::map<std::string, std::string, std::less<>> meta_;
};

// Writes `contents` to `path` atomically (temp file + rename).
void AtomicWriteFile(const std::filesystem::path& path,
                     std::string_view contents);

}  // namespace c3::server

#endif  // C3_SERVER_KV_STORE_H_
