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

#ifndef C3_PIPELINE_PREPROCESS_H_
#define C3_PIPELINE_PREPROCESS_H_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "c3/core/password_hash.h"

namespace c3::pipeline {

enum class MalformedPolicy {
  kStrict,   // throw ParseError naming the line
  kLenient,  // skip the line and count it
};

// Pull-based sequence of digests.
class HashSource {
 public:
  virtual ~HashSource() = default;
  virtual std::optional<PasswordHash> Next() = 0;
  // True when every yielded digest is strictly greater than its predecessor.
  virtual bool sorted() const = 0;
};

class VectorHashSource : public HashSource {
 public:
  // With `sorted` set the contents are checked and InvalidArgument is thrown
  // if they are not strictly ascending.
  VectorHashSource(std::vector<PasswordHash> hashes, bool sorted);

  std::optional<PasswordHash> Next() override;
  bool sorted() const override { return sorted_; }

 private:
  std::vector<PasswordHash> hashes_;
  size_t pos_ = 0;
  bool sorted_;
};

// Newline-separated digests, LF endings, either case. A SortedHashStream is
// a LineHashSource with `sorted` set: ordering is verified while reading and
// a violation raises ParseError with the line number.
class LineHashSource : public HashSource {
 public:
  LineHashSource(std::istream& in, bool sorted,
                 MalformedPolicy policy = MalformedPolicy::kStrict);

  std::optional<PasswordHash> Next() override;
  bool sorted() const override { return sorted_; }

  size_t line_number() const { return line_; }
  size_t skipped() const { return skipped_; }

 private:
  std::istream& in_;
  bool sorted_;
  MalformedPolicy policy_;
  std::optional<PasswordHash> last_;
  std::optional<HashAlgorithm> algorithm_;
  size_t line_ = 0;
  size_t skipped_ = 0;
};

// Owns the file stream behind a LineHashSource.
class FileHashSource : public HashSource {
 public:
  FileHashSource(const std::filesystem::path& path, bool sorted,
                 MalformedPolicy policy = MalformedPolicy::kStrict);

  std::optional<PasswordHash> Next() override { return source_->Next(); }
  bool sorted() const override { return source_->sorted(); }
  size_t skipped() const { return source_->skipped(); }

 private:
  std::ifstream file_;
  std::unique_ptr<LineHashSource> source_;
};

struct PreprocessOptions {
  MalformedPolicy malformed = MalformedPolicy::kStrict;
  // Digests held in memory before a sorted run is spilled to disk.
  size_t chunk_entries = size_t{1} << 20;
  std::filesystem::path temp_dir = std::filesystem::temp_directory_path();
};

struct PreprocessStats {
  size_t lines_read = 0;
  size_t unique_written = 0;
  size_t skipped = 0;
  size_t runs_spilled = 0;
};

// Sorts ascending and removes duplicates, writing one uppercase digest per
// line. Inputs larger than `chunk_entries` go through an external merge sort
// so memory stays bounded by the chunk size.
PreprocessStats Preprocess(std::istream& in, std::ostream& out,
                           const PreprocessOptions& options = {});

// Convenience wrapper for in-memory callers.
std::vector<PasswordHash> PreprocessToVector(
    std::istream& in, const PreprocessOptions& options = {});

}  // namespace c3::pipeline

#endif  // C3_PIPELINE_PREPROCESS_H_
