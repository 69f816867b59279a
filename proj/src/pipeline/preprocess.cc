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

#include "c3/pipeline/preprocess.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "c3/core/errors.h"

namespace c3::pipeline {

VectorHashSource::VectorHashSource(std::vector<PasswordHash> hashes,
                                   bool sorted)
    : hashes_(std::move(hashes)), sorted_(sorted) {
  if (sorted_) {
    for (size_t i = 1; i < hashes_.size(); ++i) {
      if (!(hashes_[i - 1] < hashes_[i])) {
        throw InvalidArgument("VectorHashSource: input is not strictly sorted");
      }
    }
  }
}

std::optional<PasswordHash> VectorHashSource::Next() {
  if (pos_ >= hashes_.size()) return std::nullopt;
  return hashes_[pos_++];
}

LineHashSource::LineHashSource(std::istream& in, bool sorted,
                               MalformedPolicy policy)
    : in_(in), sorted_(sorted), policy_(policy) {}

std::optional<PasswordHash> LineHashSource::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto parsed = PasswordHash::TryParse(line);
    if (parsed && algorithm_ && parsed->algorithm() != *algorithm_) {
      parsed.reset();
    }
    if (!parsed) {
      if (policy_ == MalformedPolicy::kLenient) {
        ++skipped_;
        continue;
      }
      throw ParseError("line " + std::to_string(line_) +
                       ": malformed digest '" + line + "'");
    }
    algorithm_ = parsed->algorithm();
    if (sorted_ && last_ && !(*last_ < *parsed)) {
      throw ParseError("line " + std::to_string(line_) +
                       ": input is not sorted and unique");
    }
    if (sorted_) last_ = *parsed;
    return parsed;
  }
  return std::nullopt;
}

FileHashSource::FileHashSource(const std::filesystem::path& path, bool sorted,
                               MalformedPolicy policy)
    : file_(path) {
  if (!file_) throw ConfigError("cannot open " + path.string());
  source_ = std::make_unique<LineHashSource>(file_, sorted, policy);
}

namespace {

// Removes the spill directory on scope exit.
class ScratchDir {
 public:
  explicit ScratchDir(const std::filesystem::path& parent) {
    std::random_device rd;
    std::mt19937_64 rng(rd());
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto candidate =
          parent / ("c3-sort-" + std::to_string(rng() & 0xffffffffffULL));
      if (std::filesystem::create_directory(candidate)) {
        path_ = candidate;
        return;
      }
    }
    throw Error("cannot create scratch directory under " + parent.string());
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

void SortUnique(std::vector<std::string>& chunk) {
  std::sort(chunk.begin(), chunk.end());
  chunk.erase(std::unique(chunk.begin(), chunk.end()), chunk.end());
}

}  // namespace

PreprocessStats Preprocess(std::istream& in, std::ostream& out,
                           const PreprocessOptions& options) {
  PreprocessStats stats;
  LineHashSource source(in, /*sorted=*/false, options.malformed);
  const size_t chunk_limit = std::max<size_t>(options.chunk_entries, 1);

  std::optional<ScratchDir> scratch;
  std::vector<std::filesystem::path> runs;
  std::vector<std::string> chunk;

  auto spill = [&] {
    SortUnique(chunk);
    if (!scratch) scratch.emplace(options.temp_dir);
    auto path = scratch->path() / ("run-" + std::to_string(runs.size()));
    std::ofstream run(path);
    for (const auto& h : chunk) run << h << '\n';
    if (!run) throw Error("failed writing sort run " + path.string());
    runs.push_back(path);
    chunk.clear();
  };

  while (auto h = source.Next()) {
    ++stats.lines_read;
    chunk.push_back(h->hex());
    if (chunk.size() >= chunk_limit) spill();
  }
  stats.skipped = source.skipped();
  stats.lines_read += stats.skipped;

  if (runs.empty()) {
    SortUnique(chunk);
    for (const auto& h : chunk) out << h << '\n';
    stats.unique_written = chunk.size();
    return stats;
  }
  if (!chunk.empty()) spill();
  stats.runs_spilled = runs.size();

  // k-way merge; duplicates across runs are dropped against the last output.
  std::vector<std::ifstream> readers;
  readers.reserve(runs.size());
  for (const auto& p : runs) readers.emplace_back(p);
  using Head = std::pair<std::string, size_t>;
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
  for (size_t i = 0; i < readers.size(); ++i) {
    std::string line;
    if (std::getline(readers[i], line)) heap.emplace(std::move(line), i);
  }
  std::string last;
  while (!heap.empty()) {
    auto [digest, idx] = heap.top();
    heap.pop();
    if (digest != last) {
      out << digest << '\n';
      ++stats.unique_written;
      last = digest;
    }
    std::string line;
    if (std::getline(readers[idx], line)) heap.emplace(std::move(line), idx);
  }
  return stats;
}

std::vector<PasswordHash> PreprocessToVector(std::istream& in,
                                             const PreprocessOptions& options) {
  std::stringstream buffer;
  Preprocess(in, buffer, options);
  std::vector<PasswordHash> out;
  LineHashSource sorted(buffer, /*sorted=*/true);
  while (auto h = sorted.Next()) out.push_back(std::move(*h));
  return out;
}

}  // namespace c3::pipeline
