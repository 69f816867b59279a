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

#include "c3/distest/histogram.h"

#include <algorithm>

#include "c3/core/errors.h"

namespace c3::distest {

HistogramModel HistogramModel::Train(
    const std::map<std::string, uint64_t>& counts, size_t t) {
  if (t == 0) throw InvalidArgument("histogram size t must be >= 1");
  uint64_t total = 0;
  std::vector<HistogramEntry> all;
  all.reserve(counts.size());
  for (const auto& [pw, n] : counts) {
    if (n == 0) continue;
    total += n;
    all.push_back({pw, n, 0});
  }
  if (all.empty()) throw InvalidArgument("histogram of an empty corpus");

  auto by_rank = [](const HistogramEntry& a, const HistogramEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.password < b.password;
  };
  const size_t keep = std::min(t, all.size());
  std::partial_sort(all.begin(), all.begin() + keep, all.end(), by_rank);
  all.resize(keep);
  return FromEntries(std::move(all), total);
}

HistogramModel HistogramModel::FromEntries(std::vector<HistogramEntry> entries,
                                           uint64_t total_count) {
  if (total_count == 0) throw InvalidArgument("histogram total is zero");
  HistogramModel m;
  m.total_ = total_count;
  m.entries_ = std::move(entries);
  for (auto& e : m.entries_) {
    e.probability =
        static_cast<double>(e.count) / static_cast<double>(total_count);
    m.head_mass_ += e.probability;
  }
  m.Index();
  return m;
}

void HistogramModel::Index() {
  index_.clear();
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].password, i).second) {
      throw InvalidArgument("duplicate histogram entry " + entries_[i].password);
    }
  }
}

std::optional<double> HistogramModel::Lookup(std::string_view password) const {
  auto it = index_.find(std::string(password));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].probability;
}

}  // namespace c3::distest
