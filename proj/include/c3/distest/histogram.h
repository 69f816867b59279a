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

#ifndef C3_DISTEST_HISTOGRAM_H_
#define C3_DISTEST_HISTOGRAM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "c3/core/credential.h"

namespace c3::distest {

struct HistogramEntry {
  std::string password;
  uint64_t count = 0;
  double probability = 0;
};

// Empirical distribution restricted to the `t` most frequent passwords.
// Probabilities are count / total count of the whole corpus, so the head mass
// is below 1 whenever the corpus has more than `t` distinct passwords.
class HistogramModel {
 public:
  HistogramModel() = default;

  // Ties on count are broken by lexicographic password order. Throws
  // InvalidArgument on an empty corpus or t == 0.
  static HistogramModel Train(const std::map<std::string, uint64_t>& counts,
                              size_t t);
  static HistogramModel Train(const LeakDataset& dataset, size_t t) {
    return Train(dataset.password_counts(), t);
  }

  // Rebuilds from stored entries (count descending) and the corpus total.
  static HistogramModel FromEntries(std::vector<HistogramEntry> entries,
                                    uint64_t total_count);

  const std::vector<HistogramEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  uint64_t total_count() const { return total_; }
  double head_mass() const { return head_mass_; }

  std::optional<double> Lookup(std::string_view password) const;

 private:
  void Index();

  std::vector<HistogramEntry> entries_;
  std::unordered_map<std::string, size_t> index_;
  uint64_t total_ = 0;
  double head_mass_ = 0;
};

}  // namespace c3::distest

#endif  // C3_DISTEST_HISTOGRAM_H_
