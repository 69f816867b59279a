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

#ifndef C3_BUCKETIZE_INTERVAL_TREE_H_
#define C3_BUCKETIZE_INTERVAL_TREE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "c3/core/digest.h"

namespace c3::bucketize {

// A closed range [lo, hi] of bucket ids tagged with the digest it serves.
struct StoredInterval {
  uint64_t lo = 0;
  uint64_t hi = 0;
  Sha256Digest digest{};

  friend bool operator==(const StoredInterval&, const StoredInterval&) = default;
};

// Static max-endpoint-augmented interval tree. Intervals are sorted by lo
// and the array itself is the tree: the node for [l, r) is at (l + r) / 2.
// Every node also records the largest hi in its subtree, which lets a
// stabbing query skip subtrees that end before the point. Query cost is
// O(log n + k).
class IntervalTree {
 public:
  IntervalTree() = default;
  explicit IntervalTree(std::vector<StoredInterval> intervals);

  // Calls `visit` for every interval with lo <= point <= hi.
  void Stab(uint64_t point,
            const std::function<void(const StoredInterval&)>& visit) const;
  std::vector<StoredInterval> Stab(uint64_t point) const;

  size_t size() const { return nodes_.size(); }
  // In lo order.
  const std::vector<StoredInterval>& intervals() const { return nodes_; }

 private:
  uint64_t Augment(size_t l, size_t r);
  void Query(size_t l, size_t r, uint64_t point,
             const std::function<void(const StoredInterval&)>& visit) const;

  std::vector<StoredInterval> nodes_;
  std::vector<uint64_t> subtree_max_hi_;
};

}  // namespace c3::bucketize

#endif  // C3_BUCKETIZE_INTERVAL_TREE_H_
