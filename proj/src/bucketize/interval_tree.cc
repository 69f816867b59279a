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

#include "c3/bucketize/interval_tree.h"

#include <algorithm>

#include "c3/core/errors.h"

namespace c3::bucketize {

IntervalTree::IntervalTree(std::vector<StoredInterval> intervals)
    : nodes_(std::move(intervals)) {
  for (const auto& iv : nodes_) {
    if (iv.lo > iv.hi) throw InvalidArgument("interval with lo > hi");
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const StoredInterval& a, const StoredInterval& b) {
              if (a.lo != b.lo) return a.lo < b.lo;
              if (a.hi != b.hi) return a.hi < b.hi;
              return a.digest < b.digest;
            });
  subtree_max_hi_.assign(nodes_.size(), 0);
  Augment(0, nodes_.size());
}

uint64_t IntervalTree::Augment(size_t l, size_t r) {
  if (l >= r) return 0;
  const size_t m = l + (r - l) / 2;
  uint64_t best = nodes_[m].hi;
  best = std::max(best, Augment(l, m));
  best = std::max(best, Augment(m + 1, r));
  subtree_max_hi_[m] = best;
  return best;
}

void IntervalTree::Query(
    size_t l, size_t r, uint64_t point,
    const std::function<void(const StoredInterval&)>& visit) const {
  if (l >= r) return;
  const size_t m = l + (r - l) / 2;
  if (subtree_max_hi_[m] < point) return;
  Query(l, m, point, visit);
  if (nodes_[m].lo > point) return;  // right subtree starts even later
  if (nodes_[m].hi >= point) visit(nodes_[m]);
  Query(m + 1, r, point, visit);
}

void IntervalTree::Stab(
    uint64_t point,
    const std::function<void(const StoredInterval&)>& visit) const {
  Query(0, nodes_.size(), point, visit);
}

std::vector<StoredInterval> IntervalTree::Stab(uint64_t point) const {
  std::vector<StoredInterval> out;
  Stab(point, [&](const StoredInterval& iv) { out.push_back(iv); });
  return out;
}

}  // namespace c3::bucketize
