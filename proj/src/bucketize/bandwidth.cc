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

#include "c3/bucketize/bandwidth.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace c3::bucketize {

double HpbBandwidthBound(uint64_t count, unsigned bits) {
  return 2.0 * static_cast<double>(count) / std::ldexp(1.0, static_cast<int>(bits));
}

double FsbBandwidthBound(const FsbParams& params, uint64_t count) {
  ValidateFsbParams(params);
  return 2.0 * (static_cast<double>(params.q_bar) + 1.0 / params.p_qbar +
                static_cast<double>(count) /
                    static_cast<double>(params.num_buckets));
}

size_t HpbMaxBucketLoad(std::span<const std::string> inputs,
                        const HpbParams& params) {
  std::unordered_map<BucketId, size_t> load;
  size_t best = 0;
  for (const auto& s : inputs) best = std::max(best, ++load[HpbBucket(s, params)]);
  return best;
}

}  // namespace c3::bucketize
