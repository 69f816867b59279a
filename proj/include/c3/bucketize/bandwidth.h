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

#ifndef C3_BUCKETIZE_BANDWIDTH_H_
#define C3_BUCKETIZE_BANDWIDTH_H_

#include <cstdint>
#include <span>
#include <string>

#include "c3/bucketize/fsb.h"
#include "c3/bucketize/hpb.h"

namespace c3::bucketize {

// High-probability ceiling on the largest bucket when `count` credentials
// are hashed into 2^bits buckets: 2 * N / 2^bits.
double HpbBandwidthBound(uint64_t count, unsigned bits);

// Largest FSB bucket: 2 * (q_bar + 1 / p_qbar + N / |B|).
double FsbBandwidthBound(const FsbParams& params, uint64_t count);

// Largest HPB bucket actually produced by `inputs` (serialized credentials).
size_t HpbMaxBucketLoad(std::span<const std::string> inputs,
                        const HpbParams& params);

}  // namespace c3::bucketize

#endif  // C3_BUCKETIZE_BANDWIDTH_H_
