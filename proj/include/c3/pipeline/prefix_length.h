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

#ifndef C3_PIPELINE_PREFIX_LENGTH_H_
#define C3_PIPELINE_PREFIX_LENGTH_H_

#include <cstddef>

#include "c3/pipeline/preprocess.h"

namespace c3::pipeline {

struct PrefixLengthOptions {
  // Digests in flight between the reader and the scanner.
  size_t queue_depth = 10000;
  // Digests handed over per queue slot.
  size_t batch_size = 256;
};

struct PrefixLengthResult {
  size_t length = 0;
  size_t hashes_scanned = 0;
  // Peak number of digest batches buffered in the channel.
  size_t peak_batches_queued = 0;
};

// Minimum hash-prefix length at which every prefix bucket still holds at
// least two digests: the minimum over all hashes of the longest prefix the
// hash shares with any other hash. On sorted, unique input that partner is
// always an adjacent element, so a sliding window over three digests
// suffices. A reader thread feeds the scanner through a bounded queue, and
// the scanner keeps only the last two digests.
//
// Throws InvalidArgument if the source is not sorted or yields fewer than
// three digests.
PrefixLengthResult ComputeMinPrefixLength(HashSource& source,
                                          const PrefixLengthOptions& options = {});

inline size_t MinPrefixLength(HashSource& source,
                              const PrefixLengthOptions& options = {}) {
  return ComputeMinPrefixLength(source, options).length;
}

}  // namespace c3::pipeline

#endif  // C3_PIPELINE_PREFIX_LENGTH_H_
