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

#include "c3/pipeline/prefix_length.h"

#include <algorithm>
#include <exception>
#include <thread>

#include "c3/core/errors.h"
#include "c3/pipeline/bounded_queue.h"

namespace c3::pipeline {

PrefixLengthResult ComputeMinPrefixLength(HashSource& source,
                                          const PrefixLengthOptions& options) {
  if (!source.sorted()) {
    throw InvalidArgument("min prefix length requires sorted, unique input");
  }
  const size_t batch_size = std::max<size_t>(options.batch_size, 1);
  BoundedQueue<std::vector<PasswordHash>> channel(
      std::max<size_t>(options.queue_depth / batch_size, 1));

  std::exception_ptr reader_error;
  std::jthread reader([&] {
    try {
      std::vector<PasswordHash> batch;
      batch.reserve(batch_size);
      while (auto h = source.Next()) {
        batch.push_back(std::move(*h));
        if (batch.size() == batch_size) {
          if (!channel.Push(std::move(batch))) return;
          batch = {};
          batch.reserve(batch_size);
        }
      }
      if (!batch.empty()) channel.Push(std::move(batch));
    } catch (...) {
      reader_error = std::current_exception();
    }
    channel.Close();
  });

  PrefixLengthResult result;
  std::optional<PasswordHash> previous;
  // Longest prefix `previous` shares with the digest before it.
  size_t previous_left = 0;
  size_t best = 0;
  try {
    while (auto batch = channel.Pop()) {
      for (PasswordHash& h : *batch) {
        ++result.hashes_scanned;
        if (!previous) {
          best = h.length();
          previous = std::move(h);
          continue;
        }
        size_t right = SimilarPrefix(*previous, h);
        best = std::min(best, std::max(previous_left, right));
        previous_left = right;
        previous = std::move(h);
      }
    }
  } catch (...) {
    channel.Close();
    throw;
  }
  reader.join();
  if (reader_error) std::rethrow_exception(reader_error);

  if (result.hashes_scanned < 3) {
    throw InvalidArgument("min prefix length needs at least 3 hashes, got " +
                          std::to_string(result.hashes_scanned));
  }
  // The last digest only has a left neighbour.
  best = std::min(best, previous_left);
  result.length = best;
  result.peak_batches_queued = channel.peak();
  return result;
}

}  // namespace c3::pipeline
