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

#ifndef C3_BUCKETIZE_HPB_H_
#define C3_BUCKETIZE_HPB_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "c3/core/credential.h"
#include "c3/core/password_hash.h"

namespace c3::bucketize {

using BucketId = uint64_t;

struct HpbParams {
  // Prefix length in bits.
  unsigned bits = 20;
  HashAlgorithm algorithm = HashAlgorithm::kSha1;
  // Prepended to the input before hashing; empty means unsalted.
  std::string salt;
};

// Throws ConfigError unless 1 <= bits <= digest bits.
void ValidateHpbParams(const HpbParams& params);

// First `bits` bits of H(salt || input), as an integer. Throws ConfigError
// when bits > 64; use HpbBucketBits for longer prefixes.
BucketId HpbBucket(std::string_view input, const HpbParams& params);

// The same prefix as a '0'/'1' string, valid for any bit length.
std::string HpbBucketBits(std::string_view input, const HpbParams& params);

// Password-only credentials hash w; pairs hash the u||w serialization.
BucketId HpbBucket(const Credential& credential, const HpbParams& params);

// Bucket of the username alone, independent of any password.
BucketId IdbBucket(std::string_view username, const HpbParams& params);

inline uint64_t HpbBucketCount(const HpbParams& params) {
  return params.bits >= 64 ? 0 : uint64_t{1} << params.bits;
}

}  // namespace c3::bucketize

#endif  // C3_BUCKETIZE_HPB_H_
