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

#include "c3/bucketize/hpb.h"

#include <vector>

#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::bucketize {

namespace {

std::vector<uint8_t> SaltedDigest(std::string_view input,
                                  const HpbParams& params) {
  std::string data = params.salt;
  data.append(input);
  if (params.algorithm == HashAlgorithm::kSha1) {
    auto d = Sha1(AsBytes(data));
    return {d.begin(), d.end()};
  }
  auto d = Sha256(AsBytes(data));
  return {d.begin(), d.end()};
}

}  // namespace

void ValidateHpbParams(const HpbParams& params) {
  const size_t max_bits = DigestHexLength(params.algorithm) * 4;
  if (params.bits < 1 || params.bits > max_bits) {
    throw ConfigError("prefix bits must be in [1, " + std::to_string(max_bits) +
                      "], got " + std::to_string(params.bits));
  }
}

BucketId HpbBucket(std::string_view input, const HpbParams& params) {
  ValidateHpbParams(params);
  if (params.bits > 64) {
    throw ConfigError("integer bucket ids support at most 64 prefix bits");
  }
  auto digest = SaltedDigest(input, params);
  uint64_t head = 0;
  for (int i = 0; i < 8; ++i) head = (head << 8) | digest[i];
  return params.bits == 64 ? head : head >> (64 - params.bits);
}

std::string HpbBucketBits(std::string_view input, const HpbParams& params) {
  ValidateHpbParams(params);
  auto digest = SaltedDigest(input, params);
  std::string bits;
  bits.reserve(params.bits);
  for (unsigned i = 0; i < params.bits; ++i) {
    bits.push_back((digest[i / 8] >> (7 - i % 8)) & 1 ? '1' : '0');
  }
  return bits;
}

BucketId HpbBucket(const Credential& credential, const HpbParams& params) {
  if (credential.username.empty()) return HpbBucket(credential.password, params);
  return HpbBucket(credential.Serialize(), params);
}

BucketId IdbBucket(std::string_view username, const HpbParams& params) {
  return HpbBucket(username, params);
}

}  // namespace c3::bucketize
