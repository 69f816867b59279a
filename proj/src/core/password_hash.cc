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

#include "c3/core/password_hash.h"

#include <algorithm>
#include <cctype>

#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3 {

std::string_view AlgorithmName(HashAlgorithm alg) {
  switch (alg) {
    case HashAlgorithm::kSha1:
      return "sha1";
    case HashAlgorithm::kSha256:
      return "sha256";
  }
  return "unknown";
}

HashAlgorithm ParseAlgorithm(std::string_view tag) {
  std::string lower(tag);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "sha1" || lower == "sha-1") return HashAlgorithm::kSha1;
  if (lower == "sha256" || lower == "sha-256") return HashAlgorithm::kSha256;
  throw ConfigError("unknown hash algorithm: " + std::string(tag));
}

size_t DigestHexLength(HashAlgorithm alg) {
  return alg == HashAlgorithm::kSha1 ? 40 : 64;
}

PasswordHash PasswordHash::FromHex(std::string_view hex, HashAlgorithm alg) {
  if (hex.size() != DigestHexLength(alg) || !IsHexString(hex)) {
    throw ParseError("not a " + std::string(AlgorithmName(alg)) +
                     " digest: '" + std::string(hex) + "'");
  }
  return PasswordHash(ToUpperHex(hex), alg);
}

std::optional<PasswordHash> PasswordHash::TryParse(std::string_view hex) {
  if (!IsHexString(hex)) return std::nullopt;
  if (hex.size() == 40) return PasswordHash(ToUpperHex(hex), HashAlgorithm::kSha1);
  if (hex.size() == 64) {
    return PasswordHash(ToUpperHex(hex), HashAlgorithm::kSha256);
  }
  return std::nullopt;
}

HashPrefix HashPrefix::FromHex(std::string_view hex) {
  if (!IsHexString(hex)) {
    throw ParseError("not a hex prefix: '" + std::string(hex) + "'");
  }
  return HashPrefix(ToUpperHex(hex));
}

PasswordHash HashPassword(std::string_view plaintext, HashAlgorithm alg) {
  switch (alg) {
    case HashAlgorithm::kSha1:
      return PasswordHash::FromHex(ToHex(Sha1(AsBytes(plaintext))), alg);
    case HashAlgorithm::kSha256:
      return PasswordHash::FromHex(ToHex(Sha256(AsBytes(plaintext))), alg);
  }
  throw ConfigError("unknown hash algorithm");
}

PasswordHash HashPassword(std::string_view plaintext, std::string_view tag) {
  return HashPassword(plaintext, ParseAlgorithm(tag));
}

size_t SimilarPrefix(const PasswordHash& a, const PasswordHash& b) {
  if (a.algorithm() != b.algorithm()) {
    throw InvalidArgument("SimilarPrefix: digests use different algorithms");
  }
  auto [ia, ib] = std::mismatch(a.hex().begin(), a.hex().end(),
                                b.hex().begin(), b.hex().end());
  return static_cast<size_t>(ia - a.hex().begin());
}

HashPrefix Truncate(const PasswordHash& h, size_t length) {
  if (length > h.length()) {
    throw InvalidArgument("Truncate: length " + std::to_string(length) +
                          " exceeds digest length " +
                          std::to_string(h.length()));
  }
  return HashPrefix(h.hex().substr(0, length));
}

}  // namespace c3
