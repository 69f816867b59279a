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

#ifndef C3_CORE_PASSWORD_HASH_H_
#define C3_CORE_PASSWORD_HASH_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace c3 {

enum class HashAlgorithm { kSha1, kSha256 };

std::string_view AlgorithmName(HashAlgorithm alg);

// Accepts "sha1"/"SHA1"/"sha-1" and the SHA-256 equivalents. Throws
// ConfigError for anything else.
HashAlgorithm ParseAlgorithm(std::string_view tag);

// Digest length in hex characters (40 for SHA-1, 64 for SHA-256).
size_t DigestHexLength(HashAlgorithm alg);

// A full unsalted digest in canonical uppercase hex. Ordering is plain
// lexicographic order of the hex string, which equals raw byte order.
class PasswordHash {
 public:
  // Accepts either case; throws ParseError unless `hex` is exactly
  // DigestHexLength(alg) hex characters.
  static PasswordHash FromHex(std::string_view hex, HashAlgorithm alg);

  // Infers the algorithm from the length. Returns nullopt when malformed.
  static std::optional<PasswordHash> TryParse(std::string_view hex);

  const std::string& hex() const { return digest_; }
  HashAlgorithm algorithm() const { return algorithm_; }
  size_t length() const { return digest_.size(); }

  friend bool operator==(const PasswordHash& a, const PasswordHash& b) {
    return a.digest_ == b.digest_;
  }
  friend std::strong_ordering operator<=>(const PasswordHash& a,
                                          const PasswordHash& b) {
    return a.digest_ <=> b.digest_;
  }

 private:
  PasswordHash(std::string digest, HashAlgorithm alg)
      : digest_(std::move(digest)), algorithm_(alg) {}

  std::string digest_;
  HashAlgorithm algorithm_ = HashAlgorithm::kSha1;
};

// The leading L hex characters of some digest (4*L bits).
class HashPrefix {
 public:
  HashPrefix() = default;

  // Accepts either case; throws ParseError on non-hex characters.
  static HashPrefix FromHex(std::string_view hex);

  const std::string& hex() const { return prefix_; }
  size_t length() const { return prefix_.size(); }

  bool Matches(const PasswordHash& h) const {
    return std::string_view(h.hex()).starts_with(prefix_);
  }

  friend bool operator==(const HashPrefix&, const HashPrefix&) = default;
  friend auto operator<=>(const HashPrefix&, const HashPrefix&) = default;

 private:
  explicit HashPrefix(std::string prefix) : prefix_(std::move(prefix)) {}
  friend HashPrefix Truncate(const PasswordHash& h, size_t length);

  std::string prefix_;
};

// Unsalted digest of `plaintext`.
PasswordHash HashPassword(std::string_view plaintext, HashAlgorithm alg);
PasswordHash HashPassword(std::string_view plaintext, std::string_view tag);

// Length of the longest common leading substring, in hex characters.
// Throws InvalidArgument when the algorithms differ.
size_t SimilarPrefix(const PasswordHash& a, const PasswordHash& b);

// Throws InvalidArgument unless length <= h.length().
HashPrefix Truncate(const PasswordHash& h, size_t length);

}  // namespace c3

#endif  // C3_CORE_PASSWORD_HASH_H_
