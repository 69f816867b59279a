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

#ifndef C3_PSI_OPRF_H_
#define C3_PSI_OPRF_H_

#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "c3/psi/group.h"
#include "c3/psi/slow_hash.h"

namespace c3::psi {

// Argon2id, then the 64-byte digest mapped onto the group.
Element HashToElement(std::string_view input, const SlowHashProfile& profile);

// F_a(x) = HashToElement(x)^a. Throws InvalidArgument for a = 0.
Element Oprf(const Scalar& a, std::string_view input,
             const SlowHashProfile& profile);

class ServerKey {
 public:
  static ServerKey Generate();
  // Throws InvalidArgument for zero or non-canonical scalars.
  static ServerKey FromScalar(const Scalar& k);
  static ServerKey FromHex(std::string_view hex);
  // Key file: one line of scalar hex.
  static ServerKey Load(const std::filesystem::path& path);
  // Writes with owner-only permissions.
  void Save(const std::filesystem::path& path) const;

  const Scalar& scalar() const { return key_; }
  // First 16 hex chars of SHA-256 over the public element g^k.
  const std::string& id() const { return id_; }

 private:
  explicit ServerKey(Scalar k);
  Scalar key_;
  std::string id_;
};

struct BlindedQuery {
  Scalar r;   // stays on the client
  Element x;  // F_r(u || w)
};

// `input` is the serialized credential u || w.
BlindedQuery Blind(std::string_view input, const SlowHashProfile& profile);
BlindedQuery Blind(std::string_view input, const SlowHashProfile& profile,
                   std::mt19937_64& rng);
BlindedQuery BlindWith(std::string_view input, const Scalar& r,
                       const SlowHashProfile& profile);

// y = x^k.
Element ServerEvaluate(const ServerKey& key, const Element& x);

// y^(1/r).
Element Unblind(const Element& y, const Scalar& r);

// Sorted bucket membership.
bool CheckMembership(const Element& candidate,
                     std::span<const Element> sorted_bucket);

}  // namespace c3::psi

#endif  // C3_PSI_OPRF_H_
