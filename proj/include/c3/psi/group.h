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

#ifndef C3_PSI_GROUP_H_
#define C3_PSI_GROUP_H_

#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace c3::psi {

// Prime-order group: ristretto255 (order 2^252 + 27742317777372353535851937790883648493).
inline constexpr size_t kElementSize = 32;
inline constexpr size_t kScalarSize = 32;
inline constexpr size_t kHashInputSize = 64;
inline constexpr std::string_view kGroupName = "ristretto255";

// Initializes libsodium once; safe from any thread.
void EnsureCryptoInit();

// Integer modulo the group order, canonical little-endian encoding.
class Scalar {
 public:
  using Bytes = std::array<uint8_t, kScalarSize>;

  // Uniform over [1, order) from the system CSPRNG.
  static Scalar Random();
  // Uniform over [1, order) from `rng`; for reproducible tests.
  static Scalar Random(std::mt19937_64& rng);
  static Scalar FromUint64(uint64_t v);
  // Throws InvalidArgument unless `bytes` is a canonical encoding.
  static Scalar FromBytes(std::span<const uint8_t> bytes);
  // Reduces 64 bytes modulo the order.
  static Scalar Reduce(std::span<const uint8_t, 64> wide);

  Scalar Multiply(const Scalar& other) const;
  // Throws InvalidArgument for zero.
  Scalar Inverse() const;
  bool IsZero() const;

  const Bytes& bytes() const { return bytes_; }
  std::string Hex() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  Scalar() = default;
  Bytes bytes_{};
};

// A non-identity group element in its canonical 32-byte encoding.
class Element {
 public:
  using Bytes = std::array<uint8_t, kElementSize>;

  // Throws ProtocolError on a non-canonical or identity encoding.
  static Element FromBytes(std::span<const uint8_t> bytes);
  static Element FromHex(std::string_view hex);
  // Maps 64 uniform bytes onto the group.
  static Element FromHash(std::span<const uint8_t, kHashInputSize> digest);
  static Element Generator();

  // this^k, written multiplicatively. Throws InvalidArgument for k = 0.
  Element Exp(const Scalar& k) const;

  const Bytes& bytes() const { return bytes_; }
  // Uppercase hex, the wire form.
  std::string Hex() const;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  Element() = default;
  Bytes bytes_{};
};

}  // namespace c3::psi

#endif  // C3_PSI_GROUP_H_
