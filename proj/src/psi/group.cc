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

#include "c3/psi/group.h"

#include <sodium.h>

#include <algorithm>
#include <mutex>

#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::psi {

void EnsureCryptoInit() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error("libsodium initialization failed");
  });
}

Scalar Scalar::Random() {
  EnsureCryptoInit();
  Scalar s;
  crypto_core_ristretto255_scalar_random(s.bytes_.data());
  return s;
}

Scalar Scalar::Random(std::mt19937_64& rng) {
  for (;;) {
    std::array<uint8_t, 64> wide;
    for (size_t i = 0; i < wide.size(); i += 8) {
      uint64_t v = rng();
      for (int j = 0; j < 8; ++j) wide[i + j] = static_cast<uint8_t>(v >> (8 * j));
    }
    Scalar s = Reduce(wide);
    if (!s.IsZero()) return s;
  }
}

Scalar Scalar::FromUint64(uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.bytes_[i] = static_cast<uint8_t>(v >> (8 * i));
  return s;
}

Scalar Scalar::FromBytes(std::span<const uint8_t> bytes) {
  if (bytes.size() != kScalarSize) {
    throw InvalidArgument("scalar must be 32 bytes");
  }
  std::array<uint8_t, 64> wide{};
  std::copy(bytes.begin(), bytes.end(), wide.begin());
  Scalar s = Reduce(wide);
  if (!std::equal(bytes.begin(), bytes.end(), s.bytes_.begin())) {
    throw InvalidArgument("scalar encoding is not reduced");
  }
  return s;
}

Scalar Scalar::Reduce(std::span<const uint8_t, 64> wide) {
  EnsureCryptoInit();
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide.data());
  return s;
}

Scalar Scalar::Multiply(const Scalar& other) const {
  Scalar s;
  crypto_core_ristretto255_scalar_mul(s.bytes_.data(), bytes_.data(),
                                      other.bytes_.data());
  return s;
}

Scalar Scalar::Inverse() const {
  Scalar s;
  if (crypto_core_ristretto255_scalar_invert(s.bytes_.data(), bytes_.data()) !=
      0) {
    throw InvalidArgument("zero scalar has no inverse");
  }
  return s;
}

bool Scalar::IsZero() const {
  return sodium_is_zero(bytes_.data(), bytes_.size()) == 1;
}

std::string Scalar::Hex() const { return ToHex(bytes_); }

Element Element::FromBytes(std::span<const uint8_t> bytes) {
  EnsureCryptoInit();
  if (bytes.size() != kElementSize) {
    throw ProtocolError("group element must be 32 bytes, got " +
                        std::to_string(bytes.size()));
  }
  if (sodium_is_zero(bytes.data(), bytes.size()) == 1) {
    throw ProtocolError("identity element rejected");
  }
  if (crypto_core_ristretto255_is_valid_point(bytes.data()) != 1) {
    throw ProtocolError("invalid group element encoding");
  }
  Element e;
  std::copy(bytes.begin(), bytes.end(), e.bytes_.begin());
  return e;
}

Element Element::FromHex(std::string_view hex) {
  auto raw = c3::FromHex(hex);
  if (!raw) throw ProtocolError("group element is not hex");
  return FromBytes(*raw);
}

Element Element::FromHash(std::span<const uint8_t, kHashInputSize> digest) {
  EnsureCryptoInit();
  Element e;
  crypto_core_ristretto255_from_hash(e.bytes_.data(), digest.data());
  if (sodium_is_zero(e.bytes_.data(), e.bytes_.size()) == 1) {
    throw Error("hash mapped to the identity");
  }
  return e;
}

Element Element::Generator() {
  EnsureCryptoInit();
  Element e;
  const Scalar one = Scalar::FromUint64(1);
  if (crypto_scalarmult_ristretto255_base(e.bytes_.data(),
                                          one.bytes().data()) != 0) {
    throw Error("generator computation failed");
  }
  return e;
}

Element Element::Exp(const Scalar& k) const {
  if (k.IsZero()) throw InvalidArgument("exponent must be nonzero");
  Element e;
  if (crypto_scalarmult_ristretto255(e.bytes_.data(), k.bytes().data(),
                                     bytes_.data()) != 0) {
    throw ProtocolError("exponentiation produced the identity");
  }
  return e;
}

std::string Element::Hex() const { return ToHex(bytes_); }

}  // namespace c3::psi
