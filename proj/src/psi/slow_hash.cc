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

#include "c3/psi/slow_hash.h"

#include <sodium.h>

#include <charconv>

#include "c3/core/errors.h"

namespace c3::psi {

namespace {

// Fixed domain-separation salt; every deployment must agree on it.
constexpr std::array<uint8_t, crypto_pwhash_argon2id_SALTBYTES> kSalt = {
    'c', '3', '-', 'p', 's', 'i', '-', 'h', '2', 'g', '-', 's', 'a', 'l', 't',
    '1'};

}  // namespace

SlowHashProfile SlowHashProfile::Named(std::string_view name) {
  if (name == "test") return Test();
  if (name == "production") return Production();
  // "argon2id:<opslimit>:<memlimit>", as printed by ProfileName.
  constexpr std::string_view kCustom = "argon2id:";
  if (name.starts_with(kCustom)) {
    std::string_view rest = name.substr(kCustom.size());
    auto colon = rest.find(':');
    SlowHashProfile p;
    if (colon != std::string_view::npos) {
      auto ops = rest.substr(0, colon);
      auto mem = rest.substr(colon + 1);
      auto r1 = std::from_chars(ops.data(), ops.data() + ops.size(), p.opslimit);
      auto r2 = std::from_chars(mem.data(), mem.data() + mem.size(), p.memlimit);
      if (r1.ec == std::errc() && r1.ptr == ops.data() + ops.size() &&
          r2.ec == std::errc() && r2.ptr == mem.data() + mem.size() &&
          p.opslimit >= crypto_pwhash_argon2id_OPSLIMIT_MIN &&
          p.memlimit >= crypto_pwhash_argon2id_MEMLIMIT_MIN) {
        return p;
      }
    }
  }
  throw ConfigError("unknown slow-hash profile '" + std::string(name) + "'");
}

std::string ProfileName(const SlowHashProfile& profile) {
  if (profile == SlowHashProfile::Test()) return "test";
  if (profile == SlowHashProfile::Production()) return "production";
  return "argon2id:" + std::to_string(profile.opslimit) + ":" +
         std::to_string(profile.memlimit);
}

std::array<uint8_t, kHashInputSize> SlowHash(std::span<const uint8_t> input,
                                             const SlowHashProfile& profile) {
  EnsureCryptoInit();
  std::array<uint8_t, kHashInputSize> out;
  if (crypto_pwhash(out.data(), out.size(),
                    reinterpret_cast<const char*>(input.data()), input.size(),
                    kSalt.data(), profile.opslimit, profile.memlimit,
                    crypto_pwhash_ALG_ARGON2ID13) != 0) {
    throw ConfigError("Argon2id failed (opslimit " +
                      std::to_string(profile.opslimit) + ", memlimit " +
                      std::to_string(profile.memlimit) + ")");
  }
  return out;
}

}  // namespace c3::psi
