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

#ifndef C3_PSI_SLOW_HASH_H_
#define C3_PSI_SLOW_HASH_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "c3/psi/group.h"

namespace c3::psi {

// Argon2id cost (always one lane).
struct SlowHashProfile {
  uint64_t opslimit = 3;
  size_t memlimit = size_t{256} << 20;

  // Minimum cost, for test suites.
  static SlowHashProfile Test() { return {1, 8192}; }
  static SlowHashProfile Production() { return {}; }
  // "test", "production" or "argon2id:<opslimit>:<memlimit>"; throws
  // ConfigError otherwise.
  static SlowHashProfile Named(std::string_view name);

  friend bool operator==(const SlowHashProfile&, const SlowHashProfile&) =
      default;
};

std::string ProfileName(const SlowHashProfile& profile);

// 64-byte Argon2id digest of `input` under a fixed domain salt.
std::array<uint8_t, kHashInputSize> SlowHash(std::span<const uint8_t> input,
                                             const SlowHashProfile& profile);

}  // namespace c3::psi

#endif  // C3_PSI_SLOW_HASH_H_
