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

#ifndef C3_CORE_HEX_H_
#define C3_CORE_HEX_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace c3 {

using Bytes = std::vector<uint8_t>;

// Uppercase hex, the canonical textual form for digests and elements.
std::string ToHex(std::span<const uint8_t> bytes);

// Accepts either case. Returns nullopt on odd length or non-hex characters.
std::optional<Bytes> FromHex(std::string_view hex);

bool IsHexString(std::string_view s);

// Uppercases a hex string; non-hex characters are left untouched.
std::string ToUpperHex(std::string_view hex);

inline std::span<const uint8_t> AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

}  // namespace c3

#endif  // C3_CORE_HEX_H_
