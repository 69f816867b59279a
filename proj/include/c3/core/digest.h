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

#ifndef C3_CORE_DIGEST_H_
#define C3_CORE_DIGEST_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace c3 {

using Sha1Digest = std::array<uint8_t, 20>;
using Sha256Digest = std::array<uint8_t, 32>;

Sha1Digest Sha1(std::span<const uint8_t> data);
Sha256Digest Sha256(std::span<const uint8_t> data);

// SHA-256 over the concatenation of the parts, without materializing it.
Sha256Digest Sha256Concat(std::initializer_list<std::string_view> parts);

}  // namespace c3

#endif  // C3_CORE_DIGEST_H_
