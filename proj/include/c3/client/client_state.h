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

#ifndef C3_CLIENT_CLIENT_STATE_H_
#define C3_CLIENT_CLIENT_STATE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace c3::client {

inline constexpr size_t kCookieSize = 32;

// Per-installation client secrets: the bucket-selection cookie (generated
// once, never sent anywhere) and the last estimator digest seen, so that a
// changed estimator is reported instead of silently moving the chosen
// bucket. Stored as JSON with mode 0600; every access holds an exclusive
// lock on the file.
class ClientState {
 public:
  // Reads the state, creating it with a fresh cookie when absent.
  static ClientState LoadOrCreate(const std::filesystem::path& path);
  // $C3_STATE, else $XDG_STATE_HOME/c3/state.json, else ~/.c3/state.json.
  static std::filesystem::path DefaultPath();

  std::span<const uint8_t> cookie() const { return cookie_; }
  const std::string& estimator_digest() const { return estimator_digest_; }

  // Remembers `digest`; returns true when a different digest was stored
  // before (the first call returns false).
  bool RecordEstimatorDigest(std::string_view digest);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::array<uint8_t, kCookieSize> cookie_{};
  std::string estimator_digest_;
};

}  // namespace c3::client

#endif  // C3_CLIENT_CLIENT_STATE_H_
