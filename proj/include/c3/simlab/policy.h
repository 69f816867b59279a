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

#ifndef C3_SIMLAB_POLICY_H_
#define C3_SIMLAB_POLICY_H_

#include <filesystem>
#include <json.hpp>
#include <set>
#include <string>
#include <string_view>

#include "c3/simlab/world.h"

namespace c3::simlab {

struct PasswordPolicy {
  size_t min_length = 0;
  std::set<std::string, std::less<>> banned;

  bool Admits(std::string_view password) const {
    return password.size() >= min_length && !banned.contains(password);
  }

  // {"min_length": 8, "banned": ["123456", ...]}; both optional.
  static PasswordPolicy FromJson(const nlohmann::json& j);
  static PasswordPolicy Load(const std::filesystem::path& path);
};

// The world users live in once the policy is enforced: mass on rejected
// passwords is removed and the rest renormalized. The universe, the users
// and the leak stay as they are, since what the server stores does not
// change. Product worlds stay product worlds. Throws InvalidArgument when
// no mass is left.
SyntheticWorld ApplyPolicy(const SyntheticWorld& world,
                           const PasswordPolicy& policy);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_POLICY_H_
