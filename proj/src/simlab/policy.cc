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

#include "c3/simlab/policy.h"

#include <fstream>

#include "c3/core/errors.h"

namespace c3::simlab {

using nlohmann::json;

PasswordPolicy PasswordPolicy::FromJson(const json& j) {
  PasswordPolicy p;
  try {
    if (j.contains("min_length")) {
      const auto n = j["min_length"].get<int64_t>();
      if (n < 0) throw InvalidArgument("min_length must be non-negative");
      p.min_length = static_cast<size_t>(n);
    }
    if (j.contains("banned")) {
      for (const auto& w : j["banned"]) p.banned.insert(w.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed policy: ") + e.what());
  }
  return p;
}

PasswordPolicy PasswordPolicy::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read policy file " + path.string());
  try {
    return FromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError("policy file " + path.string() + ": " + e.what());
  }
}

SyntheticWorld ApplyPolicy(const SyntheticWorld& world,
                           const PasswordPolicy& policy) {
  const size_t nw = world.num_passwords();
  std::vector<bool> admitted(nw);
  for (size_t w = 0; w < nw; ++w) admitted[w] = policy.Admits(world.password(w));

  if (world.independent()) {
    std::vector<double> pw(nw, 0.0);
    double total = 0;
    for (size_t w = 0; w < nw; ++w) {
      if (admitted[w]) total += world.password_mass(w);
    }
    if (total <= 0) throw InvalidArgument("policy admits no password of positive mass");
    for (size_t w = 0; w < nw; ++w) {
      if (admitted[w]) pw[w] = world.password_mass(w) / total;
    }
    std::vector<double> pu;
    for (size_t u = 0; u < world.num_users(); ++u) pu.push_back(world.user_mass(u));
    return SyntheticWorld::Independent(world.users(), std::move(pu),
                                       world.passwords(), std::move(pw),
                                       world.leaked());
  }

  std::vector<double> joint(world.num_users() * nw, 0.0);
  double total = 0;
  for (size_t u = 0; u < world.num_users(); ++u) {
    for (size_t w = 0; w < nw; ++w) {
      if (admitted[w]) total += world.p(u, w);
    }
  }
  if (total <= 0) throw InvalidArgument("policy admits no password of positive mass");
  for (size_t u = 0; u < world.num_users(); ++u) {
    for (size_t w = 0; w < nw; ++w) {
      if (admitted[w]) joint[u * nw + w] = world.p(u, w) / total;
    }
  }
  return SyntheticWorld::Joint(world.users(), world.passwords(), std::move(joint),
                               world.leaked());
}

}  // namespace c3::simlab
