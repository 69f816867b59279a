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

#ifndef C3_SIMLAB_WORLD_H_
#define C3_SIMLAB_WORLD_H_

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace c3::simlab {

// Largest |U| * |W| for which exact advantages are computed.
inline constexpr size_t kMaxExactStates = 1'000'000;

// (user index, password index).
using Cell = std::pair<size_t, size_t>;

struct RandomWorldOptions {
  size_t users = 3;
  size_t passwords = 20;
  // Product distribution p(u) * p(w); otherwise each user mixes the global
  // password distribution with a private one.
  bool independent = true;
  // Password masses follow rank^-s with s drawn from this range, jittered.
  double zipf_min = 0.6;
  double zipf_max = 1.4;
  // Share of users that get leaked credentials.
  double leak_user_fraction = 0.3;
};

// A finite universe of users and passwords with an explicit joint
// distribution and a designated leak. Immutable once built.
class SyntheticWorld {
 public:
  // `joint` is row-major, users by passwords. Throws InvalidArgument unless
  // every entry is finite and non-negative and the total is 1 within 1e-9,
  // names are unique and non-empty, and leaked cells are in range.
  static SyntheticWorld Joint(std::vector<std::string> users,
                              std::vector<std::string> passwords,
                              std::vector<double> joint,
                              std::vector<Cell> leaked = {});
  static SyntheticWorld Independent(std::vector<std::string> users,
                                    std::vector<double> user_probs,
                                    std::vector<std::string> passwords,
                                    std::vector<double> password_probs,
                                    std::vector<Cell> leaked = {});
  static SyntheticWorld Random(const RandomWorldOptions& options,
                               uint64_t seed);

  // {"users": [...], "passwords": [...], then either "user_probs" and
  // "password_probs" or a "joint" matrix, and optional "leaked": [[u, w]]}.
  static SyntheticWorld FromJson(const nlohmann::json& j);
  static SyntheticWorld Load(const std::filesystem::path& path);
  nlohmann::json ToJson() const;

  size_t num_users() const { return users_.size(); }
  size_t num_passwords() const { return passwords_.size(); }
  const std::string& user(size_t u) const { return users_[u]; }
  const std::string& password(size_t w) const { return passwords_[w]; }
  const std::vector<std::string>& users() const { return users_; }
  const std::vector<std::string>& passwords() const { return passwords_; }
  std::optional<size_t> UserIndex(std::string_view name) const;
  std::optional<size_t> PasswordIndex(std::string_view name) const;

  double p(size_t u, size_t w) const { return joint_[u * passwords_.size() + w]; }
  // Row u of the joint distribution.
  std::span<const double> Row(size_t u) const {
    return {joint_.data() + u * passwords_.size(), passwords_.size()};
  }
  double user_mass(size_t u) const { return user_mass_[u]; }
  double password_mass(size_t w) const { return password_mass_[w]; }
  const std::vector<double>& password_masses() const { return password_mass_; }
  bool independent() const { return independent_; }

  // Password indices by marginal mass, descending; ties by password.
  const std::vector<size_t>& ByMass() const { return by_mass_; }

  const std::vector<Cell>& leaked() const { return leaked_; }
  bool compromised(size_t u) const { return compromised_[u]; }
  bool IsLeakedPassword(size_t w) const { return leaked_password_[w]; }
  // The user's leaked passwords, most often leaked across users first, ties
  // by password.
  std::vector<size_t> LeakedPasswordsOf(size_t u) const;

 private:
  SyntheticWorld() = default;
  void Finalize();

  std::vector<std::string> users_;
  std::vector<std::string> passwords_;
  std::vector<double> joint_;
  std::vector<double> user_mass_;
  std::vector<double> password_mass_;
  bool independent_ = false;
  std::vector<size_t> by_mass_;
  std::vector<Cell> leaked_;
  std::vector<bool> compromised_;
  std::vector<bool> leaked_password_;
  std::vector<size_t> leak_frequency_;
  std::map<std::string, size_t, std::less<>> user_index_;
  std::map<std::string, size_t, std::less<>> password_index_;
};

}  // namespace c3::simlab

#endif  // C3_SIMLAB_WORLD_H_
