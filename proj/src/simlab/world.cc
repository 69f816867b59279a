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

#include "c3/simlab/world.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "c3/core/errors.h"
#include "c3/distest/ngram.h"

namespace c3::simlab {

using nlohmann::json;

namespace {

constexpr double kSumTolerance = 1e-9;

void CheckNames(const std::vector<std::string>& names, const char* what) {
  if (names.empty()) throw InvalidArgument(std::string("world has no ") + what);
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (n.empty()) throw InvalidArgument(std::string("empty name among ") + what);
    if (!seen.insert(n).second) {
      throw InvalidArgument(std::string("duplicate ") + what + " '" + n + "'");
    }
  }
}

double CheckDistribution(std::span<const double> probs, const char* what) {
  double total = 0;
  for (double x : probs) {
    if (!std::isfinite(x) || x < 0) {
      throw InvalidArgument(std::string(what) +
                            " must be finite and non-negative");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument(std::string(what) + " sum to " +
                          std::to_string(total) + ", not 1");
  }
  return total;
}

// Passwords that look like the output of people: a few roots with the usual
// decorations, so neighbouring variants exist for correlation experiments.
std::vector<std::string> RandomPasswords(size_t n, std::mt19937_64& rng) {
  static constexpr std::string_view kRoots[] = {
      "password", "dragon",  "monkey", "letmein", "qwerty",  "sunshine",
      "shadow",   "master",  "hello",  "freedom", "princess", "football",
      "welcome",  "charlie", "summer", "tigger",  "soccer",  "iloveyou"};
  constexpr size_t kNumRoots = std::size(kRoots);
  std::set<std::string> seen;
  std::vector<std::string> out;
  auto pick = [&](size_t k) { return static_cast<size_t>(rng() % k); };
  while (out.size() < n) {
    std::string w(kRoots[pick(kNumRoots)]);
    switch (pick(6)) {
      case 0: break;
      case 1: w += std::to_string(pick(10)); break;
      case 2: w += std::to_string(pick(100)); break;
      case 3: w[0] = static_cast<char>(w[0] - 'a' + 'A'); break;
      case 4: {
        auto pos = w.find_first_of("aeio");
        if (pos != std::string::npos) {
          static constexpr char kLeet[] = {'4', '3', '1', '0'};
          w[pos] = kLeet[std::string_view("aeio").find(w[pos])];
        }
        break;
      }
      default: w += std::to_string(1990 + pick(30)); break;
    }
    // Large universes run out of decorated roots; fall back to numbering.
    if (seen.size() > 40 * kNumRoots) w += "#" + std::to_string(out.size());
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::vector<double> Normalized(std::vector<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

SyntheticWorld SyntheticWorld::Joint(std::vector<std::string> users,
                                     std::vector<std::string> passwords,
                                     std::vector<double> joint,
                                     std::vector<Cell> leaked) {
  CheckNames(users, "users");
  CheckNames(passwords, "passwords");
  if (joint.size() != users.size() * passwords.size()) {
    throw InvalidArgument("joint distribution has the wrong shape");
  }
  CheckDistribution(joint, "joint probabilities");
  SyntheticWorld w;
  w.users_ = std::move(users);
  w.passwords_ = std::move(passwords);
  w.joint_ = std::move(joint);
  w.leaked_ = std::move(leaked);
  w.user_mass_.assign(w.users_.size(), 0.0);
  w.password_mass_.assign(w.passwords_.size(), 0.0);
  for (size_t u = 0; u < w.users_.size(); ++u) {
    for (size_t x = 0; x < w.passwords_.size(); ++x) {
      w.user_mass_[u] += w.p(u, x);
      w.password_mass_[x] += w.p(u, x);
    }
  }
  w.Finalize();
  return w;
}

SyntheticWorld SyntheticWorld::Independent(std::vector<std::string> users,
                                           std::vector<double> user_probs,
                                           std::vector<std::string> passwords,
                                           std::vector<double> password_probs,
                                           std::vector<Cell> leaked) {
  CheckNames(users, "users");
  CheckNames(passwords, "passwords");
  if (user_probs.size() != users.size() ||
      password_probs.size() != passwords.size()) {
    throw InvalidArgument("probability vectors do not match the name lists");
  }
  CheckDistribution(user_probs, "user probabilities");
  CheckDistribution(password_probs, "password probabilities");
  SyntheticWorld w;
  w.users_ = std::move(users);
  w.passwords_ = std::move(passwords);
  w.user_mass_ = std::move(user_probs);
  w.password_mass_ = std::move(password_probs);
  w.independent_ = true;
  w.joint_.resize(w.users_.size() * w.passwords_.size());
  for (size_t u = 0; u < w.users_.size(); ++u) {
    for (size_t x = 0; x < w.passwords_.size(); ++x) {
      w.joint_[u * w.passwords_.size() + x] =
          w.user_mass_[u] * w.password_mass_[x];
    }
  }
  w.leaked_ = std::move(leaked);
  w.Finalize();
  return w;
}

void SyntheticWorld::Finalize() {
  const size_t nu = users_.size();
  const size_t nw = passwords_.size();
  std::sort(leaked_.begin(), leaked_.end());
  leaked_.erase(std::unique(leaked_.begin(), leaked_.end()), leaked_.end());
  compromised_.assign(nu, false);
  leaked_password_.assign(nw, false);
  leak_frequency_.assign(nw, 0);
  for (auto [u, w] : leaked_) {
    if (u >= nu || w >= nw) throw InvalidArgument("leaked cell out of range");
    compromised_[u] = true;
    leaked_password_[w] = true;
    ++leak_frequency_[w];
  }
  for (size_t u = 0; u < nu; ++u) user_index_.emplace(users_[u], u);
  for (size_t w = 0; w < nw; ++w) password_index_.emplace(passwords_[w], w);
  by_mass_.resize(nw);
  std::iota(by_mass_.begin(), by_mass_.end(), size_t{0});
  std::sort(by_mass_.begin(), by_mass_.end(), [&](size_t a, size_t b) {
    if (password_mass_[a] != password_mass_[b]) {
      return password_mass_[a] > password_mass_[b];
    }
    return passwords_[a] < passwords_[b];
  });
}

SyntheticWorld SyntheticWorld::Random(const RandomWorldOptions& options,
                                      uint64_t seed) {
  if (options.users == 0 || options.passwords == 0) {
    throw InvalidArgument("random world needs at least one user and password");
  }
  if (!(options.zipf_min <= options.zipf_max)) {
    throw InvalidArgument("zipf_min exceeds zipf_max");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * distest::UnitUniform(rng);
  };

  std::vector<std::string> users;
  for (size_t i = 0; i < options.users; ++i) {
    users.push_back("user" + std::to_string(i));
  }
  std::vector<std::string> passwords = RandomPasswords(options.passwords, rng);

  const double s = uniform(options.zipf_min, options.zipf_max);
  std::vector<double> pw(options.passwords);
  for (size_t i = 0; i < pw.size(); ++i) {
    pw[i] = std::pow(static_cast<double>(i + 1), -s) * uniform(0.5, 1.5);
  }
  pw = Normalized(std::move(pw));
  std::vector<double> pu(options.users);
  for (double& x : pu) x = uniform(0.2, 1.0);
  pu = Normalized(std::move(pu));

  // Conditional password distributions, used to pick leaked credentials.
  std::vector<std::vector<double>> cond(options.users, pw);
  if (!options.independent) {
    for (auto& row : cond) {
      std::vector<double> own(row.size());
      for (double& x : own) x = -std::log(1.0 - distest::UnitUniform(rng));
      own = Normalized(std::move(own));
      for (size_t i = 0; i < row.size(); ++i) row[i] = 0.5 * row[i] + 0.5 * own[i];
    }
  }

  std::vector<Cell> leaked;
  for (size_t u = 0; u < options.users; ++u) {
    if (distest::UnitUniform(rng) >= options.leak_user_fraction) continue;
    const size_t k = 1 + rng() % 2;
    for (size_t j = 0; j < k; ++j) {
      double r = distest::UnitUniform(rng);
      size_t w = 0;
      while (w + 1 < cond[u].size() && r >= cond[u][w]) r -= cond[u][w++];
      leaked.emplace_back(u, w);
    }
  }

  if (options.independent) {
    return Independent(std::move(users), std::move(pu), std::move(passwords),
                       std::move(pw), std::move(leaked));
  }
  std::vector<double> joint;
  joint.reserve(options.users * options.passwords);
  for (size_t u = 0; u < options.users; ++u) {
    for (double c : cond[u]) joint.push_back(pu[u] * c);
  }
  joint = Normalized(std::move(joint));
  return Joint(std::move(users), std::move(passwords), std::move(joint),
               std::move(leaked));
}

SyntheticWorld SyntheticWorld::FromJson(const json& j) {
  try {
    auto users = j.at("users").get<std::vector<std::string>>();
    auto passwords = j.at("passwords").get<std::vector<std::string>>();
    auto index_of = [](const std::vector<std::string>& names,
                       const std::string& n) -> size_t {
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end()) throw InvalidArgument("leaked entry names unknown '" + n + "'");
      return static_cast<size_t>(it - names.begin());
    };
    std::vector<Cell> leaked;
    if (j.contains("leaked")) {
      for (const auto& pair : j["leaked"]) {
        leaked.emplace_back(index_of(users, pair.at(0).get<std::string>()),
                            index_of(passwords, pair.at(1).get<std::string>()));
      }
    }
    if (j.contains("joint")) {
      std::vector<double> joint;
      for (const auto& row : j["joint"]) {
        auto r = row.get<std::vector<double>>();
        if (r.size() != passwords.size()) {
          throw InvalidArgument("joint row length differs from password count");
        }
        joint.insert(joint.end(), r.begin(), r.end());
      }
      return Joint(std::move(users), std::move(passwords), std::move(joint),
                   std::move(leaked));
    }
    return Independent(std::move(users),
                       j.at("user_probs").get<std::vector<double>>(),
                       std::move(passwords),
                       j.at("password_probs").get<std::vector<double>>(),
                       std::move(leaked));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed world description: ") + e.what());
  }
}

SyntheticWorld SyntheticWorld::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read world file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("world file " + path.string() + ": " + e.what());
  }
  return FromJson(j);
}

json SyntheticWorld::ToJson() const {
  json j;
  j["users"] = users_;
  j["passwords"] = passwords_;
  if (independent_) {
    j["user_probs"] = user_mass_;
    j["password_probs"] = password_mass_;
  } else {
    json rows = json::array();
    for (size_t u = 0; u < users_.size(); ++u) {
      rows.push_back(std::vector<double>(Row(u).begin(), Row(u).end()));
    }
    j["joint"] = rows;
  }
  json leaked = json::array();
  for (auto [u, w] : leaked_) leaked.push_back({users_[u], passwords_[w]});
  j["leaked"] = leaked;
  return j;
}

std::optional<size_t> SyntheticWorld::UserIndex(std::string_view name) const {
  auto it = user_index_.find(name);
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<size_t> SyntheticWorld::PasswordIndex(std::string_view name) const {
  auto it = password_index_.find(name);
  if (it == password_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<size_t> SyntheticWorld::LeakedPasswordsOf(size_t u) const {
  std::vector<size_t> out;
  for (auto [lu, w] : leaked_) {
    if (lu == u) out.push_back(w);
  }
  std::sort(out.begin(), out.end(), [&](size_t a, size_t b) {
    if (leak_frequency_[a] != leak_frequency_[b]) {
      return leak_frequency_[a] > leak_frequency_[b];
    }
    return passwords_[a] < passwords_[b];
  });
  return out;
}

}  // namespace c3::simlab
