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

#include "c3/core/credential.h"

#include <algorithm>
#include <fstream>
#include <istream>

#include "c3/core/errors.h"

namespace c3 {

bool IsCleanPassword(std::string_view password, size_t max_length) {
  if (password.empty() || password.size() > max_length) return false;
  return std::all_of(password.begin(), password.end(), [](char c) {
    return c >= 0x20 && c <= 0x7e;
  });
}

std::string NormalizeUsername(std::string_view username) {
  std::string out(username);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string SerializePair(std::string_view username,
                          std::string_view password) {
  std::string out;
  out.reserve(username.size() + password.size() + 1);
  out.append(username);
  out.push_back('\0');
  out.append(password);
  return out;
}

std::optional<Credential> CleanCredential(std::string_view username,
                                          std::string_view password,
                                          const CleaningOptions& options) {
  if (!IsCleanPassword(password, options.max_password_length)) {
    return std::nullopt;
  }
  if (username.find('\0') != std::string_view::npos) return std::nullopt;
  return Credential{NormalizeUsername(username), std::string(password)};
}

LeakDataset LeakDataset::FromEntries(DatasetMode mode,
                                     const std::vector<Credential>& raw,
                                     const CleaningOptions& options) {
  LeakDataset ds;
  ds.mode_ = mode;
  std::vector<Credential> cleaned;
  cleaned.reserve(raw.size());
  for (const Credential& c : raw) {
    auto clean = CleanCredential(
        mode == DatasetMode::kPasswordOnly ? std::string_view{} : c.username,
        c.password, options);
    if (!clean) {
      ++ds.rejected_;
      continue;
    }
    cleaned.push_back(std::move(*clean));
  }

  if (mode == DatasetMode::kUsernamePassword) {
    std::map<std::string, std::set<std::string>> per_user;
    for (const Credential& c : cleaned) per_user[c.username].insert(c.password);
    std::set<std::string> dropped;
    for (const auto& [user, pws] : per_user) {
      if (pws.size() > options.max_passwords_per_user) dropped.insert(user);
    }
    if (!dropped.empty()) {
      auto removed = std::erase_if(cleaned, [&](const Credential& c) {
        return dropped.contains(c.username);
      });
      ds.rejected_ += removed;
    }
  }

  for (const Credential& c : cleaned) ++ds.password_counts_[c.password];
  std::sort(cleaned.begin(), cleaned.end());
  cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
  ds.entries_ = std::move(cleaned);
  for (const Credential& c : ds.entries_) {
    ds.by_user_[c.username].insert(c.password);
  }
  return ds;
}

namespace {

bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

LeakDataset LeakDataset::ReadPasswords(std::istream& in,
                                       const CleaningOptions& options) {
  std::vector<Credential> raw;
  std::string line;
  while (ReadLine(in, line)) {
    if (line.empty()) continue;
    raw.push_back(Credential{"", line});
  }
  return FromEntries(DatasetMode::kPasswordOnly, raw, options);
}

LeakDataset LeakDataset::ReadPairs(std::istream& in,
                                   const CleaningOptions& options) {
  std::vector<Credential> raw;
  std::string line;
  size_t malformed = 0;
  while (ReadLine(in, line)) {
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      ++malformed;
      continue;
    }
    raw.push_back(Credential{line.substr(0, tab), line.substr(tab + 1)});
  }
  LeakDataset ds = FromEntries(DatasetMode::kUsernamePassword, raw, options);
  ds.rejected_ += malformed;
  return ds;
}

LeakDataset LeakDataset::ReadPasswordsFile(const std::string& path,
                                           const CleaningOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open password corpus: " + path);
  return ReadPasswords(in, options);
}

LeakDataset LeakDataset::ReadPairsFile(const std::string& path,
                                       const CleaningOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open credential corpus: " + path);
  return ReadPairs(in, options);
}

std::vector<std::string> LeakDataset::Passwords() const {
  std::vector<std::string> out;
  out.reserve(password_counts_.size());
  for (const auto& [pw, count] : password_counts_) out.push_back(pw);
  return out;
}

bool LeakDataset::Contains(const Credential& c) const {
  return std::binary_search(entries_.begin(), entries_.end(), c);
}

bool LeakDataset::ContainsPassword(std::string_view password) const {
  return password_counts_.find(std::string(password)) !=
         password_counts_.end();
}

bool LeakDataset::HasUser(std::string_view username) const {
  return by_user_.find(username) != by_user_.end();
}

std::vector<std::string> LeakDataset::PasswordsOf(
    std::string_view username) const {
  auto it = by_user_.find(username);
  if (it == by_user_.end()) return {};
  std::vector<std::string> out(it->second.begin(), it->second.end());
  std::stable_sort(out.begin(), out.end(),
                   [&](const std::string& a, const std::string& b) {
                     return password_counts_.at(a) > password_counts_.at(b);
                   });
  return out;
}

}  // namespace c3
