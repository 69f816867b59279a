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

#ifndef C3_CORE_CREDENTIAL_H_
#define C3_CORE_CREDENTIAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace c3 {

struct CleaningOptions {
  size_t max_password_length = 30;
  // Users with more distinct passwords than this are dropped entirely.
  size_t max_passwords_per_user = 1000;
};

// Printable ASCII (0x20..0x7E), non-empty, at most `max_length` characters.
bool IsCleanPassword(std::string_view password, size_t max_length = 30);

// ASCII lowercase.
std::string NormalizeUsername(std::string_view username);

// Canonical u||w serialization: username, a NUL separator, password.
std::string SerializePair(std::string_view username, std::string_view password);

struct Credential {
  std::string username;  // empty in password-only mode
  std::string password;

  std::string Serialize() const { return SerializePair(username, password); }

  friend bool operator==(const Credential&, const Credential&) = default;
  friend auto operator<=>(const Credential&, const Credential&) = default;
};

// Returns nullopt when the password fails the cleaning filter.
std::optional<Credential> CleanCredential(std::string_view username,
                                          std::string_view password,
                                          const CleaningOptions& options = {});

enum class DatasetMode { kPasswordOnly, kUsernamePassword };

// A de-duplicated set of leaked credentials, cleaned at ingest. Raw password
// multiplicities are kept alongside for histogram training.
class LeakDataset {
 public:
  LeakDataset() = default;

  static LeakDataset FromEntries(DatasetMode mode,
                                 const std::vector<Credential>& raw,
                                 const CleaningOptions& options = {});

  // One password per line. Repeated lines raise the password's count.
  static LeakDataset ReadPasswords(std::istream& in,
                                   const CleaningOptions& options = {});
  // One "username<TAB>password" pair per line.
  static LeakDataset ReadPairs(std::istream& in,
                               const CleaningOptions& options = {});
  static LeakDataset ReadPasswordsFile(const std::string& path,
                                       const CleaningOptions& options = {});
  static LeakDataset ReadPairsFile(const std::string& path,
                                   const CleaningOptions& options = {});

  DatasetMode mode() const { return mode_; }
  // Sorted, unique.
  const std::vector<Credential>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Raw lines dropped by the cleaning filter.
  size_t rejected() const { return rejected_; }

  // Password -> raw multiplicity (after cleaning).
  const std::map<std::string, uint64_t>& password_counts() const {
    return password_counts_;
  }
  // Sorted unique passwords.
  std::vector<std::string> Passwords() const;

  bool Contains(const Credential& c) const;
  bool ContainsPassword(std::string_view password) const;
  bool HasUser(std::string_view username) const;
  // The user's leaked passwords, most frequent in the corpus first.
  std::vector<std::string> PasswordsOf(std::string_view username) const;

 private:
  DatasetMode mode_ = DatasetMode::kPasswordOnly;
  std::vector<Credential> entries_;
  std::map<std::string, uint64_t> password_counts_;
  std::map<std::string, std::set<std::string>, std::less<>> by_user_;
  size_t rejected_ = 0;
};

}  // namespace c3

#endif  // C3_CORE_CREDENTIAL_H_
