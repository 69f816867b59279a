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

#include "c3/client/client_state.h"

#include <fcntl.h>
#include <sodium.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <json.hpp>

#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/psi/group.h"

namespace c3::client {

namespace {

using nlohmann::json;

// Open descriptor holding an exclusive flock for its lifetime.
class LockedFile {
 public:
  explicit LockedFile(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
    if (fd_ < 0) Fail("open", path);
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      Fail("lock", path);
    }
    // Files created by an older umask-less writer get tightened here.
    ::fchmod(fd_, 0600);
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;
  ~LockedFile() { ::close(fd_); }  // releases the lock

  std::string ReadAll() const {
    std::string out;
    char buf[4096];
    ::lseek(fd_, 0, SEEK_SET);
    for (;;) {
      ssize_t n = ::read(fd_, buf, sizeof(buf));
      if (n < 0 && errno == EINTR) continue;
      if (n < 0) throw Error("cannot read client state");
      if (n == 0) break;
      out.append(buf, static_cast<size_t>(n));
    }
    return out;
  }

  void Replace(std::string_view text) const {
    if (::ftruncate(fd_, 0) != 0) throw Error("cannot truncate client state");
    ::lseek(fd_, 0, SEEK_SET);
    while (!text.empty()) {
      ssize_t n = ::write(fd_, text.data(), text.size());
      if (n < 0 && errno == EINTR) continue;
      if (n < 0) throw Error("cannot write client state");
      text.remove_prefix(static_cast<size_t>(n));
    }
    ::fsync(fd_);
  }

 private:
  [[noreturn]] static void Fail(const char* what,
                                const std::filesystem::path& path) {
    throw Error(std::string("cannot ") + what + " client state " +
                path.string() + ": " + std::strerror(errno));
  }
  int fd_ = -1;
};

std::string Encode(std::span<const uint8_t> cookie, const std::string& digest) {
  json j;
  j["cookie"] = ToHex(cookie);
  j["estimator_digest"] = digest;
  return j.dump(2) + "\n";
}

}  // namespace

ClientState ClientState::LoadOrCreate(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  ClientState state;
  state.path_ = path;
  LockedFile file(path);
  const std::string text = file.ReadAll();
  if (text.empty()) {
    psi::EnsureCryptoInit();
    randombytes_buf(state.cookie_.data(), state.cookie_.size());
    file.Replace(Encode(state.cookie_, state.estimator_digest_));
    return state;
  }
  try {
    const json j = json::parse(text);
    auto bytes = FromHex(j.at("cookie").get<std::string>());
    if (!bytes || bytes->size() != kCookieSize) {
      throw ParseError("client state cookie must be 64 hex characters");
    }
    std::copy(bytes->begin(), bytes->end(), state.cookie_.begin());
    if (j.contains("estimator_digest")) {
      state.estimator_digest_ = j["estimator_digest"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ParseError("corrupt client state " + path.string() + ": " + e.what());
  }
  return state;
}

std::filesystem::path ClientState::DefaultPath() {
  if (const char* p = std::getenv("C3_STATE"); p && *p) return p;
  if (const char* p = std::getenv("XDG_STATE_HOME"); p && *p) {
    return std::filesystem::path(p) / "c3" / "state.json";
  }
  if (const char* p = std::getenv("HOME"); p && *p) {
    return std::filesystem::path(p) / ".c3" / "state.json";
  }
  return ".c3-state.json";
}

bool ClientState::RecordEstimatorDigest(std::string_view digest) {
  LockedFile file(path_);
  // Another process may have recorded a digest since we loaded.
  std::string previous = estimator_digest_;
  try {
    const json j = json::parse(file.ReadAll());
    if (j.contains("estimator_digest")) {
      previous = j["estimator_digest"].get<std::string>();
    }
  } catch (const json::exception&) {
    // Rewritten below.
  }
  const bool changed = !previous.empty() && previous != digest;
  estimator_digest_ = std::string(digest);
  if (previous != digest) file.Replace(Encode(cookie_, estimator_digest_));
  return changed;
}

}  // namespace c3::client
