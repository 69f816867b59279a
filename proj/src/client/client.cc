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

#include "c3/client/client.h"

#include <algorithm>
#include <vector>

#include "c3/bucketize/fsb.h"
#include "c3/core/credential.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/core/password_hash.h"
#include "c3/distest/estimator.h"

namespace c3::client {

using nlohmann::json;

namespace {

// Calls `f` on each non-empty line, CR stripped.
template <typename F>
void ForEachLine(std::string_view body, F&& f) {
  while (!body.empty()) {
    auto nl = body.find('\n');
    std::string_view line = body.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) f(line);
    if (nl == std::string_view::npos) break;
    body.remove_prefix(nl + 1);
  }
}

template <typename T>
T Field(const json& section, const char* name) {
  try {
    return section.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("server metadata lacks '") + name +
                        "': " + e.what());
  }
}

}  // namespace

const json& C3Client::Meta() {
  if (!meta_) {
    try {
      meta_ = json::parse(Fetch("/meta"));
    } catch (const json::exception& e) {
      throw ProtocolError(std::string("server metadata is not JSON: ") +
                          e.what());
    }
  }
  return *meta_;
}

const json& C3Client::Section(std::string_view protocol) {
  const json& m = Meta();
  auto it = m.find(std::string(protocol));
  if (it == m.end() || !it->is_object()) {
    throw ProtocolError("server does not offer " + std::string(protocol));
  }
  return *it;
}

std::string C3Client::Fetch(std::string_view path) {
  auto r = transport_.Get(path);
  if (r.status != 200) {
    throw ProtocolError("GET " + std::string(path) + " returned " +
                        std::to_string(r.status));
  }
  return std::move(r.body);
}

CheckResult C3Client::CheckHibp(std::string_view password) {
  const json& s = Section("hibp");
  const auto length = Field<size_t>(s, "prefix_length");
  HashAlgorithm alg;
  try {
    alg = ParseAlgorithm(Field<std::string>(s, "algorithm"));
  } catch (const ConfigError& e) {
    throw ProtocolError(e.what());
  }
  const PasswordHash h = HashPassword(password, alg);
  if (length == 0 || length > h.length()) {
    throw ProtocolError("server prefix length out of range");
  }
  CheckResult result;
  result.bucket = h.hex().substr(0, length);
  const std::string_view suffix = std::string_view(h.hex()).substr(length);
  const std::string body = Fetch("/range/" + result.bucket);
  // Lines are either bare suffixes or full digests, depending on how the
  // server was configured; both are handled.
  ForEachLine(body, [&](std::string_view line) {
    ++result.bucket_size;
    std::string upper = ToUpperHex(line);
    if (upper == suffix || upper == h.hex()) result.leaked = true;
  });
  return result;
}

CheckResult C3Client::CheckFsb(std::string_view password,
                               const distest::HybridEstimator& estimator,
                               const FsbPick& pick) {
  const json& s = Section("fsb");
  const auto served = Field<std::string>(s, "estimator_digest");
  if (served != estimator.digest()) {
    throw ConfigError("local estimator " + estimator.digest() +
                      " does not match the server's " + served +
                      "; fetch the server's estimator first");
  }
  bucketize::FsbParams params;
  params.num_buckets = Field<uint64_t>(s, "num_buckets");
  params.q_bar = Field<uint64_t>(s, "q_bar");
  params.p_qbar = Field<double>(s, "p_qbar");
  auto salt = FromHex(Field<std::string>(s, "salt_hex"));
  if (!salt) throw ProtocolError("server salt is not hex");
  params.salt.assign(salt->begin(), salt->end());
  try {
    bucketize::ValidateFsbParams(params);
  } catch (const ConfigError& e) {
    throw ProtocolError(std::string("server FSB parameters: ") + e.what());
  }

  const auto interval = bucketize::FsbInterval(
      password, estimator.Estimate(password), params);
  uint64_t bucket;
  if (pick.cookie) {
    bucket = bucketize::PickBucketDerandomized(password, interval, *pick.cookie,
                                               params.salt);
  } else if (pick.rng) {
    bucket = bucketize::PickBucketRandom(interval, *pick.rng);
  } else {
    std::random_device rd;
    std::mt19937_64 rng((uint64_t{rd()} << 32) | rd());
    bucket = bucketize::PickBucketRandom(interval, rng);
  }

  CheckResult result;
  result.bucket = std::to_string(bucket);
  const std::string want = ToHex(bucketize::FsbDigest(password, params.salt));
  const std::string body = Fetch("/fsb/" + result.bucket);
  ForEachLine(body, [&](std::string_view line) {
    ++result.bucket_size;
    if (ToUpperHex(line) == want) result.leaked = true;
  });
  return result;
}

CheckResult C3Client::CheckPsi(std::string_view username,
                               std::string_view password, psi::PsiMode mode) {
  const std::string mode_name(psi::ModeName(mode));
  const json& s = Section(mode_name);
  const auto bits = Field<unsigned>(s, "bits");
  if (bits == 0 || bits > 32) throw ProtocolError("server PSI bits out of range");
  if (Field<std::string>(s, "group") != psi::kGroupName) {
    throw ProtocolError("server uses an unsupported group");
  }
  psi::SlowHashProfile profile;
  try {
    profile = psi::SlowHashProfile::Named(Field<std::string>(s, "slow_hash"));
  } catch (const ConfigError& e) {
    throw ProtocolError(e.what());
  }

  const std::string user = NormalizeUsername(username);
  const auto bucket = psi::PsiBucketOf(user, password, mode, bits);
  const psi::BlindedQuery q = psi::Blind(SerializePair(user, password), profile);

  CheckResult result;
  result.bucket = std::to_string(bucket);
  const std::string path = "/psi/" + mode_name;
  auto r = transport_.Post(path, "x=" + q.x.Hex() + "&b=" + result.bucket,
                           "application/x-www-form-urlencoded");
  if (r.status != 200) {
    throw ProtocolError("POST " + path + " returned " +
                        std::to_string(r.status));
  }
  std::optional<psi::Element> y;
  std::vector<psi::Element> z;
  try {
    const json j = json::parse(r.body);
    y = psi::Element::FromHex(j.at("y").get<std::string>());
    for (const auto& e : j.at("z")) {
      z.push_back(psi::Element::FromHex(e.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed PSI response: ") + e.what());
  }
  std::sort(z.begin(), z.end());
  result.bucket_size = z.size();
  result.leaked = psi::CheckMembership(psi::Unblind(*y, q.r), z);
  return result;
}

}  // namespace c3::client
