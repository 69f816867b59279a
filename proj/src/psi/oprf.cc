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

#include "c3/psi/oprf.h"

#include <algorithm>
#include <fstream>

#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"

namespace c3::psi {

Element HashToElement(std::string_view input, const SlowHashProfile& profile) {
  auto digest = SlowHash(AsBytes(input), profile);
  return Element::FromHash(digest);
}

Element Oprf(const Scalar& a, std::string_view input,
             const SlowHashProfile& profile) {
  if (a.IsZero()) throw InvalidArgument("OPRF key must be nonzero");
  return HashToElement(input, profile).Exp(a);
}

ServerKey::ServerKey(Scalar k) : key_(k) {
  if (key_.IsZero()) throw InvalidArgument("server key must be nonzero");
  const Element pub = Element::Generator().Exp(key_);
  id_ = ToHex(Sha256(pub.bytes())).substr(0, 16);
}

ServerKey ServerKey::Generate() { return ServerKey(Scalar::Random()); }

ServerKey ServerKey::FromScalar(const Scalar& k) { return ServerKey(k); }

ServerKey ServerKey::FromHex(std::string_view hex) {
  auto raw = c3::FromHex(hex);
  if (!raw) throw ConfigError("server key is not hex");
  return ServerKey(Scalar::FromBytes(*raw));
}

ServerKey ServerKey::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  if (!in || !std::getline(in, line)) {
    throw ConfigError("cannot read server key " + path.string());
  }
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
    line.pop_back();
  }
  return FromHex(line);
}

void ServerKey::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write server key " + path.string());
  // Restrict before any key material is written.
  std::filesystem::permissions(path,
                               std::filesystem::perms::owner_read |
                                   std::filesystem::perms::owner_write,
                               std::filesystem::perm_options::replace);
  out << key_.Hex() << '\n';
  out.flush();
  if (!out) throw ConfigError("failed writing server key " + path.string());
}

BlindedQuery Blind(std::string_view input, const SlowHashProfile& profile) {
  return BlindWith(input, Scalar::Random(), profile);
}

BlindedQuery Blind(std::string_view input, const SlowHashProfile& profile,
                   std::mt19937_64& rng) {
  return BlindWith(input, Scalar::Random(rng), profile);
}

BlindedQuery BlindWith(std::string_view input, const Scalar& r,
                       const SlowHashProfile& profile) {
  return {r, Oprf(r, input, profile)};
}

Element ServerEvaluate(const ServerKey& key, const Element& x) {
  return x.Exp(key.scalar());
}

Element Unblind(const Element& y, const Scalar& r) {
  if (r.IsZero()) throw InvalidArgument("blinding scalar must be nonzero");
  return y.Exp(r.Inverse());
}

bool CheckMembership(const Element& candidate,
                     std::span<const Element> sorted_bucket) {
  return std::binary_search(sorted_bucket.begin(), sorted_bucket.end(),
                            candidate);
}

}  // namespace c3::psi
