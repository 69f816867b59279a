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

#ifndef C3_CLIENT_CLIENT_H_
#define C3_CLIENT_CLIENT_H_

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "c3/client/transport.h"
#include "c3/psi/psi_store.h"

namespace c3::distest {
class HybridEstimator;
}

namespace c3::client {

struct CheckResult {
  bool leaked = false;
  // What was sent as the bucket identifier (hex prefix or decimal id).
  std::string bucket;
  // Entries the server returned for that bucket.
  size_t bucket_size = 0;
};

// Bucket choice for FSB. With a cookie the pick is stable per password;
// otherwise it is uniform over the interval using `rng` (or an internally
// seeded generator when null).
struct FsbPick {
  std::optional<std::span<const uint8_t>> cookie;
  std::mt19937_64* rng = nullptr;
};

// Runs the checking protocols against one server. Server parameters are read
// once from /meta. Protocol violations and non-200 answers raise
// ProtocolError; transport failures raise NetworkError. A false verdict is
// only ever returned after a complete, well-formed exchange.
class C3Client {
 public:
  explicit C3Client(Transport& transport) : transport_(transport) {}

  const nlohmann::json& Meta();

  CheckResult CheckHibp(std::string_view password);
  // Throws ConfigError when `estimator` differs from the one the server's
  // store was built with; the intervals would not line up otherwise.
  CheckResult CheckFsb(std::string_view password,
                       const distest::HybridEstimator& estimator,
                       const FsbPick& pick = {});
  // The username is normalized the same way the server's corpus was.
  CheckResult CheckPsi(std::string_view username, std::string_view password,
                       psi::PsiMode mode);

 private:
  const nlohmann::json& Section(std::string_view protocol);
  std::string Fetch(std::string_view path);

  Transport& transport_;
  std::optional<nlohmann::json> meta_;
};

}  // namespace c3::client

#endif  // C3_CLIENT_CLIENT_H_
