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

#ifndef C3_SERVER_SERVICE_H_
#define C3_SERVER_SERVICE_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "c3/bucketize/interval_store.h"
#include "c3/psi/oprf.h"
#include "c3/psi/psi_store.h"
#include "c3/server/config.h"
#include "c3/server/kv_store.h"

namespace c3::server {

struct Response {
  int status = 200;
  std::string content_type = "text/plain";
  std::string body;
  // Safe to cache indefinitely (the stores never change while served).
  bool immutable = false;
};

// Everything a running service reads. Absent members disable the endpoint.
struct ServiceStores {
  std::shared_ptr<const KvStore> range;
  size_t range_prefix_length = 5;
  bool full_hash_range = false;
  std::shared_ptr<const bucketize::IntervalStore> fsb;
  std::shared_ptr<const psi::PsiBucketStore> gpc;
  std::shared_ptr<const psi::PsiBucketStore> idb;
  std::optional<psi::ServerKey> key;
  // JSON document served at /meta.
  std::string manifest = "{}";
};

// Request handlers, independent of any transport. All methods are const and
// safe to call concurrently.
class C3Service {
 public:
  explicit C3Service(ServiceStores stores);

  // Loads the manifest and every store it lists for the enabled protocols.
  // Throws ConfigError when the manifest is missing or a store fails to load.
  static std::shared_ptr<C3Service> Open(const ServiceConfig& config);

  // GET /range/{prefix}
  Response HandleRange(std::string_view prefix) const;
  // GET /fsb/{bucket}
  Response HandleFsb(std::string_view bucket) const;
  // POST /psi/{mode} with form body x=<hex>&b=<int>
  Response HandlePsi(std::string_view mode, std::string_view body) const;
  // GET /meta
  Response HandleMeta() const;

  // Routes a raw request; used by the HTTP layer and in-process transports.
  Response Dispatch(std::string_view method, std::string_view path,
                    std::string_view body) const;

  const ServiceStores& stores() const { return stores_; }

 private:
  ServiceStores stores_;
};

}  // namespace c3::server

#endif  // C3_SERVER_SERVICE_H_
