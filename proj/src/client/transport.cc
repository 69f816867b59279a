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

#include "c3/client/transport.h"

#include <httplib.h>

#include "c3/core/errors.h"
#include "c3/server/service.h"

namespace c3::client {

HttpTransport::HttpTransport(const std::string& base_url)
    : http_(std::make_unique<httplib::Client>(base_url)) {
  if (!http_->is_valid()) throw NetworkError("invalid server URL " + base_url);
  http_->set_keep_alive(true);
  http_->set_connection_timeout(5);
  http_->set_read_timeout(30);
}

HttpTransport::~HttpTransport() = default;

HttpResult HttpTransport::Get(std::string_view path) {
  auto res = http_->Get(std::string(path));
  if (!res) {
    throw NetworkError("GET " + std::string(path) + " failed: " +
                       httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

HttpResult HttpTransport::Post(std::string_view path, std::string_view body,
                               std::string_view content_type) {
  auto res = http_->Post(std::string(path), std::string(body),
                         std::string(content_type));
  if (!res) {
    throw NetworkError("POST " + std::string(path) + " failed: " +
                       httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

InProcessTransport::InProcessTransport(
    std::shared_ptr<const server::C3Service> service)
    : service_(std::move(service)) {}

HttpResult InProcessTransport::Get(std::string_view path) {
  auto r = service_->Dispatch("GET", path, "");
  return {r.status, std::move(r.body)};
}

HttpResult InProcessTransport::Post(std::string_view path,
                                    std::string_view body, std::string_view) {
  auto r = service_->Dispatch("POST", path, body);
  return {r.status, std::move(r.body)};
}

HttpResult RecordingTransport::Get(std::string_view path) {
  {
    std::lock_guard lock(mu_);
    requests_.push_back({"GET", std::string(path), ""});
  }
  return inner_.Get(path);
}

HttpResult RecordingTransport::Post(std::string_view path,
                                    std::string_view body,
                                    std::string_view content_type) {
  {
    std::lock_guard lock(mu_);
    requests_.push_back({"POST", std::string(path), std::string(body)});
  }
  return inner_.Post(path, body, content_type);
}

std::vector<RecordedRequest> RecordingTransport::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

void RecordingTransport::Clear() {
  std::lock_guard lock(mu_);
  requests_.clear();
}

}  // namespace c3::client
