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

#ifndef C3_CLIENT_TRANSPORT_H_
#define C3_CLIENT_TRANSPORT_H_

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace httplib {
class Client;
}

namespace c3::server {
class C3Service;
}

namespace c3::client {

struct HttpResult {
  int status = 0;
  std::string body;
};

// One request, one response. Implementations throw NetworkError when no
// response could be obtained; HTTP error statuses are returned, not thrown.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResult Get(std::string_view path) = 0;
  virtual HttpResult Post(std::string_view path, std::string_view body,
                          std::string_view content_type) = 0;
};

class HttpTransport : public Transport {
 public:
  // e.g. "http://127.0.0.1:8080". Keeps the connection alive across calls.
  explicit HttpTransport(const std::string& base_url);
  ~HttpTransport() override;

  HttpResult Get(std::string_view path) override;
  HttpResult Post(std::string_view path, std::string_view body,
                  std::string_view content_type) override;

 private:
  std::unique_ptr<httplib::Client> http_;
};

// Calls the service's handlers directly.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(std::shared_ptr<const server::C3Service> service);

  HttpResult Get(std::string_view path) override;
  HttpResult Post(std::string_view path, std::string_view body,
                  std::string_view content_type) override;

 private:
  std::shared_ptr<const server::C3Service> service_;
};

struct RecordedRequest {
  std::string method;
  std::string path;
  std::string body;
};

// Forwards to another transport and keeps a copy of every request sent.
class RecordingTransport : public Transport {
 public:
  explicit RecordingTransport(Transport& inner) : inner_(inner) {}

  HttpResult Get(std::string_view path) override;
  HttpResult Post(std::string_view path, std::string_view body,
                  std::string_view content_type) override;

  std::vector<RecordedRequest> requests() const;
  void Clear();

 private:
  Transport& inner_;
  mutable std::mutex mu_;
  std::vector<RecordedRequest> requests_;
};

}  // namespace c3::client

#endif  // C3_CLIENT_TRANSPORT_H_
