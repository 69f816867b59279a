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

#ifndef C3_SERVER_HTTP_SERVER_H_
#define C3_SERVER_HTTP_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "c3/server/rate_limiter.h"
#include "c3/server/service.h"

namespace httplib {
class Server;
}

namespace c3::server {

// Plain-HTTP front end for a C3Service. Nothing about a request is logged.
class HttpServer {
 public:
  HttpServer(std::shared_ptr<const C3Service> service,
             unsigned rate_limit_per_minute);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws
  // NetworkError when binding fails.
  int Bind(const std::string& host, int port);
  // Serves on a background thread until Stop().
  void Start();
  // Serves on the calling thread until Stop() from elsewhere.
  void Run();
  void Stop();

  int port() const { return port_; }

 private:
  std::shared_ptr<const C3Service> service_;
  RateLimiter limiter_;
  std::unique_ptr<httplib::Server> http_;
  std::thread worker_;
  int port_ = -1;
};

}  // namespace c3::server

#endif  // C3_SERVER_HTTP_SERVER_H_
