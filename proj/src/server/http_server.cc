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

#include "c3/server/http_server.h"

#include <httplib.h>

#include "c3/core/errors.h"

namespace c3::server {

namespace {

void Send(const Response& r, httplib::Response& res) {
  res.status = r.status;
  if (r.status == 200) {
    res.set_header("Cache-Control", r.immutable
                                        ? "public, max-age=31536000, immutable"
                                        : "no-store");
  }
  res.set_content(r.body, r.content_type.c_str());
}

}  // namespace

HttpServer::HttpServer(std::shared_ptr<const C3Service> service,
                       unsigned rate_limit_per_minute)
    : service_(std::move(service)),
      limiter_(rate_limit_per_minute),
      http_(std::make_unique<httplib::Server>()) {
  http_->set_pre_routing_handler(
      [this](const httplib::Request& req, httplib::Response& res) {
        if (limiter_.Allow(req.remote_addr)) {
          return httplib::Server::HandlerResponse::Unhandled;
        }
        res.status = 429;
        res.set_header("Retry-After", "60");
        res.set_content("rate limit exceeded\n", "text/plain");
        return httplib::Server::HandlerResponse::Handled;
      });
  http_->Get(R"(/range/([^/]*))",
             [this](const httplib::Request& req, httplib::Response& res) {
               Send(service_->HandleRange(req.matches[1].str()), res);
             });
  http_->Get(R"(/fsb/([^/]*))",
             [this](const httplib::Request& req, httplib::Response& res) {
               Send(service_->HandleFsb(req.matches[1].str()), res);
             });
  http_->Post(R"(/psi/([^/]*))",
              [this](const httplib::Request& req, httplib::Response& res) {
                Send(service_->HandlePsi(req.matches[1].str(), req.body), res);
              });
  http_->Get("/meta", [this](const httplib::Request&, httplib::Response& res) {
    Send(service_->HandleMeta(), res);
  });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = http_->bind_to_any_port(host);
  } else {
    port_ = http_->bind_to_port(host, port) ? port : -1;
  }
  if (port_ < 0) {
    throw NetworkError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port_;
}

void HttpServer::Start() {
  worker_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
}

void HttpServer::Run() { http_->listen_after_bind(); }

void HttpServer::Stop() {
  if (http_) http_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace c3::server
