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

#ifndef C3_SERVER_RATE_LIMITER_H_
#define C3_SERVER_RATE_LIMITER_H_

#include <chrono>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace c3::server {

// Per-client token bucket: `per_minute` tokens refilled continuously, burst
// capacity equal to one minute's allowance. Thread-safe.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  // per_minute == 0 admits everything.
  explicit RateLimiter(unsigned per_minute);

  bool Allow(std::string_view client) { return Allow(client, Clock::now()); }
  bool Allow(std::string_view client, Clock::time_point now);

 private:
  struct Bucket {
    double tokens;
    Clock::time_point updated;
  };

  double per_second_;
  double capacity_;
  std::mutex mu_;
  std::unordered_map<std::string, Bucket> buckets_;
};

}  // namespace c3::server

#endif  // C3_SERVER_RATE_LIMITER_H_
