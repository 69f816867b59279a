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

#ifndef C3_CORE_ERRORS_H_
#define C3_CORE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace c3 {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters or configuration (unknown algorithm tag, out-of-range l...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input data (digest lines, artifact files, wire encodings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The remote side violated the protocol or sent an invalid element.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Transport failure talking to a C3 server.
class NetworkError : public Error {
 public:
  using Error::Error;
};

}  // namespace c3

#endif  // C3_CORE_ERRORS_H_
