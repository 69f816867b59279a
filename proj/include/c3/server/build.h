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

#ifndef C3_SERVER_BUILD_H_
#define C3_SERVER_BUILD_H_

#include <iosfwd>
#include <string>

#include "c3/server/config.h"

namespace c3::server {

// Precomputes every enabled protocol's store under config.data_dir and then
// writes manifest.json. The old manifest is removed first and the new one is
// renamed into place only after all stores succeeded, so a failed build
// never leaves a manifest behind. Returns the manifest text. Progress lines
// go to `log` when given.
std::string BuildStores(const ServiceConfig& config, std::ostream* log = nullptr);

}  // namespace c3::server

#endif  // C3_SERVER_BUILD_H_
