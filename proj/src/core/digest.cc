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

#include "c3/core/digest.h"

#include <openssl/evp.h>

#include <memory>

#include "c3/core/errors.h"

namespace c3 {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

template <size_t N>
std::array<uint8_t, N> OneShot(const EVP_MD* md,
                               std::span<const uint8_t> data) {
  std::array<uint8_t, N> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) !=
          1 ||
      len != N) {
    throw Error("EVP_Digest failed");
  }
  return out;
}

}  // namespace

Sha1Digest Sha1(std::span<const uint8_t> data) {
  return OneShot<20>(EVP_sha1(), data);
}

Sha256Digest Sha256(std::span<const uint8_t> data) {
  return OneShot<32>(EVP_sha256(), data);
}

Sha256Digest Sha256Concat(std::initializer_list<std::string_view> parts) {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("EVP_DigestInit_ex failed");
  }
  for (std::string_view part : parts) {
    if (EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1) {
      throw Error("EVP_DigestUpdate failed");
    }
  }
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != 32) {
    throw Error("EVP_DigestFinal_ex failed");
  }
  return out;
}

}  // namespace c3
