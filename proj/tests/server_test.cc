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

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <thread>

#include "c3/bucketize/fsb.h"
#include "c3/client/transport.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/core/password_hash.h"
#include "c3/psi/oprf.h"
#include "c3/psi/psi_store.h"
#include "c3/server/http_server.h"
#include "c3/server/kv_store.h"
#include "c3/server/rate_limiter.h"
#include "oracles.h"
#include "toy_deployment.h"

namespace c3::server {
namespace {

using nlohmann::json;

TEST(KvStore, MemoryPrefixScanAndDuplicates) {
  MemoryKvStore kv;
  kv.Put("AB1", "x");
  kv.Put("AB2", "y");
  kv.Put("AC1", "z");
  kv.SetMeta("k", "v");
  EXPECT_THROW(kv.Put("AB1", "again"), InvalidArgument);
  std::vector<std::string> keys;
  kv.ScanPrefix("AB", [&](std::string_view k, std::string_view) { keys.emplace_back(k); });
  EXPECT_EQ(keys, (std::vector<std::string>{"AB1", "AB2"}));
  EXPECT_EQ(kv.Get("AC1"), "z");
  EXPECT_FALSE(kv.Get("AD"));
  EXPECT_EQ(kv.Meta("k"), "v");
  EXPECT_EQ(kv.size(), 3u);
}

TEST(KvStore, FileRoundTripAndCorruption) {
  oracle::TempDir tmp;
  std::mt19937_64 rng(1);
  std::map<std::string, std::string> want;
  {
    SortedFileKvWriter w(tmp / "s.c3kv");
    for (int i = 0; i < 500; ++i) {
      std::string k = oracle::RandomHexDigest(rng, 10), v(rng() % 5, 'v');
      if (want.emplace(k, v).second) w.Put(k, v);
    }
    w.Put(std::string("bin\0key", 7), std::string("\0\1", 2));
    want[std::string("bin\0key", 7)] = std::string("\0\1", 2);
    w.SetMeta("prefix_length", "3");
    w.Finish();
  }
  const auto kv = SortedFileKvStore::Open(tmp / "s.c3kv");
  EXPECT_EQ(kv->size(), want.size());
  EXPECT_EQ(kv->Meta("prefix_length"), "3");
  std::map<std::string, std::string> got;
  kv->ForEach([&](std::string_view k, std::string_view v) { got.emplace(k, v); });
  EXPECT_EQ(got, want);
  for (const auto& [k, v] : want) EXPECT_EQ(kv->Get(k), v);
  size_t a_count = 0;
  kv->ScanPrefix("A", [&](std::string_view k, std::string_view) {
    EXPECT_EQ(k[0], 'A');
    ++a_count;
  });
  size_t naive = 0;
  for (const auto& [k, v] : want) naive += k[0] == 'A';
  EXPECT_EQ(a_count, naive);

  std::string bytes;
  {
    std::ifstream in(tmp / "s.c3kv", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  bytes[bytes.size() / 2] ^= 0x20;
  AtomicWriteFile(tmp / "bad.c3kv", bytes);
  EXPECT_THROW(SortedFileKvStore::Open(tmp / "bad.c3kv"), ParseError);
  AtomicWriteFile(tmp / "short.c3kv", bytes.substr(0, 10));
  EXPECT_THROW(SortedFileKvStore::Open(tmp / "short.c3kv"), ParseError);
}

TEST(RateLimiter, TokenBucketPerClient) {
  RateLimiter limiter(60);
  const auto t0 = RateLimiter::Clock::time_point{} + std::chrono::hours(1);
  for (int i = 0; i < 60; ++i) EXPECT_TRUE(limiter.Allow("a", t0));
  EXPECT_FALSE(limiter.Allow("a", t0));
  EXPECT_TRUE(limiter.Allow("b", t0));
  EXPECT_FALSE(limiter.Allow("a", t0 + std::chrono::milliseconds(500)));
  EXPECT_TRUE(limiter.Allow("a", t0 + std::chrono::seconds(1)));
  // Refill is capped at one minute's allowance.
  const auto later = t0 + std::chrono::hours(2);
  int allowed = 0;
  while (limiter.Allow("a", later)) ++allowed;
  EXPECT_EQ(allowed, 60);
  RateLimiter off(0);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(off.Allow("x", t0));
}

TEST(Config, ParsingAndValidation) {
  const auto c = ParseServiceConfig(R"({"port": 9000, "protocols": ["range", "idb"],
      "data_dir": "d", "range_prefix_length": "auto", "range_algorithm": "sha256",
      "slow_hash_profile": "test", "fsb": {"q_bar": 5}})",
                                    "/base");
  EXPECT_EQ(c.port, 9000);
  EXPECT_TRUE(c.Enabled(Protocol::kHibp));
  EXPECT_FALSE(c.Enabled(Protocol::kFsb));
  EXPECT_EQ(c.data_dir, std::filesystem::path("/base/d"));
  EXPECT_EQ(c.server_key, std::filesystem::path("/base/d/server.key"));
  EXPECT_FALSE(c.range_prefix_length);
  EXPECT_EQ(c.range_algorithm, HashAlgorithm::kSha256);
  EXPECT_EQ(c.fsb.q_bar, 5u);
  EXPECT_THROW(ParseServiceConfig("{", "."), ConfigError);
  EXPECT_THROW(ParseServiceConfig(R"({"port": 70000})", "."), ConfigError);
  EXPECT_THROW(ParseServiceConfig(R"({"protocols": ["smtp"]})", "."), ConfigError);
  EXPECT_THROW(ParseServiceConfig(R"({"psi_bits": 40})", "."), ConfigError);
  EXPECT_THROW(ParseServiceConfig(R"({"range_prefix_length": 41})", "."), ConfigError);
  EXPECT_THROW(ParseServiceConfig(R"({"port": "x"})", "."), ConfigError);
  EXPECT_THROW(ParseServiceConfig(R"({"slow_hash_profile": "fast"})", "."), ConfigError);
}

class ServiceTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    deployment_ = new testing::ToyDeployment();
    manifest_ = deployment_->Build();
    service_ = deployment_->Open();
  }
  static void TearDownTestSuite() {
    service_.reset();
    delete deployment_;
  }
  static testing::ToyDeployment* deployment_;
  static std::string manifest_;
  static std::shared_ptr<C3Service> service_;
};
testing::ToyDeployment* ServiceTest::deployment_ = nullptr;
std::string ServiceTest::manifest_;
std::shared_ptr<C3Service> ServiceTest::service_;

TEST_F(ServiceTest, ManifestDescribesEveryStore) {
  const auto m = json::parse(manifest_);
  EXPECT_EQ(m["hibp"]["prefix_length"], 2);
  EXPECT_EQ(m["hibp"]["algorithm"], "sha1");
  EXPECT_EQ(m["hibp"]["count"], deployment_->passwords().size());
  EXPECT_EQ(m["fsb"]["num_buckets"], 1024);
  EXPECT_EQ(m["fsb"]["passwords"], deployment_->passwords().size());
  EXPECT_EQ(m["fsb"]["salt_hex"], ToHex(AsBytes("c3-fsb")));
  EXPECT_EQ(m["gpc"]["group"], "ristretto255");
  EXPECT_EQ(m["idb"]["slow_hash"], "test");
  EXPECT_EQ(m["gpc"]["count"], deployment_->pairs().size());
  EXPECT_EQ(service_->HandleMeta().body, manifest_);
}

TEST_F(ServiceTest, RangeReturnsSuffixesOfMatchingDigests) {
  const auto h = HashPassword(deployment_->passwords()[7], HashAlgorithm::kSha1);
  const std::string prefix = h.hex().substr(0, 2);
  std::set<std::string> want;
  for (const auto& w : deployment_->passwords()) {
    const auto d = HashPassword(w, HashAlgorithm::kSha1).hex();
    if (d.starts_with(prefix)) want.insert(d.substr(2));
  }
  for (const std::string& p : {prefix, ToUpperHex(prefix)}) {
    std::string lower = p;
    for (char& c : lower) c = static_cast<char>(std::tolower(c));
    const auto r = service_->Dispatch("GET", "/range/" + lower, "");
    ASSERT_EQ(r.status, 200);
    EXPECT_TRUE(r.immutable);
    std::set<std::string> got;
    std::istringstream lines(r.body);
    for (std::string l; std::getline(lines, l);) got.insert(l);
    EXPECT_EQ(got, want);
  }
  EXPECT_EQ(service_->HandleRange("ABC").status, 400);
  EXPECT_EQ(service_->HandleRange("ZZ").status, 400);
}

TEST_F(ServiceTest, FsbReturnsDigestsOfCoveringPasswords) {
  const auto& store = *service_->stores().fsb;
  const auto r = service_->HandleFsb("17");
  ASSERT_EQ(r.status, 200);
  std::string want;
  for (const auto& d : store.QueryHex(17)) want += d + "\n";
  EXPECT_EQ(r.body, want);
  EXPECT_EQ(service_->HandleFsb("1024").status, 400);
  EXPECT_EQ(service_->HandleFsb("-1").status, 400);
  EXPECT_EQ(service_->HandleFsb("1x").status, 400);
}

TEST_F(ServiceTest, PsiEvaluatesAndReturnsBucket) {
  const auto& c = deployment_->pairs()[3];
  const auto profile = psi::SlowHashProfile::Test();
  const auto q = psi::Blind(c.Serialize(), profile);
  const auto b = psi::PsiBucketOf(c.username, c.password, psi::PsiMode::kGpc, 6);
  const auto r = service_->Dispatch("POST", "/psi/gpc",
                                    "x=" + q.x.Hex() + "&b=" + std::to_string(b));
  ASSERT_EQ(r.status, 200) << r.body;
  const auto j = json::parse(r.body);
  const auto y = psi::Element::FromHex(j["y"].get<std::string>());
  const auto candidate = psi::Unblind(y, q.r);
  bool found = false;
  for (const auto& z : j["z"]) found |= z.get<std::string>() == candidate.Hex();
  EXPECT_TRUE(found);

  EXPECT_EQ(service_->HandlePsi("gpc", "x=" + q.x.Hex()).status, 400);
  EXPECT_EQ(service_->HandlePsi("gpc", "x=00&b=1").status, 400);
  EXPECT_EQ(service_->HandlePsi("gpc", "x=" + std::string(64, '0') + "&b=1").status, 400);
  EXPECT_EQ(service_->HandlePsi("gpc", "x=" + q.x.Hex() + "&b=64").status, 400);
  EXPECT_EQ(service_->HandlePsi("hibp", "").status, 404);
  EXPECT_EQ(service_->Dispatch("GET", "/nowhere", "").status, 404);
  EXPECT_EQ(service_->Dispatch("DELETE", "/meta", "").status, 404);
}

TEST_F(ServiceTest, HttpFrontEndServesSameBytes) {
  HttpServer http(service_, 0);
  const int port = http.Bind("127.0.0.1", 0);
  http.Start();
  client::HttpTransport transport("http://127.0.0.1:" + std::to_string(port));
  for (const std::string path : {"/meta", "/range/A9", "/fsb/3"}) {
    const auto r = transport.Get(path);
    const auto want = service_->Dispatch("GET", path, "");
    EXPECT_EQ(r.status, want.status) << path;
    EXPECT_EQ(r.body, want.body) << path;
  }
  EXPECT_EQ(transport.Get("/range/XYZ").status, 400);
  http.Stop();
}

TEST_F(ServiceTest, HttpRateLimitRejectsExcess) {
  HttpServer http(service_, 3);
  const int port = http.Bind("127.0.0.1", 0);
  http.Start();
  client::HttpTransport transport("http://127.0.0.1:" + std::to_string(port));
  int ok = 0, limited = 0;
  for (int i = 0; i < 6; ++i) {
    const auto r = transport.Get("/meta");
    ok += r.status == 200;
    limited += r.status == 429;
  }
  EXPECT_EQ(ok, 3);
  EXPECT_EQ(limited, 3);
}

TEST(Build, FailedBuildLeavesNoManifest) {
  testing::ToyDeployment d;
  d.Build();
  ASSERT_TRUE(std::filesystem::exists(d.config().ManifestPath()));
  auto broken = d.config();
  broken.pairs = d.path("missing.txt");
  EXPECT_THROW(BuildStores(broken), ConfigError);
  EXPECT_FALSE(std::filesystem::exists(d.config().ManifestPath()));
  EXPECT_THROW(C3Service::Open(broken), ConfigError);
}

TEST(Build, KeyMismatchRejectedAtOpen) {
  testing::ToyOptions opts;
  opts.protocols = R"(["gpc"])";
  opts.pairs = 30;
  testing::ToyDeployment d(opts);
  d.Build();
  psi::ServerKey::Generate().Save(d.config().server_key);
  EXPECT_THROW(d.Open(), ConfigError);
}

TEST(Build, AutoPrefixLengthIsMinimal) {
  testing::ToyDeployment d;
  auto cfg = d.config();
  cfg.protocols = {Protocol::kHibp};
  cfg.range_prefix_length.reset();
  const auto m = json::parse(BuildStores(cfg));
  std::vector<std::string> digests;
  for (const auto& w : d.passwords()) digests.push_back(HashPassword(w, HashAlgorithm::kSha1).hex());
  EXPECT_EQ(m["hibp"]["prefix_length"].get<size_t>(), oracle::BruteMinPrefixLength(digests));
  EXPECT_GE(m["hibp"]["buckets"]["min"].get<size_t>(), 2u);
}

}  // namespace
}  // namespace c3::server
