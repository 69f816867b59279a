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
#include <sys/stat.h>

#include <fstream>
#include <set>

#include "c3/bucketize/fsb.h"
#include "c3/client/client.h"
#include "c3/client/client_state.h"
#include "c3/client/transport.h"
#include "c3/core/digest.h"
#include "c3/core/errors.h"
#include "c3/core/hex.h"
#include "c3/core/password_hash.h"
#include "c3/distest/estimator.h"
#include "c3/psi/psi_store.h"
#include "oracles.h"
#include "toy_deployment.h"

namespace c3::client {
namespace {

class ClientTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    deployment_ = new testing::ToyDeployment();
    deployment_->Build();
    service_ = deployment_->Open();
    estimator_ = new distest::HybridEstimator(
        distest::HybridEstimator::Load(deployment_->config().EstimatorPath()));
  }
  static void TearDownTestSuite() {
    delete estimator_;
    service_.reset();
    delete deployment_;
  }

  // Passwords that are not in the corpus.
  static std::vector<std::string> Absent(size_t n) {
    std::set<std::string> corpus(deployment_->passwords().begin(), deployment_->passwords().end());
    std::vector<std::string> out;
    for (size_t i = 0; out.size() < n; ++i) {
      std::string w = "absent-" + std::to_string(i);
      if (!corpus.contains(w)) out.push_back(w);
    }
    return out;
  }

  static testing::ToyDeployment* deployment_;
  static std::shared_ptr<server::C3Service> service_;
  static distest::HybridEstimator* estimator_;
};
testing::ToyDeployment* ClientTest::deployment_ = nullptr;
std::shared_ptr<server::C3Service> ClientTest::service_;
distest::HybridEstimator* ClientTest::estimator_ = nullptr;

TEST_F(ClientTest, HibpVerdictMatchesPlaintextMembership) {
  InProcessTransport t(service_);
  C3Client client(t);
  for (const auto& w : deployment_->passwords()) {
    const auto r = client.CheckHibp(w);
    EXPECT_TRUE(r.leaked) << w;
    EXPECT_EQ(r.bucket, HashPassword(w, HashAlgorithm::kSha1).hex().substr(0, 2));
    EXPECT_GE(r.bucket_size, 1u);
  }
  for (const auto& w : Absent(200)) EXPECT_FALSE(client.CheckHibp(w).leaked) << w;
}

TEST_F(ClientTest, FsbVerdictMatchesPlaintextMembership) {
  InProcessTransport t(service_);
  C3Client client(t);
  std::mt19937_64 rng(3);
  FsbPick pick;
  pick.rng = &rng;
  for (const auto& w : deployment_->passwords()) {
    EXPECT_TRUE(client.CheckFsb(w, *estimator_, pick).leaked) << w;
  }
  for (const auto& w : Absent(200)) {
    EXPECT_FALSE(client.CheckFsb(w, *estimator_, pick).leaked) << w;
  }
}

TEST_F(ClientTest, FsbDerandomizedPickIsStablePerCookie) {
  InProcessTransport t(service_);
  C3Client client(t);
  std::array<uint8_t, kCookieSize> c1{}, c2{};
  c2[0] = 1;
  // A head password covers many buckets; a fixed cookie always picks one.
  const std::string& w = deployment_->passwords()[0];
  FsbPick p1{std::span<const uint8_t>(c1), nullptr};
  const auto first = client.CheckFsb(w, *estimator_, p1).bucket;
  for (int i = 0; i < 5; ++i) EXPECT_EQ(client.CheckFsb(w, *estimator_, p1).bucket, first);
  std::set<std::string> across;
  for (int i = 0; i < 20; ++i) {
    c2[1] = static_cast<uint8_t>(i);
    FsbPick p2{std::span<const uint8_t>(c2), nullptr};
    across.insert(client.CheckFsb(w, *estimator_, p2).bucket);
  }
  EXPECT_GT(across.size(), 1u);
}

TEST_F(ClientTest, FsbRefusesMismatchedEstimator) {
  InProcessTransport t(service_);
  C3Client client(t);
  const auto other = distest::HybridEstimator::Train({{"a", 3}, {"b", 1}}, {});
  EXPECT_THROW(client.CheckFsb("a", other), ConfigError);
}

TEST_F(ClientTest, PsiVerdictMatchesPlaintextMembership) {
  InProcessTransport t(service_);
  C3Client client(t);
  const auto& pairs = deployment_->pairs();
  std::set<Credential> leaked(pairs.begin(), pairs.end());
  for (auto mode : {psi::PsiMode::kGpc, psi::PsiMode::kIdb}) {
    for (size_t i = 0; i < pairs.size(); i += 4) {
      // Username case is normalized client-side.
      std::string shouted = pairs[i].username;
      shouted[0] = static_cast<char>(std::toupper(shouted[0]));
      EXPECT_TRUE(client.CheckPsi(shouted, pairs[i].password, mode).leaked);
    }
    for (size_t i = 0; i < 50; ++i) {
      // Known user, wrong password; and a password of another user.
      const Credential swapped{pairs[i].username, pairs[(i + 7) % pairs.size()].password};
      EXPECT_EQ(client.CheckPsi(swapped.username, swapped.password, mode).leaked,
                leaked.contains(swapped));
      EXPECT_FALSE(client.CheckPsi(pairs[i].username, "not-leaked", mode).leaked);
    }
  }
}

// Every string that would give a password away on the wire.
std::vector<std::string> Secrets(std::string_view user, std::string_view w) {
  std::vector<std::string> out = {std::string(w),
                                  HashPassword(w, HashAlgorithm::kSha1).hex(),
                                  HashPassword(w, HashAlgorithm::kSha256).hex(),
                                  ToHex(Sha256(AsBytes(SerializePair(user, w)))),
                                  ToHex(Sha1(AsBytes(SerializePair(user, w))))};
  for (std::string_view salt : {"c3-fsb", ""}) out.push_back(ToHex(bucketize::FsbDigest(w, salt)));
  // Suffix left after the prefix.
  out.push_back(HashPassword(w, HashAlgorithm::kSha1).hex().substr(2));
  return out;
}

void ExpectClean(const std::vector<RecordedRequest>& reqs, std::string_view user,
                 std::string_view w) {
  for (const auto& r : reqs) {
    const std::string wire = r.method + " " + r.path + "\n" + r.body;
    std::string lower = wire;
    for (char& c : lower) c = static_cast<char>(std::tolower(c));
    for (const auto& s : Secrets(user, w)) {
      std::string ls = s;
      for (char& c : ls) c = static_cast<char>(std::tolower(c));
      EXPECT_EQ(lower.find(ls), std::string::npos) << "leaked '" << s << "' in " << wire;
    }
  }
}

TEST_F(ClientTest, TranscriptsCarryNoPasswordMaterial) {
  InProcessTransport inner(service_);
  RecordingTransport rec(inner);
  C3Client client(rec);
  client.Meta();
  rec.Clear();
  const std::string user = "user1@example.com";
  for (const std::string w : {"dragon123", "Sunshine2024", "zz-not-there"}) {
    client.CheckHibp(w);
    client.CheckFsb(w, *estimator_);
    client.CheckPsi(user, w, psi::PsiMode::kGpc);
    client.CheckPsi(user, w, psi::PsiMode::kIdb);
    ExpectClean(rec.requests(), user, w);
    EXPECT_EQ(rec.requests().size(), 4u);
    rec.Clear();
  }
}

TEST_F(ClientTest, IdbRequestIsPasswordIndependent) {
  InProcessTransport inner(service_);
  RecordingTransport rec(inner);
  C3Client client(rec);
  client.Meta();
  rec.Clear();
  std::set<std::string> paths, buckets, elements;
  for (const std::string w : {"a1", "b2", "correct horse", "Tr0ub4dor&3"}) {
    client.CheckPsi("alice", w, psi::PsiMode::kIdb);
    client.CheckPsi("alice", "a1", psi::PsiMode::kIdb);
  }
  for (const auto& r : rec.requests()) {
    paths.insert(r.path);
    const auto amp = r.body.find("&b=");
    ASSERT_NE(amp, std::string::npos);
    buckets.insert(r.body.substr(amp + 3));
    elements.insert(r.body.substr(0, amp));
  }
  EXPECT_EQ(paths.size(), 1u);
  EXPECT_EQ(buckets.size(), 1u);
  // Blinding makes every x fresh, even for repeated queries.
  EXPECT_EQ(elements.size(), rec.requests().size());
}

class ScriptedTransport : public Transport {
 public:
  HttpResult Get(std::string_view path) override {
    if (path == "/meta") return {200, meta};
    return {200, body};
  }
  HttpResult Post(std::string_view, std::string_view, std::string_view) override {
    return {post_status, body};
  }
  std::string meta = "{}";
  std::string body;
  int post_status = 200;
};

TEST(Client, MalformedServerResponses) {
  ScriptedTransport t;
  t.meta = "not json";
  EXPECT_THROW(C3Client(t).Meta(), ProtocolError);
  t.meta = "{}";
  EXPECT_THROW(C3Client(t).CheckHibp("x"), ProtocolError);
  t.meta = R"({"hibp": {"prefix_length": 5, "algorithm": "md5"}})";
  EXPECT_THROW(C3Client(t).CheckHibp("x"), ProtocolError);
  t.meta = R"({"gpc": {"bits": 8, "group": "p256", "slow_hash": "test"}})";
  EXPECT_THROW(C3Client(t).CheckPsi("u", "w", psi::PsiMode::kGpc), ProtocolError);
  t.meta = R"({"gpc": {"bits": 8, "group": "ristretto255", "slow_hash": "test"}})";
  t.body = R"({"y": "00", "z": []})";
  EXPECT_THROW(C3Client(t).CheckPsi("u", "w", psi::PsiMode::kGpc), ProtocolError);
  t.body = R"({"z": []})";
  EXPECT_THROW(C3Client(t).CheckPsi("u", "w", psi::PsiMode::kGpc), ProtocolError);
  t.post_status = 429;
  EXPECT_THROW(C3Client(t).CheckPsi("u", "w", psi::PsiMode::kGpc), ProtocolError);
}

TEST(Client, HttpTransportReportsUnreachableServer) {
  HttpTransport t("http://127.0.0.1:1");
  EXPECT_THROW(t.Get("/meta"), NetworkError);
}

TEST(ClientState, CreatesOwnerOnlyStateAndPersistsCookie) {
  oracle::TempDir tmp;
  const auto path = tmp / "nested" / "state.json";
  const auto a = ClientState::LoadOrCreate(path);
  struct stat st {};
  ASSERT_EQ(::stat(path.c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600u);
  const auto b = ClientState::LoadOrCreate(path);
  EXPECT_TRUE(std::equal(a.cookie().begin(), a.cookie().end(), b.cookie().begin()));
  const auto other = ClientState::LoadOrCreate(tmp / "other.json");
  EXPECT_FALSE(std::equal(a.cookie().begin(), a.cookie().end(), other.cookie().begin()));
}

TEST(ClientState, EstimatorDigestChangeIsReported) {
  oracle::TempDir tmp;
  auto s = ClientState::LoadOrCreate(tmp / "s.json");
  EXPECT_FALSE(s.RecordEstimatorDigest("AAA"));
  EXPECT_FALSE(s.RecordEstimatorDigest("AAA"));
  EXPECT_TRUE(s.RecordEstimatorDigest("BBB"));
  EXPECT_EQ(ClientState::LoadOrCreate(tmp / "s.json").estimator_digest(), "BBB");
  // A second handle sees the change made through the first.
  auto stale = ClientState::LoadOrCreate(tmp / "s.json");
  s.RecordEstimatorDigest("CCC");
  EXPECT_TRUE(stale.RecordEstimatorDigest("DDD"));
}

TEST(ClientState, CorruptStateIsAnError) {
  oracle::TempDir tmp;
  {
    std::ofstream out(tmp / "bad.json");
    out << R"({"cookie": "abcd"})";
  }
  EXPECT_THROW(ClientState::LoadOrCreate(tmp / "bad.json"), ParseError);
  {
    std::ofstream out(tmp / "worse.json");
    out << "{";
  }
  EXPECT_THROW(ClientState::LoadOrCreate(tmp / "worse.json"), ParseError);
}

TEST(ClientState, DefaultPathHonoursEnvironment) {
  ::setenv("C3_STATE", "/tmp/explicit.json", 1);
  EXPECT_EQ(ClientState::DefaultPath(), std::filesystem::path("/tmp/explicit.json"));
  ::unsetenv("C3_STATE");
  ::setenv("XDG_STATE_HOME", "/tmp/xdg", 1);
  EXPECT_EQ(ClientState::DefaultPath(), std::filesystem::path("/tmp/xdg/c3/state.json"));
  ::unsetenv("XDG_STATE_HOME");
}

}  // namespace
}  // namespace c3::client
