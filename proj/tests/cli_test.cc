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
#include <random>
#include <set>
#include <sstream>

#include "c3/core/password_hash.h"
#include "oracles.h"
#include "subprocess.h"
#include "toy_deployment.h"

namespace c3 {
namespace {

using nlohmann::json;
using testing::RunCommand;

const std::string kCli = C3_CLI_PATH;

std::vector<std::string> WriteDigests(const std::filesystem::path& path, size_t n,
                                      uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> digests;
  std::ofstream out(path);
  for (size_t i = 0; i < n; ++i) {
    digests.push_back(oracle::RandomHexDigest(rng));
    out << digests.back() << "\n";
    // Duplicates and lowercase are folded by ingest.
    if (i % 7 == 0) out << digests.back() << "\n";
  }
  return digests;
}

TEST(Cli, IngestPrefixlenBucketizeStats) {
  oracle::TempDir dir;
  auto digests = WriteDigests(dir / "raw.txt", 500, 4);
  const auto ingest = RunCommand({kCli, "ingest", dir / "raw.txt", dir / "sorted.txt"});
  ASSERT_EQ(ingest.exit_code, 0) << ingest.err;
  const auto report = json::parse(ingest.out);
  EXPECT_EQ(report["unique"], 500);
  EXPECT_EQ(report["lines"], 500 + 72);

  std::ifstream sorted(dir / "sorted.txt");
  std::vector<std::string> lines;
  for (std::string l; std::getline(sorted, l);) lines.push_back(l);
  std::sort(digests.begin(), digests.end());
  EXPECT_EQ(lines, digests);

  const auto len = RunCommand({kCli, "prefixlen", dir / "sorted.txt"});
  ASSERT_EQ(len.exit_code, 0) << len.err;
  EXPECT_EQ(std::stoul(len.out), oracle::BruteMinPrefixLength(digests));

  const auto bucket =
      RunCommand({kCli, "bucketize", "--len", "2", "--format", "store", dir / "sorted.txt",
                  dir / "range.kv"});
  ASSERT_EQ(bucket.exit_code, 0) << bucket.err;
  const auto stats = RunCommand({kCli, "stats", dir / "range.kv"});
  ASSERT_EQ(stats.exit_code, 0) << stats.err;
  EXPECT_EQ(json::parse(stats.out), json::parse(bucket.out));

  const auto naive = oracle::NaiveBucketSizes(digests, 2);
  const auto s = json::parse(stats.out);
  EXPECT_EQ(s["buckets"], naive.size());
  EXPECT_EQ(s["total"], 500);

  const auto files = RunCommand(
      {kCli, "bucketize", "--len", "2", "--format", "files", dir / "sorted.txt", dir / "b"});
  ASSERT_EQ(files.exit_code, 0) << files.err;
  EXPECT_EQ(json::parse(files.out), s);
}

TEST(Cli, IngestStrictRejectsMalformedLenientSkips) {
  oracle::TempDir dir;
  {
    std::ofstream out(dir / "raw.txt");
    out << "A94A8FE5CCB19BA61C4C0873D391E987982FBBD3\nnot-a-digest\n";
  }
  const auto strict = RunCommand({kCli, "ingest", dir / "raw.txt", dir / "o.txt"});
  EXPECT_EQ(strict.exit_code, 2);
  EXPECT_NE(strict.err.find("c3:"), std::string::npos);
  const auto lenient =
      RunCommand({kCli, "ingest", "--lenient", dir / "raw.txt", dir / "o.txt"});
  ASSERT_EQ(lenient.exit_code, 0) << lenient.err;
  EXPECT_EQ(json::parse(lenient.out)["skipped"], 1);
}

TEST(Cli, BadArgumentsExitWithUsageCode) {
  EXPECT_EQ(RunCommand({kCli}).exit_code, 2);
  EXPECT_EQ(RunCommand({kCli, "frobnicate"}).exit_code, 2);
  EXPECT_EQ(RunCommand({kCli, "bucketize", "--len", "x", "a", "b"}).exit_code, 2);
  EXPECT_EQ(RunCommand({kCli, "simulate", "--scheme", "nope", "--random", "5"}).exit_code, 2);
  EXPECT_EQ(RunCommand({kCli, "simulate"}).exit_code, 2);
  EXPECT_EQ(RunCommand({kCli, "prefixlen", "/nonexistent/file"}).exit_code, 2);
  EXPECT_EQ(RunCommand({kCli, "--help"}).exit_code, 0);
}

TEST(Cli, SimulateRandomWorld) {
  const auto r = RunCommand({kCli, "simulate", "--scheme", "hpb", "--random", "30", "--q",
                             "1,5", "--bits", "2", "--csv", "--seed", "9"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("q,", 0), 0u) << header;
  size_t rows = 0;
  while (std::getline(in, row)) rows += row.empty() ? 0 : 1;
  EXPECT_EQ(rows, 2u);
  // Same seed, same table.
  EXPECT_EQ(RunCommand({kCli, "simulate", "--scheme", "hpb", "--random", "30", "--q", "1,5",
                        "--bits", "2", "--csv", "--seed", "9"})
                .out,
            r.out);
}

class CliServeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    deployment_ = new testing::ToyDeployment();
    // Same deployment on an ephemeral port.
    json config;
    std::ifstream(deployment_->path("c3.json")) >> config;
    config["port"] = 0;
    std::ofstream(deployment_->path("cli.json")) << config.dump();
    const auto build = RunCommand({kCli, "build", "--config", deployment_->path("cli.json")});
    ASSERT_EQ(build.exit_code, 0) << build.err;
    server_ = new testing::ServeProcess(kCli, deployment_->path("cli.json"));
  }
  static void TearDownTestSuite() {
    delete server_;
    delete deployment_;
  }

  static testing::CommandResult Check(const std::vector<std::string>& extra,
                                      const std::string& password) {
    std::vector<std::string> args = {kCli, "check", "--server", server_->url(), "--json"};
    args.insert(args.end(), extra.begin(), extra.end());
    return RunCommand(args, password + "\n");
  }

  static testing::ToyDeployment* deployment_;
  static testing::ServeProcess* server_;
};
testing::ToyDeployment* CliServeTest::deployment_ = nullptr;
testing::ServeProcess* CliServeTest::server_ = nullptr;

TEST_F(CliServeTest, HibpExitCodes) {
  const auto& w = deployment_->passwords()[3];
  const auto found = Check({"--proto", "hibp"}, w);
  EXPECT_EQ(found.exit_code, 10) << found.err;
  const auto out = json::parse(found.out);
  EXPECT_TRUE(out["leaked"].get<bool>());
  EXPECT_EQ(out["bucket"], HashPassword(w, HashAlgorithm::kSha1).hex().substr(0, 2));
  EXPECT_EQ(Check({"--proto", "hibp"}, "absent-password-xyz").exit_code, 0);
}

TEST_F(CliServeTest, FsbWithEstimatorAndState) {
  const std::string est = deployment_->config().EstimatorPath();
  const std::string state = deployment_->path("state.json");
  const auto& w = deployment_->passwords()[0];
  EXPECT_EQ(Check({"--proto", "fsb", "--estimator", est}, w).exit_code, 10);
  const auto first =
      Check({"--proto", "fsb", "--estimator", est, "--derandomize", "--state", state}, w);
  EXPECT_EQ(first.exit_code, 10) << first.err;
  const auto again =
      Check({"--proto", "fsb", "--estimator", est, "--derandomize", "--state", state}, w);
  EXPECT_EQ(json::parse(again.out)["bucket"], json::parse(first.out)["bucket"]);
  EXPECT_EQ(Check({"--proto", "fsb", "--estimator", est}, "absent-password-xyz").exit_code, 0);
  // No estimator: a usage error, not a verdict.
  EXPECT_EQ(Check({"--proto", "fsb"}, w).exit_code, 2);
}

TEST_F(CliServeTest, PsiExitCodes) {
  const auto& c = deployment_->pairs()[5];
  for (const std::string proto : {"gpc", "idb"}) {
    EXPECT_EQ(Check({"--proto", proto, "--user", c.username}, c.password).exit_code, 10);
    EXPECT_EQ(Check({"--proto", proto, "--user", c.username}, "not-leaked").exit_code, 0);
  }
  EXPECT_EQ(Check({"--proto", "gpc"}, c.password).exit_code, 2);
}

TEST_F(CliServeTest, UnreachableServerIsAnError) {
  const auto r = RunCommand({kCli, "check", "--server", "http://127.0.0.1:1"}, "pw\n");
  EXPECT_EQ(r.exit_code, 2);
}

}  // namespace
}  // namespace c3
