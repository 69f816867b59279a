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

// c3: dataset pipeline, service build/serve, checking client and the
// simulation lab behind one command.

#include <signal.h>
#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "c3/client/client.h"
#include "c3/client/client_state.h"
#include "c3/client/transport.h"
#include "c3/core/errors.h"
#include "c3/distest/estimator.h"
#include "c3/pipeline/buckets.h"
#include "c3/pipeline/prefix_length.h"
#include "c3/pipeline/preprocess.h"
#include "c3/server/build.h"
#include "c3/server/config.h"
#include "c3/server/http_server.h"
#include "c3/server/kv_store.h"
#include "c3/server/service.h"
#include "c3/simlab/experiment.h"
#include "c3/simlab/world.h"

namespace {

using nlohmann::json;

constexpr int kExitNotFound = 0;
constexpr int kExitFound = 10;
constexpr int kExitError = 2;

json StatsJson(const c3::pipeline::BucketStats& s) {
  return {{"prefix_length", s.prefix_length},
          {"buckets", s.bucket_count},
          {"total", s.total},
          {"min", s.min_size},
          {"max", s.max_size},
          {"mean", s.mean_size},
          {"median", s.median_size},
          {"argmin", s.argmin.hex()},
          {"argmax", s.argmax.hex()}};
}

// One line from stdin; echo is switched off when it is a terminal.
std::string ReadSecret(const char* prompt) {
  const bool tty = ::isatty(STDIN_FILENO);
  termios saved{};
  if (tty) {
    std::cerr << prompt << std::flush;
    ::tcgetattr(STDIN_FILENO, &saved);
    termios quiet = saved;
    quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
    ::tcsetattr(STDIN_FILENO, TCSANOW, &quiet);
  }
  std::string line;
  const bool ok = static_cast<bool>(std::getline(std::cin, line));
  if (tty) {
    ::tcsetattr(STDIN_FILENO, TCSANOW, &saved);
    std::cerr << "\n";
  }
  if (!ok) throw c3::InvalidArgument("no password on standard input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

struct CheckArgs {
  std::string proto = "hibp";
  std::string user;
  std::string server = "http://127.0.0.1:8080";
  std::string estimator;
  std::string state;
  bool derandomize = false;
  bool json = false;
};

int RunCheck(const CheckArgs& a) {
  const std::string password = ReadSecret("password: ");
  c3::client::HttpTransport transport(a.server);
  c3::client::C3Client client(transport);
  c3::client::CheckResult r;
  std::string warning;
  if (a.proto == "hibp") {
    r = client.CheckHibp(password);
  } else if (a.proto == "fsb") {
    if (a.estimator.empty()) {
      throw c3::ConfigError("--proto fsb needs --estimator (the server's estimator.c3est)");
    }
    const auto estimator = c3::distest::HybridEstimator::Load(a.estimator);
    c3::client::FsbPick pick;
    std::optional<c3::client::ClientState> state;
    if (a.derandomize) {
      state = c3::client::ClientState::LoadOrCreate(
          a.state.empty() ? c3::client::ClientState::DefaultPath()
                          : std::filesystem::path(a.state));
      if (state->RecordEstimatorDigest(estimator.digest())) {
        warning = "estimator changed since the last check; the derandomized "
                  "bucket choice may have moved";
      }
      pick.cookie = state->cookie();
    }
    r = client.CheckFsb(password, estimator, pick);
  } else if (a.proto == "gpc" || a.proto == "idb") {
    if (a.user.empty()) throw c3::ConfigError("--proto " + a.proto + " needs --user");
    r = client.CheckPsi(a.user, password, c3::psi::ParseMode(a.proto));
  } else {
    throw c3::ConfigError("unknown protocol '" + a.proto + "'");
  }
  if (a.json) {
    json out = {{"protocol", a.proto},
                {"leaked", r.leaked},
                {"bucket", r.bucket},
                {"bucket_size", r.bucket_size}};
    if (!warning.empty()) out["warning"] = warning;
    std::cout << out.dump() << "\n";
  } else {
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    std::cout << (r.leaked ? "found in breach data" : "not found") << "\n";
  }
  return r.leaked ? kExitFound : kExitNotFound;
}

int RunServe(const std::string& config_path) {
  const auto config = c3::server::LoadServiceConfig(config_path);
  auto service = c3::server::C3Service::Open(config);
  // Signals are taken by a dedicated thread so Stop() runs in normal context.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  c3::server::HttpServer server(service, config.rate_limit_per_minute);
  const int port = server.Bind(config.host, config.port);
  std::cerr << "serving on " << config.host << ":" << port << "\n";
  std::jthread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.Stop();
  });
  server.Run();
  // Run returned without a signal (listener failure): release the waiter.
  pthread_kill(waiter.native_handle(), SIGTERM);
  return 0;
}

std::vector<int64_t> ParseBudgets(const std::vector<std::string>& items) {
  std::vector<int64_t> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      try {
        size_t used = 0;
        out.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw c3::ConfigError("bad budget '" + part + "'");
      }
    }
  }
  if (out.empty()) throw c3::ConfigError("no budgets given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compromised-credential checking toolkit"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_in, ingest_out, temp_dir;
  bool lenient = false;
  size_t chunk = size_t{1} << 20;
  auto* ingest = app.add_subcommand("ingest", "Sort and de-duplicate a digest file");
  ingest->add_option("in", ingest_in, "Digest lines")->required();
  ingest->add_option("out", ingest_out, "Sorted unique output")->required();
  ingest->add_flag("--lenient", lenient, "Skip malformed lines instead of failing");
  ingest->add_option("--chunk", chunk, "Digests per in-memory run");
  ingest->add_option("--temp-dir", temp_dir, "Where spilled runs go");

  // prefixlen
  std::string prefix_in;
  auto* prefixlen = app.add_subcommand("prefixlen", "Minimum l-diverse prefix length");
  prefixlen->add_option("sorted-file", prefix_in, "Sorted unique digests")->required();

  // bucketize
  std::string bucket_in, bucket_out, bucket_format = "store";
  size_t bucket_len = 5;
  auto* bucketize = app.add_subcommand("bucketize", "Group digests by prefix");
  bucketize->add_option("--len", bucket_len, "Prefix length in hex characters")->required();
  bucketize->add_option("--format", bucket_format, "files or store")
      ->check(CLI::IsMember({"files", "store"}));
  bucketize->add_option("in", bucket_in, "Sorted unique digests")->required();
  bucketize->add_option("out", bucket_out, "Directory (files) or store file")->required();

  // stats
  std::string stats_store;
  auto* stats = app.add_subcommand("stats", "Bucket statistics of a range store");
  stats->add_option("store", stats_store, "Store written by bucketize")->required();

  // build / serve
  std::string build_config, serve_config;
  auto* build = app.add_subcommand("build", "Precompute every configured store");
  build->add_option("--config", build_config, "Service configuration")->required();
  auto* serve = app.add_subcommand("serve", "Serve the built stores over HTTP");
  serve->add_option("--config", serve_config, "Service configuration")->required();

  // check
  CheckArgs check_args;
  auto* check = app.add_subcommand(
      "check", "Check a password read from standard input (exit 0 not found, 10 found, 2 error)");
  check->add_option("--proto", check_args.proto, "hibp, fsb, gpc or idb")
      ->check(CLI::IsMember({"hibp", "fsb", "gpc", "idb"}));
  check->add_option("--user", check_args.user, "Username (gpc, idb)");
  check->add_option("--server", check_args.server, "Server base URL");
  check->add_option("--estimator", check_args.estimator, "Estimator artifact (fsb)");
  check->add_option("--state", check_args.state, "Client state file (fsb --derandomize)");
  check->add_flag("--derandomize", check_args.derandomize,
                  "Always query the same bucket for a password (fsb)");
  check->add_flag("--json", check_args.json, "Machine-readable output");

  // simulate
  c3::simlab::SimulationOptions sim;
  std::vector<std::string> budgets = {"1,10,100"};
  std::string world_file, policy_file;
  size_t random_passwords = 0, random_users = 3;
  bool csv = false, dependent = false;
  auto* simulate = app.add_subcommand("simulate", "Exact attack advantages on a synthetic world");
  simulate->add_option("--scheme", sim.scheme, "hpb, fsb or idb")
      ->check(CLI::IsMember({"hpb", "fsb", "idb"}));
  simulate->add_option("--q", budgets, "Guess budgets (comma separated or repeated)");
  simulate->add_option("--qbar", sim.q_bar, "FSB tuning budget");
  simulate->add_option("--bits", sim.bits, "Prefix bits for hpb / idb");
  simulate->add_option("--fsb-buckets", sim.fsb_buckets, "FSB bucket count");
  auto* world_opt = simulate->add_option("--world", world_file, "World JSON file");
  auto* random_opt =
      simulate->add_option("--random", random_passwords, "Random world with N passwords");
  world_opt->excludes(random_opt);
  simulate->add_option("--users", random_users, "Users in a random world");
  simulate->add_flag("--dependent", dependent, "Random world with user-specific preferences");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--policy", policy_file, "Password policy JSON");
  simulate->add_flag("--correlated", sim.correlated, "Add the correlated-query attack");
  simulate->add_option("--trials", sim.correlated_trials, "Correlated game trials");
  simulate->add_flag("--csv", csv, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*ingest) {
      c3::pipeline::PreprocessOptions opts;
      opts.malformed = lenient ? c3::pipeline::MalformedPolicy::kLenient
                               : c3::pipeline::MalformedPolicy::kStrict;
      opts.chunk_entries = chunk;
      if (!temp_dir.empty()) opts.temp_dir = temp_dir;
      std::ifstream in(ingest_in);
      if (!in) throw c3::ConfigError("cannot read " + ingest_in);
      std::ofstream out(ingest_out, std::ios::trunc);
      if (!out) throw c3::ConfigError("cannot write " + ingest_out);
      const auto s = c3::pipeline::Preprocess(in, out, opts);
      out.close();
      if (!out) throw c3::Error("failed writing " + ingest_out);
      std::cout << json{{"lines", s.lines_read},
                        {"unique", s.unique_written},
                        {"skipped", s.skipped},
                        {"runs_spilled", s.runs_spilled}}
                       .dump()
                << "\n";
    } else if (*prefixlen) {
      c3::pipeline::FileHashSource src(prefix_in, /*sorted=*/true);
      std::cout << c3::pipeline::MinPrefixLength(src) << "\n";
    } else if (*bucketize) {
      c3::pipeline::FileHashSource src(bucket_in, /*sorted=*/true);
      c3::pipeline::BucketStats s;
      if (bucket_format == "files") {
        s = c3::pipeline::ExportBucketFiles(src, bucket_len, bucket_out);
      } else {
        c3::server::SortedFileKvWriter writer(bucket_out);
        s = c3::pipeline::ExportBucketStore(src, bucket_len, writer);
      }
      std::cout << StatsJson(s).dump(2) << "\n";
    } else if (*stats) {
      auto store = c3::server::SortedFileKvStore::Open(stats_store);
      std::cout << StatsJson(c3::pipeline::StoreBucketStats(*store)).dump(2) << "\n";
    } else if (*build) {
      const auto config = c3::server::LoadServiceConfig(build_config);
      std::cout << c3::server::BuildStores(config, &std::cerr);
    } else if (*serve) {
      return RunServe(serve_config);
    } else if (*check) {
      return RunCheck(check_args);
    } else if (*simulate) {
      if (world_file.empty() && random_passwords == 0) {
        throw c3::ConfigError("simulate needs --world or --random");
      }
      sim.budgets = ParseBudgets(budgets);
      if (!policy_file.empty()) sim.policy = c3::simlab::PasswordPolicy::Load(policy_file);
      std::optional<c3::simlab::SyntheticWorld> world;
      if (!world_file.empty()) {
        world = c3::simlab::SyntheticWorld::Load(world_file);
      } else {
        c3::simlab::RandomWorldOptions w;
        w.users = random_users;
        w.passwords = random_passwords;
        w.independent = !dependent;
        world = c3::simlab::SyntheticWorld::Random(w, sim.seed);
      }
      std::cout << c3::simlab::FormatRows(c3::simlab::Simulate(*world, sim), csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "c3: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
