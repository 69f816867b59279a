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

#include "c3/simlab/experiment.h"

#include <cstdio>
#include <memory>
#include <sstream>

#include "c3/core/errors.h"
#include "c3/simlab/advantage.h"
#include "c3/simlab/bucketizers.h"
#include "c3/simlab/correlated.h"
#include "c3/simlab/theorems.h"

namespace c3::simlab {

std::vector<SimulationRow> Simulate(const SyntheticWorld& world,
                                    const SimulationOptions& options) {
  // Buckets are laid out from what the server believes; users follow the
  // policy when one is given.
  const auto bucketizer = MakeBucketizer(options.scheme, world, options.bits,
                                         options.fsb_buckets, options.q_bar);
  std::optional<SyntheticWorld> restricted;
  if (options.policy) restricted = ApplyPolicy(world, *options.policy);
  const SyntheticWorld& users = restricted ? *restricted : world;
  const BucketAssignment buckets(users, *bucketizer);

  std::unique_ptr<CorrelatedModel> corr;
  std::unique_ptr<BucketAssignment> pw_buckets;
  std::unique_ptr<Bucketizer> pw_bucketizer;
  if (options.correlated) {
    corr = std::make_unique<CorrelatedModel>(users, TweakKernel());
    // The correlated game buckets passwords alone.
    if (options.scheme == "hpb") {
      pw_bucketizer = std::make_unique<HpbBucketizer>(options.bits, false);
      pw_buckets = std::make_unique<BucketAssignment>(users, *pw_bucketizer);
    }
  }

  std::vector<SimulationRow> rows;
  for (int64_t q : options.budgets) {
    SimulationRow row;
    row.q = q;
    row.baseline = AdvGuess(users, q);
    row.bucketed = AdvBucket(users, buckets, q);
    row.delta = row.bucketed - row.baseline;

    std::optional<BoundCheck> check;
    const bool in_range = q >= 1 && q <= static_cast<int64_t>(users.num_passwords());
    if (in_range && options.scheme == "hpb") {
      check = CheckHpbBound(users, static_cast<const HpbBucketizer&>(*bucketizer), q);
    } else if (in_range && options.scheme == "idb") {
      check = CheckIdbEquality(users, static_cast<const IdbBucketizer&>(*bucketizer), q);
    } else if (in_range && options.scheme == "fsb" && !options.policy &&
               users.independent()) {
      check = CheckFsbBounds(users, static_cast<const FsbBucketizer&>(*bucketizer), q);
    }
    if (check) {
      row.bound = check->name + (check->holds() ? " ok" : " VIOLATED");
      if (!check->lower_ok) row.bound_detail = "lower bound fails";
      if (!check->upper_ok) row.bound_detail = "upper bound fails";
    }

    if (corr && q >= 0) {
      const auto& assignment = pw_buckets ? *pw_buckets : buckets;
      const auto g = RunCorrelatedGame(*corr, assignment, static_cast<size_t>(q),
                                       options.correlated_trials, options.seed);
      row.correlated = g.correlated.rate;
      row.single = g.single.rate;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatRows(const std::vector<SimulationRow>& rows, bool csv) {
  const bool with_corr = !rows.empty() && rows.front().correlated.has_value();
  std::ostringstream out;
  char buf[256];
  if (csv) {
    out << "q,baseline,bucketed,delta,bound";
    if (with_corr) out << ",correlated,single";
    out << "\n";
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%lld,%.12g,%.12g,%.12g,%s",
                    static_cast<long long>(r.q), r.baseline, r.bucketed, r.delta,
                    r.bound.c_str());
      out << buf;
      if (with_corr) {
        std::snprintf(buf, sizeof(buf), ",%.6g,%.6g", *r.correlated, *r.single);
        out << buf;
      }
      out << "\n";
    }
    return out.str();
  }
  std::snprintf(buf, sizeof(buf), "%8s  %10s  %10s  %11s  %-14s", "q", "baseline",
                "bucketed", "delta", "bound");
  out << buf;
  if (with_corr) out << "  correlated  single";
  out << "\n";
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%8lld  %10.6f  %10.6f  %11.3e  %-14s",
                  static_cast<long long>(r.q), r.baseline, r.bucketed, r.delta,
                  r.bound.c_str());
    out << buf;
    if (with_corr) {
      std::snprintf(buf, sizeof(buf), "  %10.4f  %6.4f", *r.correlated, *r.single);
      out << buf;
    }
    if (!r.bound_detail.empty()) out << "  (" << r.bound_detail << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace c3::simlab
