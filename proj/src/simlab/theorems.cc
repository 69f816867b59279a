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

#include "c3/simlab/theorems.h"

#include <cmath>
#include <sstream>

#include "c3/core/errors.h"
#include "c3/simlab/advantage.h"

namespace c3::simlab {

namespace {

std::string Dump(const SyntheticWorld& world, const BoundCheck& c,
                 std::string_view extra) {
  std::ostringstream out;
  out.precision(17);
  out << c.name << " violated at q=" << c.q << ": observed " << c.observed
      << ", bounds [" << c.lower << ", " << c.upper << "]";
  if (!extra.empty()) out << "; " << extra;
  out << "\n  users:";
  for (size_t u = 0; u < world.num_users(); ++u) {
    out << " " << world.user(u) << "=" << world.user_mass(u);
  }
  out << "\n  passwords by mass:";
  for (size_t w : world.ByMass()) {
    out << " " << world.password(w) << "=" << world.password_mass(w);
  }
  return out.str();
}

void Judge(const SyntheticWorld& world, BoundCheck& c, std::string_view extra) {
  c.lower_ok = c.observed >= c.lower - kBoundTolerance;
  c.upper_ok = c.observed <= c.upper + kBoundTolerance;
  if (!c.holds()) c.counterexample = Dump(world, c, extra);
}

}  // namespace

BoundCheck CheckHpbBound(const SyntheticWorld& world, const HpbBucketizer& hpb,
                         int64_t q) {
  BoundCheck c;
  c.name = "hpb-bound";
  c.q = q;
  c.observed = AdvBucket(world, hpb, q);
  c.lower = -INFINITY;
  const auto widened = static_cast<int64_t>(std::min<uint64_t>(
      static_cast<uint64_t>(q) * hpb.num_buckets(), world.num_passwords()));
  c.upper = AdvGuess(world, widened);
  Judge(world, c, "");
  return c;
}

BoundCheck CheckIdbEquality(const SyntheticWorld& world,
                            const IdbBucketizer& idb, int64_t q) {
  BoundCheck c;
  c.name = "idb-equality";
  c.q = q;
  c.observed = SecurityLoss(world, idb, q);
  Judge(world, c, "");
  return c;
}

BoundCheck CheckFsbBounds(const SyntheticWorld& world, const FsbBucketizer& fsb,
                          int64_t q) {
  if (!world.independent()) {
    throw InvalidArgument("FSB bounds need a product-distribution world");
  }
  const auto& params = fsb.scheme().params();
  const auto q_bar = static_cast<int64_t>(params.q_bar);
  BoundCheck c;
  c.q = q;
  c.observed = SecurityLoss(world, fsb, q);
  if (q <= q_bar) {
    c.name = "fsb-zero-loss";
  } else {
    c.name = "fsb-bounds";
    const double gap = Lambda(world, q) - Lambda(world, q_bar);
    const double p_qbar =
        world.password_mass(world.ByMass()[static_cast<size_t>(q_bar) - 1]);
    c.lower = gap / 2;
    c.upper = static_cast<double>(q - q_bar) * p_qbar - gap;
  }
  std::ostringstream extra;
  extra << "q_bar=" << q_bar << " |B|=" << params.num_buckets;
  Judge(world, c, extra.str());
  return c;
}

std::vector<BoundCheck> CheckTheorems(const SyntheticWorld& world,
                                      const TheoremOptions& options) {
  std::vector<BoundCheck> out;
  const HpbBucketizer hpb(options.hpb_bits);
  const IdbBucketizer idb(options.idb_bits);
  const auto n = static_cast<int64_t>(world.num_passwords());
  for (int64_t q = 1; q <= n; ++q) {
    out.push_back(CheckHpbBound(world, hpb, q));
    out.push_back(CheckIdbEquality(world, idb, q));
  }
  if (world.independent() && options.q_bar <= world.num_passwords()) {
    const auto fsb =
        FsbBucketizer::Exact(world, options.fsb_buckets, options.q_bar);
    for (int64_t q = 1; q <= n; ++q) out.push_back(CheckFsbBounds(world, fsb, q));
  }
  return out;
}

}  // namespace c3::simlab
