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

#ifndef C3_SIMLAB_EXPERIMENT_H_
#define C3_SIMLAB_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c3/simlab/policy.h"
#include "c3/simlab/world.h"

namespace c3::simlab {

struct SimulationOptions {
  std::string scheme = "hpb";  // hpb | fsb | idb
  std::vector<int64_t> budgets = {1, 10, 100};
  uint64_t q_bar = 10;
  // Prefix bits for hpb / idb.
  unsigned bits = 4;
  uint64_t fsb_buckets = 64;
  // Enforced on the users; the server-side buckets still come from the
  // unrestricted world.
  std::optional<PasswordPolicy> policy;
  bool correlated = false;
  size_t correlated_trials = 10'000;
  uint64_t seed = 1;
};

struct SimulationRow {
  int64_t q = 0;
  double baseline = 0;
  double bucketed = 0;
  double delta = 0;
  // "ok", "VIOLATED" or "n/a" (bound not applicable, e.g. p-hat != p).
  std::string bound = "n/a";
  std::string bound_detail;
  std::optional<double> correlated;
  std::optional<double> single;
};

std::vector<SimulationRow> Simulate(const SyntheticWorld& world,
                                    const SimulationOptions& options);

// Aligned text table, or CSV with a header row.
std::string FormatRows(const std::vector<SimulationRow>& rows, bool csv);

}  // namespace c3::simlab

#endif  // C3_SIMLAB_EXPERIMENT_H_
