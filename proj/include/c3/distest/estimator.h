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

#ifndef C3_DISTEST_ESTIMATOR_H_
#define C3_DISTEST_ESTIMATOR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c3/core/credential.h"
#include "c3/distest/histogram.h"
#include "c3/distest/ngram.h"

namespace c3::distest {

struct EstimatorOptions {
  // Histogram head size.
  size_t t = 1'000'000;
  double smoothing = 0.01;
};

// Password probability estimate: exact empirical frequency for the t most
// common passwords, a rescaled 3-gram probability for everything else. The
// rescaling hands the tail exactly the mass the head leaves over.
class HybridEstimator {
 public:
  static constexpr uint32_t kFormatVersion = 1;

  static HybridEstimator Train(const std::map<std::string, uint64_t>& counts,
                               const EstimatorOptions& options = {});
  static HybridEstimator Train(const LeakDataset& dataset,
                               const EstimatorOptions& options = {}) {
    return Train(dataset.password_counts(), options);
  }
  static HybridEstimator FromParts(HistogramModel histogram, NGramModel ngram,
                                   size_t t);

  double Estimate(std::string_view password) const;
  bool IsHead(std::string_view password) const {
    return histogram_.Lookup(password).has_value();
  }

  // The q most likely passwords, descending, ties by password. Without a
  // domain only the head is ranked and q must not exceed it; with a domain
  // every domain password is ranked by Estimate. Throws InvalidArgument when
  // q is out of range.
  std::vector<std::string> TopQ(size_t q) const;
  std::vector<std::string> TopQ(size_t q,
                                std::span<const std::string> domain) const;

  // `count` i.i.d. draws from the n-gram tail model.
  std::vector<std::string> Sample(size_t count, uint64_t seed) const;

  const HistogramModel& histogram() const { return histogram_; }
  const NGramModel& ngram() const { return ngram_; }
  size_t t() const { return t_; }
  double head_mass() const { return histogram_.head_mass(); }
  // n-gram mass of the head passwords.
  double head_ngram_mass() const { return head_ngram_mass_; }
  double tail_scale() const { return tail_scale_; }

  // Versioned binary artifact (layout in docs/formats.md).
  std::string Serialize() const;
  // Verifies the embedded SHA-256; throws ParseError on any mismatch.
  static HybridEstimator Deserialize(std::string_view bytes);
  void Save(const std::filesystem::path& path) const;
  static HybridEstimator Load(const std::filesystem::path& path);

  // Uppercase hex SHA-256 content digest, as embedded in the artifact.
  const std::string& digest() const { return digest_; }

 private:
  HybridEstimator() = default;
  void Finalize();

  HistogramModel histogram_;
  NGramModel ngram_;
  size_t t_ = 0;
  double head_ngram_mass_ = 0;
  double tail_scale_ = 1;
  std::string digest_;
};

}  // namespace c3::distest

#endif  // C3_DISTEST_ESTIMATOR_H_
