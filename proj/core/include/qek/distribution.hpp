// Copyright 2026 The qek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qek {

using BinId = std::int64_t;

/// Normalized distribution over integer-labeled outcome bins.
///
/// Bin ids are strictly increasing and probabilities are non-negative and sum
/// to one. Bins not listed carry probability zero, so distributions with
/// different supports compare bin by bin (see align()).
class ProbabilityDistribution {
 public:
  /// Point mass at bin 0.
  ProbabilityDistribution();

  /// Normalizes `weights` to sum one. Throws std::invalid_argument on size
  /// mismatch, non-increasing ids, negative or non-finite weights, or zero
  /// total mass.
  static ProbabilityDistribution from_weights(std::vector<BinId> bin_ids, std::vector<double> weights);
  /// Bins 0..K-1.
  static ProbabilityDistribution from_weights(std::vector<double> weights);
  static ProbabilityDistribution point_mass(BinId bin);

  const std::vector<BinId>& bin_ids() const noexcept { return bins_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return bins_.size(); }

  /// Probability of `bin` (zero when absent).
  double prob(BinId bin) const;

  friend bool operator==(const ProbabilityDistribution&, const ProbabilityDistribution&) = default;

 private:
  std::vector<BinId> bins_;
  std::vector<double> probs_;
};

/// Two distributions expressed on the union of their bin ids, zero-filled.
struct AlignedPair {
  std::vector<BinId> bins;
  std::vector<double> p;
  std::vector<double> q;
};

AlignedPair align(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

/// Sum of |p_k - q_k| / 2 over the aligned support.
double total_variation(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

}  // namespace qek
