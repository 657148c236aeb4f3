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

#include "qek/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qek {

ProbabilityDistribution::ProbabilityDistribution() : bins_{0}, probs_{1.0} {}

ProbabilityDistribution ProbabilityDistribution::from_weights(std::vector<BinId> bin_ids,
                                                              std::vector<double> weights) {
  if (bin_ids.size() != weights.size())
    throw std::invalid_argument("ProbabilityDistribution: bin/weight size mismatch");
  if (bin_ids.empty()) throw std::invalid_argument("ProbabilityDistribution: empty support");
  for (std::size_t i = 1; i < bin_ids.size(); ++i)
    if (bin_ids[i] <= bin_ids[i - 1])
      throw std::invalid_argument("ProbabilityDistribution: bin ids must be strictly increasing");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw std::invalid_argument("ProbabilityDistribution: weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("ProbabilityDistribution: zero total mass");
  for (double& w : weights) w /= total;
  ProbabilityDistribution d;
  d.bins_ = std::move(bin_ids);
  d.probs_ = std::move(weights);
  return d;
}

ProbabilityDistribution ProbabilityDistribution::from_weights(std::vector<double> weights) {
  std::vector<BinId> ids(weights.size());
  std::iota(ids.begin(), ids.end(), BinId{0});
  return from_weights(std::move(ids), std::move(weights));
}

ProbabilityDistribution ProbabilityDistribution::point_mass(BinId bin) {
  ProbabilityDistribution d;
  d.bins_ = {bin};
  return d;
}

double ProbabilityDistribution::prob(BinId bin) const {
  auto it = std::lower_bound(bins_.begin(), bins_.end(), bin);
  if (it == bins_.end() || *it != bin) return 0.0;
  return probs_[static_cast<std::size_t>(it - bins_.begin())];
}

AlignedPair align(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  AlignedPair out;
  const auto& a = p.bin_ids();
  const auto& b = q.bin_ids();
  out.bins.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.bins.push_back(a[i]);
      out.p.push_back(p.probs()[i++]);
      out.q.push_back(0.0);
    } else if (i == a.size() || b[j] < a[i]) {
      out.bins.push_back(b[j]);
      out.p.push_back(0.0);
      out.q.push_back(q.probs()[j++]);
    } else {
      out.bins.push_back(a[i]);
      out.p.push_back(p.probs()[i++]);
      out.q.push_back(q.probs()[j++]);
    }
  }
  return out;
}

double total_variation(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  const auto al = align(p, q);
  double s = 0.0;
  for (std::size_t k = 0; k < al.bins.size(); ++k) s += std::abs(al.p[k] - al.q[k]);
  return 0.5 * s;
}

}  // namespace qek
