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

#include "qek/multikernel.hpp"

#include <stdexcept>

namespace qek {

MultikernelResult optimize_multikernel(std::span<const KernelMatrix> kernels, std::span<const int> labels,
                                       const MultikernelOptions& options) {
  const int R = static_cast<int>(kernels.size());
  if (R < 1) throw std::invalid_argument("optimize_multikernel: no kernels");
  for (const auto& k : kernels)
    if (k.values.rows() != static_cast<long>(labels.size()) || k.values.cols() != static_cast<long>(labels.size()))
      throw std::invalid_argument("optimize_multikernel: kernel and label sizes differ");

  auto score_of = [&](const std::vector<double>& p) {
    const KernelMatrix combined = combine_kernels(kernels, p);
    return cross_validate(combined.values, labels, options.cv).mean_accuracy;
  };

  MultikernelResult result;
  if (R == 1) {
    result.weights = {1.0};
    result.score = score_of(result.weights);
    result.single_scores = {result.score};
    result.search.best_x = result.weights;
    result.search.best_value = -result.score;
    result.search.history.push_back({0, result.weights, -result.score, 0.0});
    return result;
  }

  BOConfig bo;
  bo.bounds.assign(R, {0.0, 1.0});
  bo.budget = options.budget > 0 ? options.budget : 50 * R;
  bo.n_init = options.n_init > 0 ? options.n_init : 20 * R;
  bo.kappa = options.kappa;
  bo.candidates = options.candidates;
  bo.seed = options.seed;
  bo.covariance.family = CovarianceFamily::RBF;
  for (int r = 0; r < R; ++r) {
    std::vector<double> onehot(R, 0.0);
    onehot[r] = 1.0;
    bo.initial_points.push_back(std::move(onehot));
  }
  if (bo.budget < R) throw std::invalid_argument("optimize_multikernel: budget must cover the one-hot vectors");

  result.search = bayes_optimize([&](const std::vector<double>& p) { return -score_of(p); }, bo);
  result.weights = result.search.best_x;
  result.score = -result.search.best_value;
  for (int r = 0; r < R; ++r) result.single_scores.push_back(-result.search.history[r].value);
  return result;
}

}  // namespace qek
