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

#include <span>
#include <vector>

#include "qek/bayes_opt.hpp"
#include "qek/cross_validation.hpp"
#include "qek/qe_kernel.hpp"

namespace qek {

struct MultikernelOptions {
  CVOptions cv;
  /// Objective calls; 0 means 50 per kernel.
  int budget = 0;
  /// Initial design size; 0 means 20 per kernel.
  int n_init = 0;
  double kappa = 2.0;
  int candidates = 5000;
  std::uint64_t seed = 0;
};

struct MultikernelResult {
  std::vector<double> weights;
  /// Mean CV accuracy of the combined kernel at `weights`.
  double score = 0.0;
  /// CV accuracy of each kernel alone (the one-hot weight vectors).
  std::vector<double> single_scores;
  BOResult search;
};

/// Maximizes CV accuracy of sum_i p_i K_i over p in [0, 1]^R. The one-hot
/// vectors are part of the initial design.
MultikernelResult optimize_multikernel(std::span<const KernelMatrix> kernels, std::span<const int> labels,
                                       const MultikernelOptions& options = {});

}  // namespace qek
