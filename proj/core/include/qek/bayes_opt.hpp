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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qek/gaussian_process.hpp"

namespace qek {

struct BOConfig {
  std::vector<std::pair<double, double>> bounds;
  int n_init = 10;
  int budget = 50;
  double kappa = 2.0;
  int candidates = 5000;
  /// Parallel workers; above 1 each batch member comes from an independent
  /// posterior draw.
  int workers = 1;
  /// Candidate pool size for the posterior draws (clamped to `candidates`).
  int thompson_candidates = 1000;
  std::uint64_t seed = 0;
  CovarianceSpec covariance;
  GPOptions gp;
  /// Evaluated first, before the random part of the initial design.
  std::vector<std::vector<double>> initial_points;
  /// When set, each evaluation is appended here as a JSON line.
  std::string history_path;

  void validate() const;
};

struct Evaluation {
  int iteration = 0;
  std::vector<double> x;
  double value = 0.0;
  double wall_time_s = 0.0;
};

nlohmann::json to_json(const Evaluation& e);
Evaluation evaluation_from_json(const nlohmann::json& j);

/// JSON-lines history as written through BOConfig::history_path.
std::vector<Evaluation> read_history(std::istream& in);

struct BOResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  std::vector<Evaluation> history;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Minimizes the objective over the box. Previous evaluations passed as
/// warm_start count toward the budget. The objective must be thread-safe
/// when workers > 1.
BOResult bayes_optimize(const Objective& objective, const BOConfig& config,
                        std::span<const Evaluation> warm_start = {});

}  // namespace qek
