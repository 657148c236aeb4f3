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
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qek {

struct SVMOptions {
  /// Stopping tolerance on the maximal KKT violation.
  double tol = 1e-3;
  long max_iterations = 100000;
};

struct SVMModel {
  std::vector<double> alphas;
  std::vector<int> support_indices;
  double bias = 0.0;
  /// Training labels in {-1, +1}.
  std::vector<int> labels;
  double C = 1.0;
  long iterations = 0;
  bool converged = false;
};

/// Dual soft-margin SVM solved by SMO with maximal-violating-pair working
/// set selection and second-order choice of the partner index.
SVMModel svm_train(const Eigen::MatrixXd& K, std::span<const int> y, double C, const SVMOptions& options = {});

/// sum_i y_i alpha_i k_i + b over support vectors. k_row holds kernel values
/// against every training point.
double svm_decision(const SVMModel& model, std::span<const double> k_row);

/// +1 on a zero decision value.
int svm_predict(const SVMModel& model, std::span<const double> k_row);

/// 1/2 a^T Q a - e^T a with Q_ij = y_i y_j K_ij.
double svm_dual_objective(const Eigen::MatrixXd& K, std::span<const int> y, std::span<const double> alphas);

struct OneVsOneModel {
  std::vector<int> classes;
  std::vector<std::pair<int, int>> pairs;
  std::vector<SVMModel> models;
  /// Training-set indices used by each pairwise model.
  std::vector<std::vector<int>> members;

  std::size_t num_models() const noexcept { return models.size(); }
};

/// One binary model per class pair; in each, the smaller class id maps to +1.
OneVsOneModel one_vs_one_train(const Eigen::MatrixXd& K, std::span<const int> labels, double C,
                               const SVMOptions& options = {});

/// Plurality vote; ties go to the smallest class id. k_row covers the full
/// training set.
int one_vs_one_predict(const OneVsOneModel& model, std::span<const double> k_row);

}  // namespace qek
