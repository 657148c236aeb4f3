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

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qek/svm.hpp"

namespace qek {

/// 10^-3 .. 10^3, seven points.
std::vector<double> default_c_grid();

/// n log-spaced points between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

struct CVOptions {
  int folds = 10;
  int repeats = 10;
  std::vector<double> c_grid = default_c_grid();
  std::uint64_t seed = 0;
  SVMOptions svm;
  int workers = 1;
};

struct CVReport {
  /// Accuracy over every fold of every repeat, using each repeat's chosen C.
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  /// repeats * folds entries, repeat-major.
  std::vector<double> fold_accuracies;
  /// One chosen C per repeat (best mean fold accuracy, ties to the smaller C).
  std::vector<double> chosen_c;
  /// Alternative protocol: best C picked independently for each fold.
  double per_fold_best_mean = 0.0;
  double per_fold_best_std = 0.0;
  /// Folds (repeat * folds + fold) whose training part held a single class.
  std::vector<int> flagged_folds;
  std::vector<std::uint64_t> repeat_seeds;
};

nlohmann::json to_json(const CVReport& report);

/// Held-out accuracy of a one-vs-one SVM trained on `train`, scored on `test`.
/// With a single training class every test point gets that class.
double holdout_accuracy(const Eigen::MatrixXd& K, std::span<const int> labels, std::span<const int> train,
                        std::span<const int> test, double C, const SVMOptions& options, bool* degenerate = nullptr);

/// Repeated k-fold cross-validation of a one-vs-one SVM over a C grid.
CVReport cross_validate(const Eigen::MatrixXd& K, std::span<const int> labels, const CVOptions& options);

}  // namespace qek
