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

#include <Eigen/Dense>

namespace qek {

struct KRRModel {
  Eigen::VectorXd weights;
  double lambda = 1.0;
};

/// Solves (K + lambda I) a = y by Cholesky, falling back to LDLT for
/// matrices that are not numerically positive definite.
KRRModel krr_train(const Eigen::MatrixXd& K, std::span<const double> y, double lambda);

double krr_predict(const KRRModel& model, std::span<const double> k_row);

}  // namespace qek
