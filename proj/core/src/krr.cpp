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

#include "qek/krr.hpp"

#include <cmath>
#include <stdexcept>

#include "qek/common.hpp"

namespace qek {

KRRModel krr_train(const Eigen::MatrixXd& K, std::span<const double> y, double lambda) {
  const long n = K.rows();
  if (K.cols() != n || static_cast<long>(y.size()) != n) throw std::invalid_argument("krr_train: size mismatch");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("krr_train: lambda must be > 0");
  if (!K.allFinite()) throw std::invalid_argument("krr_train: kernel has non-finite entries");
  const Eigen::Map<const Eigen::VectorXd> rhs(y.data(), n);
  if (!rhs.allFinite()) throw std::invalid_argument("krr_train: targets have non-finite entries");

  Eigen::MatrixXd A = K;
  A.diagonal().array() += lambda;
  KRRModel m;
  m.lambda = lambda;
  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() == Eigen::Success) {
    m.weights = llt.solve(rhs);
  } else {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw ConvergenceError("krr_train: factorization failed");
    m.weights = ldlt.solve(rhs);
  }
  if (!m.weights.allFinite()) throw ConvergenceError("krr_train: solution is not finite");
  return m;
}

double krr_predict(const KRRModel& model, std::span<const double> k_row) {
  if (static_cast<long>(k_row.size()) != model.weights.size())
    throw std::invalid_argument("krr_predict: kernel row length mismatch");
  return Eigen::Map<const Eigen::VectorXd>(k_row.data(), model.weights.size()).dot(model.weights);
}

}  // namespace qek
