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

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qek/distribution.hpp"

namespace qek {

/// Natural-log entropy with 0 log 0 = 0.
double shannon_entropy(const ProbabilityDistribution& p);

/// Jensen-Shannon divergence after aligning supports by bin id; in [0, ln 2].
double js_divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q);

/// exp(-mu * JS(p, q)), in [2^-mu, 1].
double qe_kernel(const ProbabilityDistribution& p, const ProbabilityDistribution& q, double mu = 1.0);

struct KernelMatrix {
  std::vector<long> graph_ids;
  Eigen::MatrixXd values;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
  /// Throws when ids and matrix shape disagree or the matrix is not square.
  void validate() const;
};

/// Pairwise QE kernel. Entries with i <= j are computed and mirrored.
/// When ids is empty the ids are 0..n-1.
KernelMatrix kernel_matrix(std::span<const ProbabilityDistribution> dists, double mu = 1.0,
                           std::vector<long> ids = {}, int workers = 1);

/// |1 - noisy / clean| entrywise.
Eigen::MatrixXd relative_kernel_deviation(const KernelMatrix& noisy, const KernelMatrix& clean);

/// sum_i p_i K_i.
KernelMatrix combine_kernels(std::span<const KernelMatrix> kernels, std::span<const double> weights);

double min_eigenvalue(const KernelMatrix& k);

/// Linear-interpolated empirical quantile (q in [0, 1]) of unsorted data.
double quantile(std::vector<double> values, double q);

/// Entries (i, j) with i < j, row-major.
std::vector<double> upper_triangle(const Eigen::MatrixXd& m);

void write_kernel_csv(std::ostream& out, const KernelMatrix& k);
KernelMatrix read_kernel_csv(std::istream& in);
nlohmann::json kernel_to_json(const KernelMatrix& k);
KernelMatrix kernel_from_json(const nlohmann::json& j);

}  // namespace qek
