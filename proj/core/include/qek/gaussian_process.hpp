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
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qek {

enum class CovarianceFamily { Matern, RBF };

const char* to_string(CovarianceFamily family);

/// Weighted squared distance sum_i w_i (x_i - x'_i)^2.
double weighted_sq_distance(std::span<const double> x, std::span<const double> x2, std::span<const double> weights);

/// Unit-amplitude Matern correlation at distance r via the modified Bessel
/// function of the second kind.
double matern_bessel(double r, double nu);

/// Closed forms for nu in {1/2, 3/2, 5/2}.
double matern_half_integer(double r, double nu);

/// amplitude * Matern(r) with r the weighted distance. Half-integer nu uses
/// the closed form, other nu the Bessel form.
double matern_kernel(std::span<const double> x, std::span<const double> x2, double nu, double amplitude,
                     std::span<const double> weights);

/// amplitude * exp(-||x - x'||^2_w).
double rbf_kernel(std::span<const double> x, std::span<const double> x2, double amplitude,
                  std::span<const double> weights);

struct CovarianceSpec {
  CovarianceFamily family = CovarianceFamily::Matern;
  double nu = 2.5;
  double amplitude = 1.0;
  /// Per-dimension weights; empty means all ones.
  std::vector<double> weights;

  double operator()(std::span<const double> x, std::span<const double> x2) const;
};

struct GPOptions {
  double initial_jitter = 1e-8;
  double max_jitter = 1e-2;
  /// Refit amplitude and weights by maximizing the log marginal likelihood.
  bool optimize_hyperparameters = true;
  int restarts = 3;
  std::uint64_t seed = 0;
};

struct Posterior {
  double mean = 0.0;
  double stddev = 0.0;
  /// Variance before clipping at zero.
  double raw_variance = 0.0;
};

/// GP regression with a constant mean equal to the sample mean and targets
/// scaled to unit variance.
class GaussianProcess {
 public:
  GaussianProcess() = default;

  /// X is n x d. Throws ConvergenceError if the Gram matrix cannot be
  /// factorized even at the maximum jitter.
  void fit(Eigen::MatrixXd X, Eigen::VectorXd y, CovarianceSpec covariance, const GPOptions& options = {});

  Posterior posterior(std::span<const double> x) const;

  /// Joint posterior draw at the rows of `points`.
  Eigen::VectorXd sample_joint(const Eigen::MatrixXd& points, std::mt19937_64& rng) const;

  double log_marginal_likelihood() const noexcept { return lml_; }
  const CovarianceSpec& covariance() const noexcept { return cov_; }
  double jitter() const noexcept { return jitter_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(X_.rows()); }

 private:
  bool factorize(const CovarianceSpec& cov, double initial_jitter, double max_jitter);
  double evaluate_lml(const CovarianceSpec& cov, double jitter, bool* ok) const;

  Eigen::MatrixXd X_;
  Eigen::VectorXd z_;  // standardized targets
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  CovarianceSpec cov_;
  double jitter_ = 0.0;
  Eigen::MatrixXd L_;
  Eigen::VectorXd alpha_;
  double lml_ = 0.0;
};

/// mu - kappa * sigma; smaller is better.
double lcb(const GaussianProcess& gp, std::span<const double> x, double kappa);

}  // namespace qek
