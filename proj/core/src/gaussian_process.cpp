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

#include "qek/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "qek/common.hpp"

namespace qek {

const char* to_string(CovarianceFamily family) { return family == CovarianceFamily::Matern ? "matern" : "rbf"; }

double weighted_sq_distance(std::span<const double> x, std::span<const double> x2, std::span<const double> weights) {
  if (x.size() != x2.size()) throw std::invalid_argument("weighted_sq_distance: dimension mismatch");
  if (!weights.empty() && weights.size() != x.size())
    throw std::invalid_argument("weighted_sq_distance: weight count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - x2[i];
    s += (weights.empty() ? 1.0 : weights[i]) * d * d;
  }
  return s;
}

double matern_bessel(double r, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("matern: nu must be > 0");
  if (r < 0.0) throw std::invalid_argument("matern: negative distance");
  if (r == 0.0) return 1.0;
  const double z = std::sqrt(2.0 * nu) * r;
  // Far tail underflows in the Bessel routine.
  if (z > 700.0) return 0.0;
  return std::exp((1.0 - nu) * std::log(2.0) - std::lgamma(nu) + nu * std::log(z)) * std::cyl_bessel_k(nu, z);
}

double matern_half_integer(double r, double nu) {
  if (r < 0.0) throw std::invalid_argument("matern: negative distance");
  if (nu == 0.5) return std::exp(-r);
  if (nu == 1.5) {
    const double z = std::sqrt(3.0) * r;
    return (1.0 + z) * std::exp(-z);
  }
  if (nu == 2.5) {
    const double z = std::sqrt(5.0) * r;
    return (1.0 + z + z * z / 3.0) * std::exp(-z);
  }
  throw std::invalid_argument("matern_half_integer: nu must be 0.5, 1.5 or 2.5");
}

double matern_kernel(std::span<const double> x, std::span<const double> x2, double nu, double amplitude,
                     std::span<const double> weights) {
  if (!(nu > 0.0)) throw std::invalid_argument("matern_kernel: nu must be > 0");
  if (!(amplitude > 0.0)) throw std::invalid_argument("matern_kernel: amplitude must be > 0");
  const double r = std::sqrt(weighted_sq_distance(x, x2, weights));
  const bool half = nu == 0.5 || nu == 1.5 || nu == 2.5;
  return amplitude * (half ? matern_half_integer(r, nu) : matern_bessel(r, nu));
}

double rbf_kernel(std::span<const double> x, std::span<const double> x2, double amplitude,
                  std::span<const double> weights) {
  if (!(amplitude > 0.0)) throw std::invalid_argument("rbf_kernel: amplitude must be > 0");
  return amplitude * std::exp(-weighted_sq_distance(x, x2, weights));
}

double CovarianceSpec::operator()(std::span<const double> x, std::span<const double> x2) const {
  return family == CovarianceFamily::Matern ? matern_kernel(x, x2, nu, amplitude, weights)
                                            : rbf_kernel(x, x2, amplitude, weights);
}

namespace {

std::vector<double> row(const Eigen::MatrixXd& X, long i) {
  std::vector<double> r(X.cols());
  for (long j = 0; j < X.cols(); ++j) r[j] = X(i, j);
  return r;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& X, const CovarianceSpec& cov) {
  const long n = X.rows();
  Eigen::MatrixXd K(n, n);
  std::vector<std::vector<double>> rows(n);
  for (long i = 0; i < n; ++i) rows[i] = row(X, i);
  for (long i = 0; i < n; ++i) {
    K(i, i) = cov(rows[i], rows[i]);
    for (long j = i + 1; j < n; ++j) K(i, j) = K(j, i) = cov(rows[i], rows[j]);
  }
  return K;
}

// Log-parameterization: theta = (log amplitude, log w_1, ..., log w_d).
constexpr double kLogAmpMin = -6.9, kLogAmpMax = 6.9;     // 1e-3 .. 1e3
constexpr double kLogWeightMin = -9.2, kLogWeightMax = 9.2;  // 1e-4 .. 1e4

CovarianceSpec from_theta(const CovarianceSpec& base, const double* theta, std::size_t d) {
  CovarianceSpec c = base;
  c.amplitude = std::exp(std::clamp(theta[0], kLogAmpMin, kLogAmpMax));
  c.weights.resize(d);
  for (std::size_t i = 0; i < d; ++i) c.weights[i] = std::exp(std::clamp(theta[i + 1], kLogWeightMin, kLogWeightMax));
  return c;
}

struct LmlContext {
  const CovarianceSpec* base;
  std::size_t dim;
  double jitter;
  std::function<double(const CovarianceSpec&, double, bool*)> eval;
};

double negative_lml(const gsl_vector* v, void* params) {
  auto* ctx = static_cast<LmlContext*>(params);
  const CovarianceSpec c = from_theta(*ctx->base, v->data, ctx->dim);
  bool ok = false;
  const double lml = ctx->eval(c, ctx->jitter, &ok);
  return ok && std::isfinite(lml) ? -lml : 1e30;
}

}  // namespace

double GaussianProcess::evaluate_lml(const CovarianceSpec& cov, double jitter, bool* ok) const {
  Eigen::MatrixXd K = gram(X_, cov);
  K.diagonal().array() += jitter;
  const Eigen::LLT<Eigen::MatrixXd> llt(K);
  *ok = llt.info() == Eigen::Success;
  if (!*ok) return -std::numeric_limits<double>::infinity();
  const Eigen::VectorXd a = llt.solve(z_);
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * z_.dot(a) - 0.5 * logdet - 0.5 * static_cast<double>(z_.size()) * std::log(2.0 * kPi);
}

bool GaussianProcess::factorize(const CovarianceSpec& cov, double initial_jitter, double max_jitter) {
  const Eigen::MatrixXd K = gram(X_, cov);
  for (double j = initial_jitter; j <= max_jitter * (1.0 + 1e-9); j *= 10.0) {
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += j;
    const Eigen::LLT<Eigen::MatrixXd> llt(Kj);
    if (llt.info() != Eigen::Success) continue;
    L_ = llt.matrixL();
    alpha_ = llt.solve(z_);
    jitter_ = j;
    cov_ = cov;
    const double logdet = 2.0 * L_.diagonal().array().log().sum();
    lml_ = -0.5 * z_.dot(alpha_) - 0.5 * logdet - 0.5 * static_cast<double>(z_.size()) * std::log(2.0 * kPi);
    return true;
  }
  return false;
}

void GaussianProcess::fit(Eigen::MatrixXd X, Eigen::VectorXd y, CovarianceSpec covariance, const GPOptions& options) {
  if (X.rows() < 1) throw std::invalid_argument("GaussianProcess::fit: need at least one observation");
  if (X.rows() != y.size()) throw std::invalid_argument("GaussianProcess::fit: X and y sizes differ");
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("GaussianProcess::fit: non-finite data");
  if (!(options.initial_jitter > 0.0) || options.max_jitter < options.initial_jitter)
    throw std::invalid_argument("GaussianProcess::fit: bad jitter range");
  const std::size_t d = static_cast<std::size_t>(X.cols());
  if (covariance.weights.empty()) covariance.weights.assign(d, 1.0);
  if (covariance.weights.size() != d) throw std::invalid_argument("GaussianProcess::fit: weight count mismatch");
  if (covariance.family == CovarianceFamily::Matern && !(covariance.nu > 0.0))
    throw std::invalid_argument("GaussianProcess::fit: nu must be > 0");

  X_ = std::move(X);
  y_mean_ = y.mean();
  const double var = (y.array() - y_mean_).square().mean();
  y_scale_ = var > 1e-24 ? std::sqrt(var) : 1.0;
  z_ = (y.array() - y_mean_) / y_scale_;

  if (options.optimize_hyperparameters && X_.rows() >= 2) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::size_t np = d + 1;
    LmlContext ctx{&covariance, d, options.initial_jitter,
                   [this](const CovarianceSpec& c, double j, bool* ok) { return evaluate_lml(c, j, ok); }};
    gsl_multimin_function fn{&negative_lml, np, &ctx};
    gsl_vector* start = gsl_vector_alloc(np);
    gsl_vector* step = gsl_vector_alloc(np);
    gsl_vector_set_all(step, 1.0);
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, np);
    gsl_error_handler_t* old_handler = gsl_set_error_handler_off();

    std::vector<double> best_theta(np);
    best_theta[0] = std::log(covariance.amplitude);
    for (std::size_t i = 0; i < d; ++i) best_theta[i + 1] = std::log(covariance.weights[i]);
    for (std::size_t i = 0; i < np; ++i) gsl_vector_set(start, i, best_theta[i]);
    double best = negative_lml(start, &ctx);

    for (int r = 0; r < std::max(options.restarts, 1); ++r) {
      if (r == 0) {
        for (std::size_t i = 0; i < np; ++i) gsl_vector_set(start, i, best_theta[i]);
      } else {
        gsl_vector_set(start, 0, -2.0 + 4.0 * u01(rng));
        for (std::size_t i = 1; i < np; ++i) gsl_vector_set(start, i, -3.0 + 8.0 * u01(rng));
      }
      gsl_multimin_fminimizer_set(s, &fn, start, step);
      for (int it = 0; it < 300; ++it) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-3) == GSL_SUCCESS) break;
      }
      if (s->fval < best) {
        best = s->fval;
        for (std::size_t i = 0; i < np; ++i) best_theta[i] = gsl_vector_get(s->x, i);
      }
    }
    gsl_set_error_handler(old_handler);
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(start);
    covariance = from_theta(covariance, best_theta.data(), d);
  }

  if (!factorize(covariance, options.initial_jitter, options.max_jitter))
    throw ConvergenceError("GaussianProcess::fit: Gram matrix not positive definite at maximum jitter");
}

Posterior GaussianProcess::posterior(std::span<const double> x) const {
  if (X_.rows() == 0) throw std::logic_error("GaussianProcess::posterior: model not fitted");
  if (static_cast<long>(x.size()) != X_.cols()) throw std::invalid_argument("GaussianProcess::posterior: dimension mismatch");
  const long n = X_.rows();
  Eigen::VectorXd k(n);
  for (long i = 0; i < n; ++i) k(i) = cov_(row(X_, i), x);
  const Eigen::VectorXd v = L_.triangularView<Eigen::Lower>().solve(k);
  Posterior p;
  p.mean = y_mean_ + y_scale_ * k.dot(alpha_);
  p.raw_variance = cov_(x, x) - v.squaredNorm();
  p.stddev = y_scale_ * std::sqrt(std::max(p.raw_variance, 0.0));
  p.raw_variance *= y_scale_ * y_scale_;
  return p;
}

Eigen::VectorXd GaussianProcess::sample_joint(const Eigen::MatrixXd& points, std::mt19937_64& rng) const {
  if (X_.rows() == 0) throw std::logic_error("GaussianProcess::sample_joint: model not fitted");
  const long m = points.rows(), n = X_.rows();
  Eigen::MatrixXd Ks(n, m);
  std::vector<std::vector<double>> prow(m);
  for (long j = 0; j < m; ++j) prow[j] = row(points, j);
  for (long i = 0; i < n; ++i) {
    const auto xi = row(X_, i);
    for (long j = 0; j < m; ++j) Ks(i, j) = cov_(xi, prow[j]);
  }
  const Eigen::MatrixXd V = L_.triangularView<Eigen::Lower>().solve(Ks);
  Eigen::MatrixXd C = gram(points, cov_) - V.transpose() * V;
  Eigen::VectorXd mean = (Ks.transpose() * alpha_).array() * y_scale_ + y_mean_;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd z(m);
  for (long j = 0; j < m; ++j) z(j) = gauss(rng);
  for (double jit = jitter_; jit <= 1.0; jit *= 10.0) {
    Eigen::MatrixXd Cj = C;
    Cj.diagonal().array() += jit;
    const Eigen::LLT<Eigen::MatrixXd> llt(Cj);
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXd Lc = llt.matrixL();
      return mean + y_scale_ * (Lc * z);
    }
  }
  throw ConvergenceError("GaussianProcess::sample_joint: posterior covariance not factorizable");
}

double lcb(const GaussianProcess& gp, std::span<const double> x, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("lcb: kappa must be >= 0");
  const Posterior p = gp.posterior(x);
  return p.mean - kappa * p.stddev;
}

}  // namespace qek
