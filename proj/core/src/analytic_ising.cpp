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

#include "qek/analytic_ising.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qek {

namespace {

void require_uniform(const Graph& g, const char* what) {
  if (!g.is_uniform())
    throw std::invalid_argument(std::string(what) +
                                ": graph carries node fields or edge weights; use occupation_trace_generic");
}

double binomial_real(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Complex int_pow(Complex base, int exp) {
  Complex result(1.0, 0.0);
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

}  // namespace

RamseyConfig RamseyConfig::for_graph(const Graph& graph, double theta) {
  RamseyConfig c;
  c.theta = theta;
  c.num_components = degree_histogram(graph).max_degree() + 1;
  c.time_samples = std::max(64, 4 * c.num_components + 1);
  return c;
}

void RamseyConfig::validate() const {
  if (!(theta >= 0.0 && theta <= kPi / 2 + 1e-15))
    throw std::invalid_argument("RamseyConfig: theta must lie in [0, pi/2]");
  if (num_components < 1) throw std::invalid_argument("RamseyConfig: K must be >= 1");
  if (time_samples < 2 * num_components)
    throw std::invalid_argument("RamseyConfig: time_samples must be >= 2K");
  if (!(period > 0.0)) throw std::invalid_argument("RamseyConfig: period must be positive");
}

double occupation_trace(const Graph& graph, double theta, double t) {
  require_uniform(graph, "occupation_trace");
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const auto hist = degree_histogram(graph);
  const Complex base(c2 + s2 * std::cos(t), s2 * std::sin(t));
  double sum = 0.0;
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    if (hist.counts[k] == 0) continue;
    const Complex w = int_pow(base, static_cast<int>(k));
    sum += hist.counts[k] * (1.0 - w.real());
  }
  return 2.0 * c2 * s2 * sum;
}

double occupation_trace_generic(const Graph& graph, double theta, double t) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  double sum = 0.0;
  for (int i = 0; i < graph.num_nodes(); ++i) {
    Complex prod = std::polar(1.0, graph.node_field(i) * t);
    for (int j : graph.neighbors(i)) {
      const double J = graph.edge_weight(static_cast<std::size_t>(graph.edge_index(i, j)));
      prod *= Complex(c2, 0.0) + s2 * std::polar(1.0, J * t);
    }
    sum += 1.0 - prod.real();
  }
  return 2.0 * s2 * c2 * sum;
}

Eigen::MatrixXd feature_basis_vectors(double theta, int max_degree, int num_components) {
  if (max_degree < 0 || num_components < 1)
    throw std::invalid_argument("feature_basis_vectors: need max_degree >= 0 and K >= 1");
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(num_components, max_degree + 1);
  for (int kappa = 0; kappa <= max_degree; ++kappa)
    V(0, kappa) = 2.0 * c2 * s2 * (1.0 - std::pow(c2, kappa));
  for (int k = 1; k < num_components; ++k) {
    const double sk = std::pow(s2, 1 + k);
    for (int kappa = k; kappa <= max_degree; ++kappa)
      V(k, kappa) = sk * binomial_real(kappa, k) * std::pow(c2, kappa + 1 - k);
  }
  return V;
}

std::vector<double> fourier_components(const Graph& graph, double theta, int num_components) {
  require_uniform(graph, "fourier_features");
  const auto hist = degree_histogram(graph);
  const int max_degree = std::max(0, static_cast<int>(hist.counts.size()) - 1);
  const Eigen::MatrixXd V = feature_basis_vectors(theta, max_degree, num_components);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(max_degree + 1);
  for (std::size_t k = 0; k < hist.counts.size(); ++k) m(static_cast<Eigen::Index>(k)) = hist.counts[k];
  const Eigen::VectorXd p = V * m;
  return {p.data(), p.data() + p.size()};
}

ProbabilityDistribution fourier_features(const Graph& graph, const RamseyConfig& config) {
  config.validate();
  auto p = fourier_components(graph, config.theta, config.num_components);
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total < 1e-14) return ProbabilityDistribution::point_mass(0);
  return ProbabilityDistribution::from_weights(std::move(p));
}

std::vector<double> steady_state_features(const Graph& graph, double theta) {
  require_uniform(graph, "steady_state_features");
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  std::vector<double> out(static_cast<std::size_t>(graph.num_nodes()));
  for (int i = 0; i < graph.num_nodes(); ++i)
    out[i] = 2.0 * c2 * s2 * (1.0 - std::pow(c2, graph.degree(i)));
  return out;
}

std::vector<double> sample_occupation_trace(const Graph& graph, double theta, double period, int samples) {
  if (samples < 2) throw std::invalid_argument("sample_occupation_trace: need at least two samples");
  std::vector<double> trace(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j)
    trace[j] = occupation_trace(graph, theta, period * j / (samples - 1));
  return trace;
}

}  // namespace qek
