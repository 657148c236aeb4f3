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

#include <vector>

#include <Eigen/Dense>

#include "qek/distribution.hpp"
#include "qek/graph.hpp"

namespace qek {

/// Depth-1 Ramsey protocol {theta, t, -theta} on the Ising graph Hamiltonian,
/// observed through the total occupation.
struct RamseyConfig {
  double theta = kPi / 4;
  /// Number of Fourier components K (k = 0..K-1).
  int num_components = 1;
  /// Length of the time window of the finite-T Fourier path.
  double period = 2 * kPi;
  /// Grid size of the finite-T Fourier path.
  int time_samples = 64;

  /// K = max degree + 1 and a grid of max(64, 4K) samples.
  static RamseyConfig for_graph(const Graph& graph, double theta);
  void validate() const;
};

/// Closed-form mean occupation after {theta, t, -theta}:
///   n(t) = 2 cos^2 s sin^2 s * sum_k m(k) Re{1 - (cos^2 s + e^{it} sin^2 s)^k}.
/// Requires a uniform graph (no node fields, no edge weights).
double occupation_trace(const Graph& graph, double theta, double t);

/// Closed form for graphs with node fields h_i and edge weights J_ij:
///   n(t) = 2 sin^2 cos^2 * sum_i Re{1 - e^{i h_i t} prod_{j ~ i}(cos^2 + sin^2 e^{i J_ij t})}.
double occupation_trace_generic(const Graph& graph, double theta, double t);

/// Rows k = 0..K-1, columns kappa = 0..max_degree:
///   V_0[kappa] = 2 c^2 s^2 (1 - c^{2 kappa})
///   V_k[kappa] = s^{2(1+k)} C(kappa, k) c^{2(kappa+1-k)}   (zero for kappa < k).
Eigen::MatrixXd feature_basis_vectors(double theta, int max_degree, int num_components);

/// T -> infinity Fourier spectrum p_k = m_G . V_k, normalized to sum one.
/// An (all-zero) spectrum below 1e-14 becomes a point mass at k = 0.
ProbabilityDistribution fourier_features(const Graph& graph, const RamseyConfig& config);

/// Unnormalized components p_k = m_G . V_k.
std::vector<double> fourier_components(const Graph& graph, double theta, int num_components);

/// Time-averaged occupation of every site: 2 c^2 s^2 (1 - c^{2 kappa_i}).
std::vector<double> steady_state_features(const Graph& graph, double theta);

/// Samples occupation_trace on t_j = j * period / (samples - 1), j = 0..samples-1.
std::vector<double> sample_occupation_trace(const Graph& graph, double theta, double period, int samples);

}  // namespace qek
