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

// Independent reference implementations used only by the tests. Dense
// operators are assembled from 2x2 matrices with Kronecker products so that
// they share no code with the bit-twiddling simulator.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qek/graph.hpp"
#include "qek/state_vector.hpp"

namespace qek::test {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat pauli_x() { return (Mat(2, 2) << 0, 1, 1, 0).finished(); }
inline Mat pauli_y() { return (Mat(2, 2) << 0, cd(0, -1), cd(0, 1), 0).finished(); }
inline Mat number_op() { return (Mat(2, 2) << 0, 0, 0, 1).finished(); }
inline Mat raise_op() { return (Mat(2, 2) << 0, 0, 1, 0).finished(); }
inline Mat lower_op() { return (Mat(2, 2) << 0, 1, 0, 0).finished(); }

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Qubit q is bit q of the basis index, so qubit n-1 is the leftmost factor.
inline Mat site_op(int n, int q, const Mat& op) {
  Mat out = Mat::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) out = kron(out, k == q ? op : Mat::Identity(2, 2));
  return out;
}

inline Mat pair_op(int n, int a, const Mat& opa, int b, const Mat& opb) {
  return site_op(n, a, opa) * site_op(n, b, opb);
}

inline Mat dense_ising(const Graph& g) {
  const int n = g.num_nodes();
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges()[e];
    h += g.edge_weight(e) * pair_op(n, u, number_op(), v, number_op());
  }
  for (int i = 0; i < n; ++i) h += g.node_field(i) * site_op(n, i, number_op());
  return h;
}

inline Mat dense_xy(const Graph& g) {
  const int n = g.num_nodes();
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges()[e];
    const Mat hop = pair_op(n, u, raise_op(), v, lower_op());
    h += g.edge_weight(e) * (hop + hop.adjoint());
  }
  for (int i = 0; i < n; ++i) h += g.node_field(i) * site_op(n, i, number_op());
  return h;
}

inline Mat dense_hardware(const Graph& weighted, double omega, double delta) {
  const int n = weighted.num_nodes();
  Mat h = dense_ising(weighted);
  for (int i = 0; i < n; ++i) h += 0.5 * omega * site_op(n, i, pauli_x()) - delta * site_op(n, i, number_op());
  return h;
}

inline Mat dense_global_y(int n) {
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (int i = 0; i < n; ++i) h += site_op(n, i, pauli_y());
  return h;
}

inline Mat expm_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::exp(cd(0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Vec to_vec(const StateVector& s) {
  Vec v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

inline StateVector from_vec(const Vec& v) { return StateVector(std::vector<Complex>(v.data(), v.data() + v.size())); }

inline double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Vec basis_vec(int n, std::uint64_t index) {
  Vec v = Vec::Zero(1 << n);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

inline double total_occupation(const Vec& psi) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) s += std::norm(psi(i)) * std::popcount(static_cast<std::uint64_t>(i));
  return s;
}

// {theta, t, -theta} on the Ising Hamiltonian, then <sum n_i>.
inline double dense_ramsey_occupation(const Graph& g, double theta, double t) {
  const int n = g.num_nodes();
  const Mat gy = dense_global_y(n);
  Vec psi = basis_vec(n, 0);
  psi = expm_hermitian(gy, theta) * psi;
  psi = expm_hermitian(dense_ising(g), t) * psi;
  psi = expm_hermitian(gy, -theta) * psi;
  return total_occupation(psi);
}

// ---------------------------------------------------------------------------
// Generators

inline Graph random_graph(std::mt19937_64& rng, int min_nodes, int max_nodes) {
  std::uniform_int_distribution<int> size(min_nodes, max_nodes);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = size(rng);
  const double rho = u(rng);
  return erdos_renyi(n, rho, rng());
}

inline Graph random_weighted_graph(std::mt19937_64& rng, int min_nodes, int max_nodes) {
  Graph g = random_graph(rng, min_nodes, max_nodes);
  std::uniform_real_distribution<double> w(-2.0, 2.0);
  std::vector<double> h(g.num_nodes()), j(g.num_edges());
  for (auto& x : h) x = w(rng);
  for (auto& x : j) x = w(rng);
  g.set_node_fields(h);
  g.set_edge_weights(j);
  return g;
}

inline Vec random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> z(0.0, 1.0);
  Vec v(1 << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(z(rng), z(rng));
  return v / v.norm();
}

inline std::vector<Position> random_positions(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Position> p(n);
  for (auto& x : p) x = {u(rng), u(rng)};
  return p;
}

// Random graph carrying positions; edges are unused by the hardware model.
inline Graph random_positioned_graph(std::mt19937_64& rng, int min_nodes, int max_nodes) {
  Graph g = random_graph(rng, min_nodes, max_nodes);
  g.set_positions(random_positions(rng, g.num_nodes()));
  return g;
}

inline Eigen::MatrixXd random_psd(std::mt19937_64& rng, int n, int rank) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd a(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = z(rng);
  return a * a.transpose();
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Graph(g.num_nodes(), edges);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// ---------------------------------------------------------------------------
// SVM dual reference: accelerated projected gradient on
//   min 1/2 a^T Q a - e^T a,  0 <= a <= C,  y^T a = 0.

inline std::vector<double> project_box_hyperplane(const std::vector<double>& v, const std::vector<int>& y, double C) {
  auto clipped = [&](double mu) {
    std::vector<double> a(v.size());
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      a[i] = std::clamp(v[i] - mu * y[i], 0.0, C);
      s += a[i] * y[i];
    }
    return std::pair{a, s};
  };
  double lo = -1.0, hi = 1.0;
  while (clipped(lo).second < 0.0) lo *= 2.0;
  while (clipped(hi).second > 0.0) hi *= 2.0;
  for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (clipped(mid).second > 0.0 ? lo : hi) = mid;
  }
  return clipped(0.5 * (lo + hi)).first;
}

inline std::vector<double> reference_svm_dual(const Eigen::MatrixXd& K, const std::vector<int>& y, double C,
                                              int iterations = 50000) {
  const int n = static_cast<int>(y.size());
  Eigen::MatrixXd Q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Q(i, j) = y[i] * y[j] * K(i, j);
  const double L = std::max(1e-12, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Q).eigenvalues().maxCoeff());
  std::vector<double> a(n, 0.0), z = a, prev = a;
  double tk = 1.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::Map<const Eigen::VectorXd> zv(z.data(), n);
    const Eigen::VectorXd grad = Q * zv - Eigen::VectorXd::Ones(n);
    std::vector<double> step(n);
    for (int i = 0; i < n; ++i) step[i] = z[i] - grad(i) / L;
    prev = a;
    a = project_box_hyperplane(step, y, C);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    for (int i = 0; i < n; ++i) z[i] = a[i] + (tk - 1.0) / tn * (a[i] - prev[i]);
    tk = tn;
  }
  return a;
}

}  // namespace qek::test
