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

#include "qek/classical_kernels.hpp"
#include "qek/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qek {

namespace {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_nodes(), g.num_nodes());
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
  return a;
}

// y = A_x x with x indexed as u * n2 + u2.
void product_apply(const Graph& g1, const Graph& g2, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const int n2 = g2.num_nodes();
  y.setZero(x.size());
  for (int u = 0; u < g1.num_nodes(); ++u)
    for (int v : g1.neighbors(u))
      for (int u2 = 0; u2 < n2; ++u2) {
        double s = 0.0;
        for (int v2 : g2.neighbors(u2)) s += x(static_cast<long>(v) * n2 + v2);
        y(static_cast<long>(u) * n2 + u2) += s;
      }
}

}  // namespace

double spectral_radius(const Graph& graph) {
  if (graph.num_edges() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_adjacency(graph), Eigen::EigenvaluesOnly);
  return std::max(std::abs(eig.eigenvalues().minCoeff()), std::abs(eig.eigenvalues().maxCoeff()));
}

double random_walk_kernel(const Graph& g1, const Graph& g2, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("random_walk_kernel: lambda must be > 0");
  const double rho = spectral_radius(g1) * spectral_radius(g2);
  if (lambda * rho >= 1.0 - 1e-12)
    throw std::invalid_argument("random_walk_kernel: lambda " + std::to_string(lambda) +
                                " violates the convergence bound 1/rho = " + std::to_string(1.0 / rho));
  const long n = static_cast<long>(g1.num_nodes()) * g2.num_nodes();
  if (n == 0) return 0.0;
  const Eigen::VectorXd e = Eigen::VectorXd::Ones(n);

  if (static_cast<std::size_t>(n) < kRandomWalkDenseLimit) {
    const Eigen::MatrixXd a1 = dense_adjacency(g1);
    const Eigen::MatrixXd a2 = dense_adjacency(g2);
    const long n2 = g2.num_nodes();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (long u = 0; u < a1.rows(); ++u)
      for (long v = 0; v < a1.cols(); ++v)
        if (a1(u, v) != 0.0) m.block(u * n2, v * n2, n2, n2) -= lambda * a1(u, v) * a2;
    const Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) throw ConvergenceError("random_walk_kernel: system is not positive definite");
    return e.dot(llt.solve(e));
  }

  // Conjugate gradient on (I - lambda A_x) x = e.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = e;
  Eigen::VectorXd p = r;
  Eigen::VectorXd ap(n);
  double rr = r.squaredNorm();
  const double stop = 1e-26 * e.squaredNorm();
  for (long it = 0; it < 10 * n + 100 && rr > stop; ++it) {
    product_apply(g1, g2, p, ap);
    ap = p - lambda * ap;
    const double step = rr / p.dot(ap);
    x += step * p;
    r -= step * ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  if (rr > stop) throw ConvergenceError("random_walk_kernel: conjugate gradient did not converge");
  return e.dot(x);
}

double random_walk_lambda_bound(std::span<const Graph> graphs) {
  double rho = 0.0;
  for (const auto& g : graphs) rho = std::max(rho, spectral_radius(g));
  return rho > 0.0 ? 1.0 / (rho * rho) : std::numeric_limits<double>::infinity();
}

KernelMatrix random_walk_kernel_matrix(std::span<const Graph> graphs, double lambda, int workers) {
  const std::size_t n = graphs.size();
  if (n == 0) throw std::invalid_argument("random_walk_kernel_matrix: no graphs");
  KernelMatrix k{std::vector<long>(n), Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n))};
  for (std::size_t i = 0; i < n; ++i) k.graph_ids[i] = graphs[i].id();
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) k.values(i, j) = random_walk_kernel(graphs[i], graphs[j], lambda);
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) k.values(j, i) = k.values(i, j);
  return k;
}

namespace {

constexpr int kMaxGraphlet = 6;

int pair_bit(int a, int b, int k) {
  if (a > b) std::swap(a, b);
  // Row-major index of (a, b) among pairs of k nodes.
  return a * (2 * k - a - 1) / 2 + (b - a - 1);
}

std::uint32_t permute_pattern(std::uint32_t pattern, const std::array<int, kMaxGraphlet>& perm, int k) {
  std::uint32_t out = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if ((pattern >> pair_bit(a, b, k)) & 1U) out |= 1U << pair_bit(perm[a], perm[b], k);
  return out;
}

std::uint32_t canonical_uncached(std::uint32_t pattern, int k) {
  std::array<int, kMaxGraphlet> perm{};
  std::iota(perm.begin(), perm.begin() + k, 0);
  std::uint32_t best = pattern;
  do {
    best = std::min(best, permute_pattern(pattern, perm, k));
  } while (std::next_permutation(perm.begin(), perm.begin() + k));
  return best;
}

constexpr std::uint32_t kUnset = 0xFFFFFFFFU;

}  // namespace

std::uint32_t canonical_graphlet(std::uint32_t pattern, int k) {
  if (k < 2 || k > kMaxGraphlet) throw std::invalid_argument("canonical_graphlet: k must lie in 2..6");
  const std::size_t pairs = static_cast<std::size_t>(k * (k - 1) / 2);
  if (pattern >> pairs) throw std::invalid_argument("canonical_graphlet: pattern has bits beyond the pair count");
  thread_local std::array<std::vector<std::uint32_t>, kMaxGraphlet + 1> memo;
  auto& table = memo[k];
  if (table.empty()) table.assign(std::size_t{1} << pairs, kUnset);
  auto& slot = table[pattern];
  if (slot == kUnset) slot = canonical_uncached(pattern, k);
  return slot;
}

std::uint32_t induced_pattern(const Graph& graph, std::span<const int> nodes) {
  const int k = static_cast<int>(nodes.size());
  std::uint32_t pattern = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (graph.has_edge(nodes[a], nodes[b])) pattern |= 1U << pair_bit(a, b, k);
  return pattern;
}

GraphletFeatures graphlet_features(const Graph& graph, int k, std::size_t samples, std::uint64_t seed) {
  if (k < 3 || k > kMaxGraphlet) throw std::invalid_argument("graphlet_features: k must lie in 3..6");
  const int n = graph.num_nodes();
  if (k > n) throw std::invalid_argument("graphlet_features: k exceeds the node count");
  if (samples < 1) throw std::invalid_argument("graphlet_features: samples must be >= 1");

  std::map<std::uint32_t, double> raw;
  std::vector<int> subset(k);
  bool exhaustive = false;
  try {
    exhaustive = binomial(n, k) <= samples;
  } catch (const std::overflow_error&) {
  }
  std::size_t total = 0;
  if (exhaustive) {
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      raw[canonical_graphlet(induced_pattern(graph, subset), k)] += 1.0;
      ++total;
      int i = k - 1;
      while (i >= 0 && subset[i] == n - k + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  } else {
    std::mt19937_64 rng(seed);
    std::vector<int> nodes(n);
    for (std::size_t s = 0; s < samples; ++s) {
      std::iota(nodes.begin(), nodes.end(), 0);
      // Partial Fisher-Yates: the first k entries are a uniform k-subset.
      for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(nodes[i], nodes[pick(rng)]);
      }
      std::copy(nodes.begin(), nodes.begin() + k, subset.begin());
      raw[canonical_graphlet(induced_pattern(graph, subset), k)] += 1.0;
      ++total;
    }
  }
  GraphletFeatures f{k, {}};
  for (const auto& [form, c] : raw) f.counts[form] = c / static_cast<double>(total);
  return f;
}

double graphlet_dot(const GraphletFeatures& a, const GraphletFeatures& b) {
  if (a.k != b.k) throw std::invalid_argument("graphlet_dot: graphlet sizes differ");
  double s = 0.0;
  for (const auto& [form, fa] : a.counts) {
    auto it = b.counts.find(form);
    if (it != b.counts.end()) s += fa * it->second;
  }
  return s;
}

double graphlet_kernel(const Graph& g1, const Graph& g2, int k, std::size_t samples, std::uint64_t seed) {
  return graphlet_dot(graphlet_features(g1, k, samples, seed), graphlet_features(g2, k, samples, seed));
}

KernelMatrix graphlet_kernel_matrix(std::span<const Graph> graphs, int k, std::size_t samples, std::uint64_t seed,
                                    int workers) {
  const std::size_t n = graphs.size();
  if (n == 0) throw std::invalid_argument("graphlet_kernel_matrix: no graphs");
  std::vector<GraphletFeatures> feats(n, GraphletFeatures{k, {}});
  parallel_for(n, workers, [&](std::size_t i) {
    if (graphs[i].num_nodes() >= k) feats[i] = graphlet_features(graphs[i], k, samples, seed + i);
  });
  KernelMatrix out{std::vector<long>(n), Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    out.graph_ids[i] = graphs[i].id();
    for (std::size_t j = i; j < n; ++j) out.values(i, j) = out.values(j, i) = graphlet_dot(feats[i], feats[j]);
  }
  return out;
}

}  // namespace qek
