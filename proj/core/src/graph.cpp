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

#include "qek/graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace qek {

Graph::Graph(int num_nodes, std::vector<Edge> edges) : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("Graph: negative node count");
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("Graph: self-loop on node " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes)
      throw std::invalid_argument("Graph: edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("Graph: duplicate edge");
  edges_ = std::move(edges);
  adjacency_.assign(static_cast<std::size_t>(num_nodes), {});
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

bool Graph::has_edge(int a, int b) const { return edge_index(a, b) >= 0; }

long Graph::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  const Edge key{a, b};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<long>(it - edges_.begin());
}

double Graph::node_field(int node) const {
  if (node < 0 || node >= num_nodes_) throw std::out_of_range("Graph::node_field");
  return node_fields_.empty() ? 0.0 : node_fields_[node];
}

double Graph::edge_weight(std::size_t edge) const {
  if (edge >= edges_.size()) throw std::out_of_range("Graph::edge_weight");
  return edge_weights_.empty() ? 1.0 : edge_weights_[edge];
}

void Graph::set_node_fields(std::vector<double> fields) {
  if (!fields.empty() && fields.size() != static_cast<std::size_t>(num_nodes_))
    throw std::invalid_argument("Graph: node field count must equal node count");
  node_fields_ = std::move(fields);
}

void Graph::set_edge_weights(std::vector<double> weights) {
  if (!weights.empty() && weights.size() != edges_.size())
    throw std::invalid_argument("Graph: edge weight count must equal edge count");
  edge_weights_ = std::move(weights);
}

void Graph::set_positions(std::vector<Position> positions) {
  if (!positions.empty() && positions.size() != static_cast<std::size_t>(num_nodes_))
    throw std::invalid_argument("Graph: position count must equal node count");
  positions_ = std::move(positions);
}

std::vector<double> Graph::adjacency_matrix() const {
  const auto n = static_cast<std::size_t>(num_nodes_);
  std::vector<double> a(n * n, 0.0);
  for (const auto& e : edges_) {
    a[e.u * n + e.v] = 1.0;
    a[e.v * n + e.u] = 1.0;
  }
  return a;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_ &&
         a.node_fields_ == b.node_fields_ && a.edge_weights_ == b.edge_weights_ &&
         a.positions_ == b.positions_ && a.id_ == b.id_ &&
         a.class_label_ == b.class_label_ && a.original_label_ == b.original_label_;
}

int DegreeHistogram::max_degree() const {
  for (int k = static_cast<int>(counts.size()) - 1; k >= 0; --k)
    if (counts[k] > 0) return k;
  return 0;
}

DegreeHistogram degree_histogram(const Graph& graph) {
  DegreeHistogram h;
  h.counts.assign(static_cast<std::size_t>(graph.num_nodes()), 0);
  for (int i = 0; i < graph.num_nodes(); ++i) ++h.counts[graph.degree(i)];
  return h;
}

Graph erdos_renyi(int n, double rho, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("erdos_renyi: negative node count");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("erdos_renyi: rho outside [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(rho);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i; cancel the common factor first.
    const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
    if (__builtin_mul_overflow(r / g, factor, &r)) throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return r;
}

namespace {

// Next integer with the same popcount (Gosper's hack).
Bitstring next_combination(Bitstring x) {
  const Bitstring c = x & (~x + 1);
  const Bitstring r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace

OccupationGraph occupation_graph(const Graph& graph, int n, std::size_t vertex_budget) {
  const int N = graph.num_nodes();
  if (n <= 0 || n >= N) throw std::invalid_argument("occupation_graph: requires 0 < n < N");
  if (N > 63) throw BudgetError("occupation_graph: more than 63 nodes");
  const std::uint64_t count = binomial(N, n);
  if (count > vertex_budget)
    throw BudgetError("occupation_graph: C(" + std::to_string(N) + "," + std::to_string(n) +
                      ") = " + std::to_string(count) + " exceeds vertex budget " +
                      std::to_string(vertex_budget));

  OccupationGraph out;
  out.configurations.reserve(count);
  Bitstring x = (Bitstring{1} << n) - 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.configurations.push_back(x);
    if (i + 1 < count) x = next_combination(x);
  }

  const auto& configs = out.configurations;
  auto index_of = [&](Bitstring c) {
    return static_cast<int>(std::lower_bound(configs.begin(), configs.end(), c) - configs.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(count) * graph.num_edges() / 2 + 1);
  for (std::size_t a = 0; a < configs.size(); ++a) {
    const Bitstring s = configs[a];
    for (const auto& e : graph.edges()) {
      const bool bu = (s >> e.u) & 1U;
      const bool bv = (s >> e.v) & 1U;
      if (bu == bv) continue;
      const Bitstring t = s ^ ((Bitstring{1} << e.u) | (Bitstring{1} << e.v));
      if (t > s) edges.push_back({static_cast<int>(a), index_of(t)});
    }
  }
  out.graph = Graph(static_cast<int>(count), std::move(edges));
  return out;
}

OccupationCounts occupation_counts(const Graph& graph, int n) {
  const int N = graph.num_nodes();
  if (n <= 0 || n >= N) throw std::invalid_argument("occupation_counts: requires 0 < n < N");
  OccupationCounts c;
  c.vertices = binomial(N, n);
  const std::uint64_t m = graph.num_edges();
  if (__builtin_mul_overflow(m, binomial(N - 2, n - 1), &c.edges))
    throw std::overflow_error("occupation_counts: edge count exceeds 64 bits");
  const double v = static_cast<double>(c.vertices);
  c.density = v > 1.0 ? 2.0 * static_cast<double>(c.edges) / (v * (v - 1.0)) : 0.0;
  return c;
}

}  // namespace qek
