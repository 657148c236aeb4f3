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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qek/common.hpp"

namespace qek {

/// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Position = std::array<double, 2>;

/// Simple undirected graph with optional node fields h_i, edge weights J_ij,
/// 2D node positions and a class label.
///
/// Edges are kept sorted and unique; node fields, weights and positions are
/// either absent or sized to match. Absent fields read as h_i = 0 and
/// J_ij = 1.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// out-of-range endpoints. Endpoint order within an edge does not matter.
  Graph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  int degree(int node) const { return static_cast<int>(adjacency_.at(node).size()); }
  const std::vector<int>& neighbors(int node) const { return adjacency_.at(node); }
  bool has_edge(int a, int b) const;
  /// Index of edge {a, b} in edges(), or -1.
  long edge_index(int a, int b) const;

  bool has_node_fields() const noexcept { return !node_fields_.empty(); }
  bool has_edge_weights() const noexcept { return !edge_weights_.empty(); }
  bool has_positions() const noexcept { return !positions_.empty(); }
  /// True when neither node fields nor edge weights are attached.
  bool is_uniform() const noexcept { return !has_node_fields() && !has_edge_weights(); }

  double node_field(int node) const;
  double edge_weight(std::size_t edge) const;
  const std::vector<double>& node_fields() const noexcept { return node_fields_; }
  const std::vector<double>& edge_weights() const noexcept { return edge_weights_; }
  const std::vector<Position>& positions() const noexcept { return positions_; }

  void set_node_fields(std::vector<double> fields);
  /// Weights are parallel to edges().
  void set_edge_weights(std::vector<double> weights);
  void set_positions(std::vector<Position> positions);

  long id() const noexcept { return id_; }
  void set_id(long id) noexcept { id_ = id; }

  std::optional<int> class_label() const noexcept { return class_label_; }
  void set_class_label(std::optional<int> label) noexcept { class_label_ = label; }
  /// Label as read from the source file, before any re-encoding.
  std::optional<int> original_label() const noexcept { return original_label_; }
  void set_original_label(std::optional<int> label) noexcept { original_label_ = label; }

  /// Adjacency matrix entries A_ij in {0, 1}, row-major N x N.
  std::vector<double> adjacency_matrix() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<double> node_fields_;
  std::vector<double> edge_weights_;
  std::vector<Position> positions_;
  long id_ = 0;
  std::optional<int> class_label_;
  std::optional<int> original_label_;
};

/// m_G(kappa): number of vertices with degree kappa, kappa = 0..N-1.
struct DegreeHistogram {
  std::vector<int> counts;

  int max_degree() const;
};

DegreeHistogram degree_histogram(const Graph& graph);

/// Each of the C(n,2) pairs becomes an edge independently with probability
/// rho. Deterministic for a fixed seed.
Graph erdos_renyi(int n, double rho, std::uint64_t seed);

/// G_n: vertices are the N-bit configurations with exactly n ones, in
/// ascending integer order (bit i = node i); two configurations are adjacent
/// when one is reached from the other by moving a single 1 along an edge of
/// the input graph.
struct OccupationGraph {
  Graph graph;
  std::vector<Bitstring> configurations;
};

inline constexpr std::size_t kDefaultOccupationBudget = 100000;

OccupationGraph occupation_graph(const Graph& graph, int n,
                                 std::size_t vertex_budget = kDefaultOccupationBudget);

struct OccupationCounts {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  double density = 0.0;
};

/// Closed-form |V_n| = C(N,n), |E_n| = M C(N-2,n-1) and
/// d_n = 2|E_n| / (|V_n|(|V_n|-1)), without building G_n.
OccupationCounts occupation_counts(const Graph& graph, int n);

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(int n, int k);

}  // namespace qek
