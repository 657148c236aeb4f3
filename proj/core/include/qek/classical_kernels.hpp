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
#include <map>
#include <span>

#include "qek/graph.hpp"
#include "qek/qe_kernel.hpp"

namespace qek {

/// Spectral radius of the adjacency matrix (0 for edgeless graphs).
double spectral_radius(const Graph& graph);

/// e^T (I - lambda A_x)^{-1} e over the direct-product graph. Requires
/// 0 < lambda < 1 / rho(A_x).
double random_walk_kernel(const Graph& g1, const Graph& g2, double lambda);

/// Graphs at or above this product size are solved with conjugate gradient.
inline constexpr std::size_t kRandomWalkDenseLimit = 2000;

/// Largest lambda grid value admissible for every pair of the dataset.
double random_walk_lambda_bound(std::span<const Graph> graphs);

KernelMatrix random_walk_kernel_matrix(std::span<const Graph> graphs, double lambda, int workers = 1);

struct GraphletFeatures {
  int k = 3;
  /// Canonical adjacency pattern -> normalized frequency.
  std::map<std::uint32_t, double> counts;
};

/// Canonical form of a k-node graphlet given as a bit pattern over pairs
/// (0,1), (0,2), ..., (k-2,k-1): the minimum pattern over all relabelings.
std::uint32_t canonical_graphlet(std::uint32_t pattern, int k);

/// Pattern of the subgraph induced by the given nodes.
std::uint32_t induced_pattern(const Graph& graph, std::span<const int> nodes);

GraphletFeatures graphlet_features(const Graph& graph, int k, std::size_t samples, std::uint64_t seed);

double graphlet_dot(const GraphletFeatures& a, const GraphletFeatures& b);

double graphlet_kernel(const Graph& g1, const Graph& g2, int k, std::size_t samples, std::uint64_t seed);

/// Graphs with fewer than k nodes contribute an all-zero feature vector.
KernelMatrix graphlet_kernel_matrix(std::span<const Graph> graphs, int k, std::size_t samples, std::uint64_t seed,
                                    int workers = 1);

}  // namespace qek
