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
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qek/graph.hpp"

namespace qek {

/// Labeled collection of graphs.
struct Dataset {
  std::string name;
  std::vector<Graph> graphs;
  /// Encoded class -> number of graphs.
  std::map<int, int> class_counts;
  /// Encoded class -> label as read from the source.
  std::map<int, int> label_mapping;
  /// Number of graph ids dropped at parse time because they own no node.
  int dropped_empty_graphs = 0;
  /// Self-loop lines ignored while parsing.
  int dropped_self_loops = 0;

  std::size_t size() const noexcept { return graphs.size(); }
  std::vector<int> labels() const;
  int num_classes() const noexcept { return static_cast<int>(class_counts.size()); }
};

/// Reads a dataset in the TU Dortmund text format from
/// `<directory>/<name>_A.txt`, `<name>_graph_indicator.txt`,
/// `<name>_graph_labels.txt` and, when present, `<name>_node_attributes.txt`
/// (first two columns become node positions).
///
/// Edges listed in both directions collapse to one undirected edge. Nodes
/// that never appear in `_A.txt` are kept as isolated vertices. Graph ids
/// without any node are dropped. Labels are kept as read (identity mapping);
/// call preprocess() to re-encode them.
///
/// Throws ParseError for a missing mandatory file, a malformed line, an edge
/// referencing an unknown node, or an indicator/label length mismatch.
Dataset parse_tu_dataset(const std::filesystem::path& directory, const std::string& name);

/// Keeps graphs with 1 <= N <= max_nodes whose source label is in
/// keep_classes (when given), preserving order, and re-encodes the classes to
/// 0..n_c-1 in ascending source-label order. Filtering always uses source
/// labels, so applying it twice with the same arguments is a no-op.
///
/// Throws std::invalid_argument when max_nodes < 1 or nothing survives.
Dataset preprocess(const Dataset& dataset, int max_nodes,
                   const std::optional<std::set<int>>& keep_classes = std::nullopt);

/// Writes `dataset` in TU format (labels written as source labels).
void write_tu_dataset(const Dataset& dataset, const std::filesystem::path& directory);

}  // namespace qek
