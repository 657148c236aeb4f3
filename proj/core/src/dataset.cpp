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

#include "qek/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace qek {

namespace fs = std::filesystem;

std::vector<int> Dataset::labels() const {
  std::vector<int> y;
  y.reserve(graphs.size());
  for (const auto& g : graphs) {
    if (!g.class_label()) throw std::invalid_argument("Dataset: graph without class label");
    y.push_back(*g.class_label());
  }
  return y;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, const std::string& file, long line) {
  T value{};
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(file, line, "cannot parse number '" + std::string(token) + "'");
  return value;
}

// Reads non-empty lines; each callback receives (line_number, content).
template <typename F>
void for_each_line(const fs::path& path, F&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto content = trim(line);
    if (content.empty()) continue;
    fn(number, content);
  }
}

fs::path require_file(const fs::path& dir, const std::string& name, const char* suffix) {
  fs::path p = dir / (name + suffix);
  if (!fs::exists(p)) throw ParseError(p.string(), 0, "missing mandatory file");
  return p;
}

}  // namespace

Dataset parse_tu_dataset(const fs::path& directory, const std::string& name) {
  const fs::path a_path = require_file(directory, name, "_A.txt");
  const fs::path ind_path = require_file(directory, name, "_graph_indicator.txt");
  const fs::path lab_path = require_file(directory, name, "_graph_labels.txt");
  const fs::path attr_path = directory / (name + "_node_attributes.txt");

  // node (0-based global) -> graph id (as written, 1-based)
  std::vector<long> node_graph;
  for_each_line(ind_path, [&](long ln, std::string_view s) {
    node_graph.push_back(parse_number<long>(s, ind_path.string(), ln));
  });
  std::vector<int> graph_labels;
  for_each_line(lab_path, [&](long ln, std::string_view s) {
    graph_labels.push_back(parse_number<int>(s, lab_path.string(), ln));
  });

  long max_graph = 0;
  for (std::size_t i = 0; i < node_graph.size(); ++i) {
    if (node_graph[i] < 1)
      throw ParseError(ind_path.string(), static_cast<long>(i + 1), "graph id must be >= 1");
    if (i > 0 && node_graph[i] < node_graph[i - 1])
      throw ParseError(ind_path.string(), static_cast<long>(i + 1), "graph ids must be non-decreasing");
    max_graph = std::max(max_graph, node_graph[i]);
  }
  if (static_cast<long>(graph_labels.size()) < max_graph)
    throw ParseError(lab_path.string(), 0,
                     "indicator references graph " + std::to_string(max_graph) + " but only " +
                         std::to_string(graph_labels.size()) + " labels are present");

  const std::size_t num_graphs = graph_labels.size();
  // first global node index and node count per graph
  std::vector<long> first_node(num_graphs + 1, -1);
  std::vector<int> node_count(num_graphs + 1, 0);
  for (std::size_t i = 0; i < node_graph.size(); ++i) {
    const long g = node_graph[i];
    if (first_node[g] < 0) first_node[g] = static_cast<long>(i);
    ++node_count[g];
  }

  std::vector<std::vector<Edge>> edges(num_graphs + 1);
  Dataset ds;
  ds.name = name;
  for_each_line(a_path, [&](long ln, std::string_view s) {
    const auto parts = split_commas(s);
    if (parts.size() != 2) throw ParseError(a_path.string(), ln, "expected 'i, j'");
    const long i = parse_number<long>(parts[0], a_path.string(), ln) - 1;
    const long j = parse_number<long>(parts[1], a_path.string(), ln) - 1;
    const long n = static_cast<long>(node_graph.size());
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError(a_path.string(), ln, "edge references unknown node");
    const long g = node_graph[i];
    if (node_graph[j] != g) throw ParseError(a_path.string(), ln, "edge connects two graphs");
    if (i == j) {
      ++ds.dropped_self_loops;
      return;
    }
    int u = static_cast<int>(i - first_node[g]);
    int v = static_cast<int>(j - first_node[g]);
    if (u > v) std::swap(u, v);
    edges[g].push_back({u, v});
  });

  std::vector<std::vector<Position>> positions(num_graphs + 1);
  bool have_positions = false;
  if (fs::exists(attr_path)) {
    std::size_t node = 0;
    for_each_line(attr_path, [&](long ln, std::string_view s) {
      if (node >= node_graph.size())
        throw ParseError(attr_path.string(), ln, "more attribute lines than nodes");
      const auto parts = split_commas(s);
      if (parts.size() < 2) throw ParseError(attr_path.string(), ln, "expected at least two coordinates");
      positions[node_graph[node]].push_back(
          {parse_number<double>(parts[0], attr_path.string(), ln),
           parse_number<double>(parts[1], attr_path.string(), ln)});
      ++node;
    });
    if (node != node_graph.size())
      throw ParseError(attr_path.string(), 0, "attribute line count differs from node count");
    have_positions = true;
  }

  for (std::size_t g = 1; g <= num_graphs; ++g) {
    if (node_count[g] == 0) {
      ++ds.dropped_empty_graphs;
      continue;
    }
    auto& e = edges[g];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    Graph graph(node_count[g], std::move(e));
    graph.set_id(static_cast<long>(g));
    graph.set_class_label(graph_labels[g - 1]);
    graph.set_original_label(graph_labels[g - 1]);
    if (have_positions) graph.set_positions(std::move(positions[g]));
    ds.graphs.push_back(std::move(graph));
  }
  for (const auto& g : ds.graphs) {
    ++ds.class_counts[*g.class_label()];
    ds.label_mapping[*g.class_label()] = *g.original_label();
  }
  return ds;
}

Dataset preprocess(const Dataset& dataset, int max_nodes, const std::optional<std::set<int>>& keep_classes) {
  if (max_nodes < 1) throw std::invalid_argument("preprocess: max_nodes must be >= 1");
  Dataset out;
  out.name = dataset.name;
  out.dropped_empty_graphs = dataset.dropped_empty_graphs;
  out.dropped_self_loops = dataset.dropped_self_loops;
  std::set<int> sources;
  for (const auto& g : dataset.graphs) {
    const int n = g.num_nodes();
    if (n < 1 || n > max_nodes) continue;
    const auto src = g.original_label() ? g.original_label() : g.class_label();
    if (!src) throw std::invalid_argument("preprocess: graph without class label");
    if (keep_classes && !keep_classes->contains(*src)) continue;
    out.graphs.push_back(g);
    out.graphs.back().set_original_label(*src);
    sources.insert(*src);
  }
  if (out.graphs.empty()) throw std::invalid_argument("preprocess: no graph survives the filters");
  std::map<int, int> encode;
  for (int s : sources) {
    const int code = static_cast<int>(encode.size());
    encode[s] = code;
    out.label_mapping[code] = s;
  }
  for (auto& g : out.graphs) {
    const int code = encode.at(*g.original_label());
    g.set_class_label(code);
    ++out.class_counts[code];
  }
  return out;
}

void write_tu_dataset(const Dataset& dataset, const fs::path& directory) {
  fs::create_directories(directory);
  const std::string& n = dataset.name;
  std::ofstream a(directory / (n + "_A.txt"));
  std::ofstream ind(directory / (n + "_graph_indicator.txt"));
  std::ofstream lab(directory / (n + "_graph_labels.txt"));
  const bool pos = !dataset.graphs.empty() &&
                   std::all_of(dataset.graphs.begin(), dataset.graphs.end(),
                               [](const Graph& g) { return g.has_positions(); });
  std::ofstream attr;
  if (pos) {
    attr.open(directory / (n + "_node_attributes.txt"));
    attr.precision(17);
  }
  long offset = 0;
  for (std::size_t gi = 0; gi < dataset.graphs.size(); ++gi) {
    const auto& g = dataset.graphs[gi];
    for (const auto& e : g.edges()) {
      a << offset + e.u + 1 << ", " << offset + e.v + 1 << '\n';
      a << offset + e.v + 1 << ", " << offset + e.u + 1 << '\n';
    }
    for (int i = 0; i < g.num_nodes(); ++i) {
      ind << gi + 1 << '\n';
      if (pos) attr << g.positions()[i][0] << ", " << g.positions()[i][1] << '\n';
    }
    const auto label = g.original_label() ? g.original_label() : g.class_label();
    lab << label.value_or(0) << '\n';
    offset += g.num_nodes();
  }
}

}  // namespace qek
