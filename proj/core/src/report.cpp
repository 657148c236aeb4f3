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

#include "qek/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "qek/common.hpp"

namespace qek {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_distributions_csv(const std::filesystem::path& path, std::span<const long> ids,
                             std::span<const ProbabilityDistribution> dists) {
  if (ids.size() != dists.size()) throw std::invalid_argument("write_distributions_csv: size mismatch");
  auto out = open_for_write(path);
  out << "graph_id,bin,prob\n";
  for (std::size_t g = 0; g < dists.size(); ++g)
    for (std::size_t k = 0; k < dists[g].size(); ++k)
      out << ids[g] << ',' << dists[g].bin_ids()[k] << ',' << dists[g].probs()[k] << '\n';
}

void write_matrix_csv(const std::filesystem::path& path, std::span<const long> ids, const Eigen::MatrixXd& m) {
  if (static_cast<long>(ids.size()) != m.rows() || m.rows() != m.cols())
    throw std::invalid_argument("write_matrix_csv: shape mismatch");
  auto out = open_for_write(path);
  out << "graph_id";
  for (long id : ids) out << ',' << id;
  out << '\n';
  for (long i = 0; i < m.rows(); ++i) {
    out << ids[i];
    for (long j = 0; j < m.cols(); ++j) out << ',' << m(i, j);
    out << '\n';
  }
}

void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("write_columns_csv: header mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("write_columns_csv: ragged columns");
  auto out = open_for_write(path);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c][r];
    out << '\n';
  }
}

nlohmann::json dataset_summary(const Dataset& ds) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& [code, count] : ds.class_counts) {
    auto it = ds.label_mapping.find(code);
    classes.push_back({{"class", code},
                       {"source_label", it != ds.label_mapping.end() ? it->second : code},
                       {"count", count}});
  }
  int max_nodes = 0;
  double mean_nodes = 0.0, mean_edges = 0.0;
  for (const auto& g : ds.graphs) {
    max_nodes = std::max(max_nodes, g.num_nodes());
    mean_nodes += g.num_nodes();
    mean_edges += static_cast<double>(g.num_edges());
  }
  if (!ds.graphs.empty()) {
    mean_nodes /= static_cast<double>(ds.size());
    mean_edges /= static_cast<double>(ds.size());
  }
  return {{"name", ds.name},
          {"samples", ds.size()},
          {"num_classes", ds.num_classes()},
          {"classes", classes},
          {"max_nodes", max_nodes},
          {"mean_nodes", mean_nodes},
          {"mean_edges", mean_edges},
          {"dropped_empty_graphs", ds.dropped_empty_graphs},
          {"dropped_self_loops", ds.dropped_self_loops}};
}

std::string format_dataset_summary(const nlohmann::json& s) {
  std::ostringstream os;
  os << "dataset   " << s.at("name").get<std::string>() << '\n'
     << "samples   " << s.at("samples").get<std::size_t>() << '\n'
     << "classes   " << s.at("num_classes").get<int>() << '\n';
  for (const auto& c : s.at("classes"))
    os << "  class " << c.at("class").get<int>() << " (label " << c.at("source_label").get<int>()
       << "): " << c.at("count").get<int>() << '\n';
  os << std::fixed << std::setprecision(2) << "mean N    " << s.at("mean_nodes").get<double>() << '\n'
     << "mean M    " << s.at("mean_edges").get<double>() << '\n';
  return os.str();
}

}  // namespace qek
