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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qek/dataset.hpp"
#include "qek/distribution.hpp"

namespace qek {

void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Long format: graph_id,bin,prob.
void write_distributions_csv(const std::filesystem::path& path, std::span<const long> ids,
                             std::span<const ProbabilityDistribution> dists);

/// Square matrix with graph ids as row and column headers.
void write_matrix_csv(const std::filesystem::path& path, std::span<const long> ids, const Eigen::MatrixXd& m);

/// Columns of equal length under the given header.
void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

nlohmann::json dataset_summary(const Dataset& dataset);
std::string format_dataset_summary(const nlohmann::json& summary);

}  // namespace qek
