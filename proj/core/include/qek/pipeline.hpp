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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qek/cross_validation.hpp"
#include "qek/dataset.hpp"
#include "qek/gaussian_process.hpp"
#include "qek/distribution.hpp"
#include "qek/hardware.hpp"
#include "qek/measurement.hpp"
#include "qek/qe_kernel.hpp"

namespace qek {

struct DatasetSection {
  std::string path;
  std::string name;
  int max_nodes = 16;
  std::optional<std::vector<int>> keep_classes;
  /// Keep only the first n graphs after filtering (0 = all).
  int max_graphs = 0;
};

enum class EvolutionKind { Ising, XY, Hardware };

struct EvolutionSection {
  EvolutionKind kind = EvolutionKind::Ising;
  /// theta_0 .. theta_p (radians) and t_1 .. t_p.
  std::vector<double> thetas{kPi / 4, kPi / 4};
  std::vector<double> times{1.0};
  /// Hardware segments tau_0, t_0, ..., tau_p in ns.
  std::vector<double> durations_ns{87.0, 32.0, 84.0, 54.0, 72.0};
};

struct MeasurementSection {
  Observable observable = Observable::ising_energy();
  BinningSpec binning = BinningSpec::integer();
  /// 0 selects exact distributions.
  long shots = 0;
  NoiseModel noise;
};

struct BOSection {
  int budget = 100;
  int n_init = 10;
  int candidates = 5000;
  double kappa = 2.0;
  int workers = 1;
  CovarianceFamily family = CovarianceFamily::Matern;
  double nu = 2.5;
  /// Layers trained by the benchmark.
  int depth = 1;
  double theta0 = kPi / 4;
  double t_max = 2 * kPi;
  double theta_max = kPi;
  double duration_min_ns = 4.001;
  double duration_max_ns = 99.9;
  /// Continue from the recorded history file instead of starting over.
  bool resume = false;
};

struct ClassicalSection {
  bool enabled = true;
  std::vector<double> rw_lambdas = log_grid(1e-3, 1e-2, 5);
  std::vector<int> graphlet_sizes{3, 4, 5, 6};
  long graphlet_samples = 1000;
  std::vector<double> c_grid = log_grid(1e-3, 1e-1, 3);
};

struct DemoSection {
  int num_nodes = 60;
  std::vector<double> densities{0.35, 0.65};
  int graphs_per_class = 4;
  double theta = kPi / 4;
  std::uint64_t seed = 2021;
};

struct NoiseStudySection {
  int estimations = 100;
  long shots = 10000;
  NoiseModel noise{0.05, 0.05};
  int max_nodes = 12;
  std::optional<std::vector<int>> classes = std::vector<int>{0, 4, 5};
  int max_graphs = 200;
  double threshold = 0.1;
};

struct RunConfig {
  DatasetSection dataset;
  EvolutionSection evolution;
  MeasurementSection measurement;
  double mu = 1.0;
  CVOptions cv;
  BOSection bo;
  ClassicalSection classical;
  DemoSection demo;
  NoiseStudySection noise_study;
  HardwareConfig hardware;
  std::uint64_t seed = 0;
  int workers = 1;
  int max_qubits = kDefaultMaxQubits;
  std::string output_dir = "qek_out";
  bool emit_plot_data = true;

  /// Missing keys take defaults; unknown keys and bad values throw ConfigError.
  static RunConfig from_json(const nlohmann::json& j);
  /// Fully resolved configuration.
  nlohmann::json to_json() const;
  void validate() const;
};

/// Sets a dotted key ("bo.budget=40"). The value is parsed as JSON and
/// taken as a string when that fails.
void apply_override(nlohmann::json& config, const std::string& assignment);

/// Parses and preprocesses the configured dataset.
Dataset load_dataset(const RunConfig& config);

/// Final state of the configured evolution on one graph.
StateVector evolve_graph(const Graph& graph, const EvolutionSection& evolution, const RunConfig& config);

/// Outcome distribution of one graph: exact, or a histogram of `shots`
/// samples drawn with the configured noise.
ProbabilityDistribution graph_distribution(const Graph& graph, const EvolutionSection& evolution,
                                           const RunConfig& config, std::uint64_t seed);

struct FeatureSet {
  std::vector<long> ids;
  std::vector<int> labels;
  std::vector<ProbabilityDistribution> distributions;
  /// Graph ids skipped because they exceed the qubit budget.
  std::vector<long> skipped;
};

FeatureSet compute_features(const std::vector<Graph>& graphs, const EvolutionSection& evolution,
                            const RunConfig& config);

/// Benchmark parameterization of a trained sequence: x = (t_1, theta_1, ...,
/// t_p, theta_p) with theta_0 fixed, or the hardware durations.
EvolutionSection evolution_from_parameters(const RunConfig& config, const std::vector<double>& x);
std::vector<std::pair<double, double>> parameter_bounds(const RunConfig& config);

/// Separable two-class graphs: sparse versus dense Erdos-Renyi graphs.
Dataset make_synthetic_dataset(int graphs_per_class, int min_nodes, int max_nodes, std::uint64_t seed);

/// The noise-study subset: first graphs with N <= max_nodes in the listed
/// source classes. Returns the selected indices into `dataset.graphs`.
std::vector<std::size_t> noise_study_selection(const Dataset& dataset, const NoiseStudySection& section);

struct NoiseStudyResult {
  std::vector<double> deviations;
  double fraction_above_threshold = 0.0;
  double max_deviation = 0.0;
  std::vector<double> quantile_levels{0.5, 0.9, 0.999};
  std::vector<double> quantiles;
};

/// Repeated shot-based kernel estimation with and without detection noise on
/// the same underlying draws; deviations pool the off-diagonal |1 - K'/K|
/// over all estimations.
NoiseStudyResult run_noise_study(const std::vector<Graph>& graphs, const RunConfig& config);

// CLI commands. Each writes its outputs below config.output_dir, logs
// progress to `log` and returns a JSON summary.
nlohmann::json cmd_dataset_info(const RunConfig& config, std::ostream& log);
nlohmann::json cmd_compute_features(const RunConfig& config, std::ostream& log);
nlohmann::json cmd_kernel(const RunConfig& config, std::ostream& log);
nlohmann::json cmd_benchmark(const RunConfig& config, std::ostream& log);
nlohmann::json cmd_analytic_demo(const RunConfig& config, std::ostream& log);
nlohmann::json cmd_noise_study(const RunConfig& config, std::ostream& log);

}  // namespace qek
