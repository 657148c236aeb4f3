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

#include "qek/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qek/analytic_ising.hpp"
#include "qek/bayes_opt.hpp"
#include "qek/classical_kernels.hpp"
#include "qek/evolution.hpp"
#include "qek/parallel.hpp"
#include "qek/report.hpp"

namespace qek {

using nlohmann::json;

namespace {

// Reads typed keys from a JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(label() + " must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    used_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(label(key) + ": " + e.what());
    }
  }

  template <typename T>
  void get_optional(const char* key, std::optional<T>& out) {
    used_.insert(key);
    if (!j_.contains(key)) return;
    if (j_.at(key).is_null()) {
      out.reset();
      return;
    }
    T v{};
    get(key, v);
    out = std::move(v);
  }

  bool has(const char* key) const { return j_.contains(key); }

  Section sub(const char* key) {
    used_.insert(key);
    static const json empty = json::object();
    return Section(j_.contains(key) ? j_.at(key) : empty, label(key));
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!used_.count(item.key())) throw ConfigError("unknown configuration key " + label(item.key()));
  }

  std::string label(const std::string& key = "") const {
    if (key.empty()) return path_.empty() ? "<config>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

EvolutionKind parse_evolution_kind(const std::string& s) {
  if (s == "ising") return EvolutionKind::Ising;
  if (s == "xy") return EvolutionKind::XY;
  if (s == "hardware") return EvolutionKind::Hardware;
  throw ConfigError("evolution.hamiltonian must be ising, xy or hardware (got '" + s + "')");
}

const char* evolution_kind_name(EvolutionKind k) {
  switch (k) {
    case EvolutionKind::Ising: return "ising";
    case EvolutionKind::XY: return "xy";
    case EvolutionKind::Hardware: return "hardware";
  }
  return "ising";
}

Observable::Kind parse_observable(const std::string& s) {
  if (s == "ising_energy") return Observable::Kind::IsingEnergy;
  if (s == "total_occupation") return Observable::Kind::TotalOccupation;
  if (s == "site_occupation") return Observable::Kind::SiteOccupation;
  throw ConfigError("measurement.observable must be ising_energy, total_occupation or site_occupation");
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32), static_cast<std::uint32_t>(c)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::filesystem::path out_path(const RunConfig& c, const std::string& file) {
  return std::filesystem::path(c.output_dir) / file;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  Section root(j, "");

  {
    Section s = root.sub("dataset");
    s.get("path", c.dataset.path);
    s.get("name", c.dataset.name);
    s.get("max_nodes", c.dataset.max_nodes);
    s.get_optional("keep_classes", c.dataset.keep_classes);
    s.get("max_graphs", c.dataset.max_graphs);
    s.finish();
  }
  {
    Section s = root.sub("evolution");
    std::string kind = evolution_kind_name(c.evolution.kind);
    s.get("hamiltonian", kind);
    c.evolution.kind = parse_evolution_kind(kind);
    s.get("thetas", c.evolution.thetas);
    s.get("times", c.evolution.times);
    s.get("durations_ns", c.evolution.durations_ns);
    s.finish();
  }
  {
    Section s = root.sub("measurement");
    std::string obs = to_string(c.measurement.observable.kind);
    s.get("observable", obs);
    c.measurement.observable.kind = parse_observable(obs);
    s.get("site", c.measurement.observable.site);
    std::string binning = "integer";
    s.get("binning", binning);
    if (binning == "integer") {
      c.measurement.binning = BinningSpec::integer();
    } else if (binning == "fixed") {
      c.measurement.binning.mode = BinningSpec::Mode::FixedWidth;
    } else {
      throw ConfigError("measurement.binning must be integer or fixed");
    }
    s.get("bin_width", c.measurement.binning.width);
    s.get("bin_origin", c.measurement.binning.origin);
    s.get("shots", c.measurement.shots);
    s.get("epsilon", c.measurement.noise.epsilon);
    s.get("epsilon_prime", c.measurement.noise.epsilon_prime);
    s.finish();
  }
  root.get("mu", c.mu);
  {
    Section s = root.sub("cv");
    s.get("folds", c.cv.folds);
    s.get("repeats", c.cv.repeats);
    s.get("c_grid", c.cv.c_grid);
    s.get("svm_tol", c.cv.svm.tol);
    s.get("svm_max_iterations", c.cv.svm.max_iterations);
    s.finish();
  }
  {
    Section s = root.sub("bo");
    s.get("budget", c.bo.budget);
    s.get("n_init", c.bo.n_init);
    s.get("candidates", c.bo.candidates);
    s.get("kappa", c.bo.kappa);
    s.get("workers", c.bo.workers);
    std::string family = to_string(c.bo.family);
    s.get("kernel", family);
    if (family == "matern") c.bo.family = CovarianceFamily::Matern;
    else if (family == "rbf") c.bo.family = CovarianceFamily::RBF;
    else throw ConfigError("bo.kernel must be matern or rbf");
    s.get("nu", c.bo.nu);
    s.get("depth", c.bo.depth);
    s.get("theta0", c.bo.theta0);
    s.get("t_max", c.bo.t_max);
    s.get("theta_max", c.bo.theta_max);
    s.get("duration_min_ns", c.bo.duration_min_ns);
    s.get("duration_max_ns", c.bo.duration_max_ns);
    s.get("resume", c.bo.resume);
    s.finish();
  }
  {
    Section s = root.sub("classical");
    s.get("enabled", c.classical.enabled);
    s.get("rw_lambdas", c.classical.rw_lambdas);
    s.get("graphlet_sizes", c.classical.graphlet_sizes);
    s.get("graphlet_samples", c.classical.graphlet_samples);
    s.get("c_grid", c.classical.c_grid);
    s.finish();
  }
  {
    Section s = root.sub("demo");
    s.get("num_nodes", c.demo.num_nodes);
    s.get("densities", c.demo.densities);
    s.get("graphs_per_class", c.demo.graphs_per_class);
    s.get("theta", c.demo.theta);
    s.get("seed", c.demo.seed);
    s.finish();
  }
  {
    Section s = root.sub("noise_study");
    s.get("estimations", c.noise_study.estimations);
    s.get("shots", c.noise_study.shots);
    s.get("epsilon", c.noise_study.noise.epsilon);
    s.get("epsilon_prime", c.noise_study.noise.epsilon_prime);
    s.get("max_nodes", c.noise_study.max_nodes);
    s.get_optional("classes", c.noise_study.classes);
    s.get("max_graphs", c.noise_study.max_graphs);
    s.get("threshold", c.noise_study.threshold);
    s.finish();
  }
  {
    Section s = root.sub("hardware");
    s.get("omega0", c.hardware.omega0);
    s.get("detuning", c.hardware.detuning);
    s.get("c6", c.hardware.c6);
    s.get("c3", c.hardware.c3);
    s.get("min_distance_um", c.hardware.min_distance_um);
    s.get("min_duration_ns", c.hardware.min_duration_ns);
    s.get("max_total_ns", c.hardware.max_total_ns);
    s.finish();
  }
  root.get("seed", c.seed);
  root.get("workers", c.workers);
  root.get("max_qubits", c.max_qubits);
  root.get("output_dir", c.output_dir);
  root.get("emit_plot_data", c.emit_plot_data);
  root.finish();
  c.cv.seed = c.seed;
  c.cv.workers = c.workers;
  c.validate();
  return c;
}

json RunConfig::to_json() const {
  json keep = dataset.keep_classes ? json(*dataset.keep_classes) : json(nullptr);
  json classes = noise_study.classes ? json(*noise_study.classes) : json(nullptr);
  return {
      {"dataset",
       {{"path", dataset.path},
        {"name", dataset.name},
        {"max_nodes", dataset.max_nodes},
        {"keep_classes", keep},
        {"max_graphs", dataset.max_graphs}}},
      {"evolution",
       {{"hamiltonian", evolution_kind_name(evolution.kind)},
        {"thetas", evolution.thetas},
        {"times", evolution.times},
        {"durations_ns", evolution.durations_ns}}},
      {"measurement",
       {{"observable", to_string(measurement.observable.kind)},
        {"site", measurement.observable.site},
        {"binning", measurement.binning.mode == BinningSpec::Mode::IntegerBins ? "integer" : "fixed"},
        {"bin_width", measurement.binning.width},
        {"bin_origin", measurement.binning.origin},
        {"shots", measurement.shots},
        {"epsilon", measurement.noise.epsilon},
        {"epsilon_prime", measurement.noise.epsilon_prime}}},
      {"mu", mu},
      {"cv",
       {{"folds", cv.folds},
        {"repeats", cv.repeats},
        {"c_grid", cv.c_grid},
        {"svm_tol", cv.svm.tol},
        {"svm_max_iterations", cv.svm.max_iterations}}},
      {"bo",
       {{"budget", bo.budget},
        {"n_init", bo.n_init},
        {"candidates", bo.candidates},
        {"kappa", bo.kappa},
        {"workers", bo.workers},
        {"kernel", to_string(bo.family)},
        {"nu", bo.nu},
        {"depth", bo.depth},
        {"theta0", bo.theta0},
        {"t_max", bo.t_max},
        {"theta_max", bo.theta_max},
        {"duration_min_ns", bo.duration_min_ns},
        {"duration_max_ns", bo.duration_max_ns},
        {"resume", bo.resume}}},
      {"classical",
       {{"enabled", classical.enabled},
        {"rw_lambdas", classical.rw_lambdas},
        {"graphlet_sizes", classical.graphlet_sizes},
        {"graphlet_samples", classical.graphlet_samples},
        {"c_grid", classical.c_grid}}},
      {"demo",
       {{"num_nodes", demo.num_nodes},
        {"densities", demo.densities},
        {"graphs_per_class", demo.graphs_per_class},
        {"theta", demo.theta},
        {"seed", demo.seed}}},
      {"noise_study",
       {{"estimations", noise_study.estimations},
        {"shots", noise_study.shots},
        {"epsilon", noise_study.noise.epsilon},
        {"epsilon_prime", noise_study.noise.epsilon_prime},
        {"max_nodes", noise_study.max_nodes},
        {"classes", classes},
        {"max_graphs", noise_study.max_graphs},
        {"threshold", noise_study.threshold}}},
      {"hardware",
       {{"omega0", hardware.omega0},
        {"detuning", hardware.detuning},
        {"c6", hardware.c6},
        {"c3", hardware.c3},
        {"min_distance_um", hardware.min_distance_um},
        {"min_duration_ns", hardware.min_duration_ns},
        {"max_total_ns", hardware.max_total_ns}}},
      {"seed", seed},
      {"workers", workers},
      {"max_qubits", max_qubits},
      {"output_dir", output_dir},
      {"emit_plot_data", emit_plot_data},
  };
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(dataset.max_nodes >= 1, "dataset.max_nodes must be >= 1");
  require(dataset.max_graphs >= 0, "dataset.max_graphs must be >= 0");
  require(mu >= 0.0 && std::isfinite(mu), "mu must be >= 0");
  require(workers >= 1, "workers must be >= 1");
  require(max_qubits >= 1 && max_qubits <= 30, "max_qubits must lie in 1..30");
  require(measurement.shots >= 0, "measurement.shots must be >= 0");
  require(cv.folds >= 2 && cv.repeats >= 1 && !cv.c_grid.empty(), "cv needs folds >= 2, repeats >= 1, a C grid");
  for (double C : cv.c_grid) require(C > 0.0, "cv.c_grid entries must be > 0");
  require(bo.budget >= 1 && bo.n_init >= 1 && bo.candidates >= 1 && bo.workers >= 1, "bo sizes must be >= 1");
  require(bo.depth >= 1, "bo.depth must be >= 1");
  require(bo.kappa >= 0.0, "bo.kappa must be >= 0");
  require(bo.nu > 0.0, "bo.nu must be > 0");
  require(bo.t_max > 0.0 && bo.theta_max > 0.0, "bo.t_max and bo.theta_max must be > 0");
  require(bo.duration_max_ns > bo.duration_min_ns, "bo duration bounds are inconsistent");
  require(classical.graphlet_samples >= 1, "classical.graphlet_samples must be >= 1");
  for (int k : classical.graphlet_sizes) require(k >= 3 && k <= 6, "classical.graphlet_sizes must lie in 3..6");
  for (double l : classical.rw_lambdas) require(l > 0.0, "classical.rw_lambdas must be > 0");
  for (double C : classical.c_grid) require(C > 0.0, "classical.c_grid entries must be > 0");
  require(demo.num_nodes >= 2 && demo.graphs_per_class >= 1 && !demo.densities.empty(), "demo sizes are invalid");
  for (double r : demo.densities) require(r >= 0.0 && r <= 1.0, "demo.densities must lie in [0, 1]");
  require(noise_study.estimations >= 1 && noise_study.shots >= 1, "noise_study sizes must be >= 1");
  require(noise_study.max_graphs >= 2 && noise_study.max_nodes >= 1, "noise_study needs max_graphs >= 2");
  try {
    measurement.binning.validate();
    measurement.noise.validate();
    noise_study.noise.validate();
    hardware.validate();
    PulseSequence{evolution.thetas, evolution.times}.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (evolution.kind == EvolutionKind::Hardware) {
    try {
      validate_durations(evolution.durations_ns, hardware);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("evolution.durations_ns: ") + e.what());
    }
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key.path=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("empty component in override key " + key);
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

Dataset load_dataset(const RunConfig& config) {
  if (config.dataset.path.empty() || config.dataset.name.empty())
    throw ConfigError("dataset.path and dataset.name are required");
  const Dataset raw = parse_tu_dataset(config.dataset.path, config.dataset.name);
  std::optional<std::set<int>> keep;
  if (config.dataset.keep_classes) keep.emplace(config.dataset.keep_classes->begin(), config.dataset.keep_classes->end());
  Dataset ds = preprocess(raw, config.dataset.max_nodes, keep);
  if (config.dataset.max_graphs > 0 && ds.size() > static_cast<std::size_t>(config.dataset.max_graphs)) {
    ds.graphs.resize(config.dataset.max_graphs);
    ds.class_counts.clear();
    for (const auto& g : ds.graphs) ++ds.class_counts[*g.class_label()];
  }
  return ds;
}

StateVector evolve_graph(const Graph& graph, const EvolutionSection& evolution, const RunConfig& config) {
  SimulationOptions opts;
  opts.max_qubits = config.max_qubits;
  switch (evolution.kind) {
    case EvolutionKind::Ising:
      return run_sequence(graph, {evolution.thetas, evolution.times}, GraphHamiltonian::Ising, opts);
    case EvolutionKind::XY:
      return run_sequence(graph, {evolution.thetas, evolution.times}, GraphHamiltonian::XY, opts);
    case EvolutionKind::Hardware:
      return run_hardware_sequence(graph, config.hardware, evolution.durations_ns, opts);
  }
  throw std::logic_error("evolve_graph: unknown evolution kind");
}

ProbabilityDistribution graph_distribution(const Graph& graph, const EvolutionSection& evolution,
                                           const RunConfig& config, std::uint64_t seed) {
  const StateVector psi = evolve_graph(graph, evolution, config);
  const auto& m = config.measurement;
  if (m.shots == 0) return exact_distribution(psi, graph, m.observable, m.binning);
  const auto samples = sample_bitstrings(psi, static_cast<std::size_t>(m.shots), m.noise, seed);
  return histogram_from_samples(samples, graph, m.observable, m.binning);
}

FeatureSet compute_features(const std::vector<Graph>& graphs, const EvolutionSection& evolution,
                            const RunConfig& config) {
  std::vector<std::optional<ProbabilityDistribution>> dists(graphs.size());
  parallel_for(graphs.size(), config.workers, [&](std::size_t i) {
    if (graphs[i].num_nodes() > config.max_qubits) return;
    dists[i] = graph_distribution(graphs[i], evolution, config, mix_seed(config.seed, i));
  });
  FeatureSet fs;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (!dists[i]) {
      fs.skipped.push_back(graphs[i].id());
      continue;
    }
    fs.ids.push_back(graphs[i].id());
    fs.labels.push_back(graphs[i].class_label().value_or(0));
    fs.distributions.push_back(std::move(*dists[i]));
  }
  return fs;
}

std::vector<std::pair<double, double>> parameter_bounds(const RunConfig& config) {
  std::vector<std::pair<double, double>> b;
  if (config.evolution.kind == EvolutionKind::Hardware) {
    b.assign(2 * config.bo.depth + 1, {config.bo.duration_min_ns, config.bo.duration_max_ns});
  } else {
    for (int i = 0; i < config.bo.depth; ++i) {
      b.emplace_back(0.0, config.bo.t_max);
      b.emplace_back(0.0, config.bo.theta_max);
    }
  }
  return b;
}

EvolutionSection evolution_from_parameters(const RunConfig& config, const std::vector<double>& x) {
  EvolutionSection e = config.evolution;
  if (x.size() != parameter_bounds(config).size())
    throw std::invalid_argument("evolution_from_parameters: wrong parameter count");
  if (e.kind == EvolutionKind::Hardware) {
    e.durations_ns = x;
    return e;
  }
  e.thetas = {config.bo.theta0};
  e.times.clear();
  for (std::size_t i = 0; i < x.size(); i += 2) {
    e.times.push_back(x[i]);
    e.thetas.push_back(x[i + 1]);
  }
  return e;
}

Dataset make_synthetic_dataset(int graphs_per_class, int min_nodes, int max_nodes, std::uint64_t seed) {
  if (graphs_per_class < 1 || min_nodes < 2 || max_nodes < min_nodes)
    throw std::invalid_argument("make_synthetic_dataset: bad sizes");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(min_nodes, max_nodes);
  const double density[2] = {0.15, 0.85};
  Dataset ds;
  ds.name = "SYNTH";
  long id = 1;
  for (int i = 0; i < graphs_per_class; ++i) {
    for (int c = 0; c < 2; ++c) {
      Graph g = erdos_renyi(size(rng), density[c], rng());
      g.set_id(id++);
      g.set_class_label(c);
      g.set_original_label(c);
      ds.graphs.push_back(std::move(g));
      ++ds.class_counts[c];
    }
  }
  ds.label_mapping = {{0, 0}, {1, 1}};
  return ds;
}

std::vector<std::size_t> noise_study_selection(const Dataset& dataset, const NoiseStudySection& section) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dataset.graphs.size() && out.size() < static_cast<std::size_t>(section.max_graphs); ++i) {
    const Graph& g = dataset.graphs[i];
    if (g.num_nodes() > section.max_nodes || g.num_nodes() < 1) continue;
    if (section.classes) {
      const int label = g.original_label().value_or(g.class_label().value_or(-1));
      if (std::find(section.classes->begin(), section.classes->end(), label) == section.classes->end()) continue;
    }
    out.push_back(i);
  }
  return out;
}

NoiseStudyResult run_noise_study(const std::vector<Graph>& graphs, const RunConfig& config) {
  const auto& ns = config.noise_study;
  if (graphs.size() < 2) throw std::invalid_argument("run_noise_study: need at least two graphs");
  std::vector<StateVector> states(graphs.size());
  parallel_for(graphs.size(), config.workers,
               [&](std::size_t i) { states[i] = evolve_graph(graphs[i], config.evolution, config); });

  const auto& obs = config.measurement.observable;
  const auto& binning = config.measurement.binning;
  NoiseStudyResult result;
  std::vector<ProbabilityDistribution> clean(graphs.size()), noisy(graphs.size());
  for (int r = 0; r < ns.estimations; ++r) {
    parallel_for(graphs.size(), config.workers, [&](std::size_t i) {
      const std::uint64_t seed = mix_seed(config.seed, static_cast<std::uint64_t>(r), i);
      const auto draws = sample_clean(states[i], static_cast<std::size_t>(ns.shots), seed);
      const auto flipped = apply_detection_noise(draws, graphs[i].num_nodes(), ns.noise, seed);
      clean[i] = histogram_from_samples(draws, graphs[i], obs, binning);
      noisy[i] = histogram_from_samples(flipped, graphs[i], obs, binning);
    });
    const KernelMatrix kc = kernel_matrix(clean, config.mu, {}, config.workers);
    const KernelMatrix kn = kernel_matrix(noisy, config.mu, {}, config.workers);
    const auto dev = upper_triangle(relative_kernel_deviation(kn, kc));
    result.deviations.insert(result.deviations.end(), dev.begin(), dev.end());
  }
  std::size_t above = 0;
  for (double d : result.deviations) {
    above += d > ns.threshold;
    result.max_deviation = std::max(result.max_deviation, d);
  }
  result.fraction_above_threshold = static_cast<double>(above) / static_cast<double>(result.deviations.size());
  for (double q : result.quantile_levels) result.quantiles.push_back(quantile(result.deviations, q));
  return result;
}

json cmd_dataset_info(const RunConfig& config, std::ostream& log) {
  const Dataset ds = load_dataset(config);
  json summary = dataset_summary(ds);
  log << format_dataset_summary(summary);
  write_json_file(out_path(config, "dataset_info.json"), {{"config", config.to_json()}, {"summary", summary}});
  return summary;
}

json cmd_compute_features(const RunConfig& config, std::ostream& log) {
  const Dataset ds = load_dataset(config);
  const auto t0 = std::chrono::steady_clock::now();
  const FeatureSet fs = compute_features(ds.graphs, config.evolution, config);
  for (long id : fs.skipped) log << "skipped graph " << id << ": exceeds the qubit budget\n";
  write_distributions_csv(out_path(config, "features.csv"), fs.ids, fs.distributions);
  json summary = {{"graphs", fs.ids.size()},
                  {"skipped", fs.skipped},
                  {"mode", config.measurement.shots == 0 ? "exact" : "sampled"},
                  {"seconds", seconds_since(t0)}};
  write_json_file(out_path(config, "features.json"), {{"config", config.to_json()}, {"summary", summary}});
  log << "wrote " << fs.ids.size() << " distributions to " << out_path(config, "features.csv").string() << '\n';
  return summary;
}

json cmd_kernel(const RunConfig& config, std::ostream& log) {
  const Dataset ds = load_dataset(config);
  const FeatureSet fs = compute_features(ds.graphs, config.evolution, config);
  for (long id : fs.skipped) log << "skipped graph " << id << ": exceeds the qubit budget\n";
  const KernelMatrix k = kernel_matrix(fs.distributions, config.mu, fs.ids, config.workers);
  const double lmin = min_eigenvalue(k);
  log << "kernel " << k.size() << "x" << k.size() << ", minimum eigenvalue " << lmin << '\n';
  write_matrix_csv(out_path(config, "kernel.csv"), k.graph_ids, k.values);
  json kj = kernel_to_json(k);
  kj["labels"] = fs.labels;
  kj["min_eigenvalue"] = lmin;
  kj["config"] = config.to_json();
  write_json_file(out_path(config, "kernel.json"), kj);
  return {{"size", k.size()}, {"min_eigenvalue", lmin}, {"skipped", fs.skipped}};
}

namespace {

json run_benchmark(const RunConfig& config, std::ostream& log, json& report) {
  report = {{"config", config.to_json()}};
  const auto t_total = std::chrono::steady_clock::now();
  const Dataset ds = load_dataset(config);
  const std::vector<int> labels = ds.labels();
  std::map<int, int> counts;
  for (int l : labels) ++counts[l];
  int majority = 0;
  for (const auto& [c, n] : counts) majority = std::max(majority, n);
  const double baseline = static_cast<double>(majority) / static_cast<double>(labels.size());
  report["dataset"] = dataset_summary(ds);
  report["majority_baseline"] = baseline;
  log << "dataset " << ds.name << ": " << ds.size() << " graphs, majority baseline " << baseline << '\n';

  json& kernels = report["kernels"] = json::array();

  // QE kernel: train the sequence parameters by Bayesian optimization.
  const auto t_qe = std::chrono::steady_clock::now();
  BOConfig bo;
  bo.bounds = parameter_bounds(config);
  bo.budget = config.bo.budget;
  bo.n_init = std::min(config.bo.n_init, config.bo.budget);
  bo.candidates = config.bo.candidates;
  bo.kappa = config.bo.kappa;
  bo.workers = config.bo.workers;
  bo.seed = config.seed;
  bo.covariance.family = config.bo.family;
  bo.covariance.nu = config.bo.nu;
  const auto history_path = out_path(config, "qe_history.jsonl");
  std::filesystem::create_directories(history_path.parent_path());
  std::vector<Evaluation> warm;
  if (config.bo.resume && std::filesystem::exists(history_path)) {
    std::ifstream in(history_path);
    warm = read_history(in);
    log << "resuming from " << warm.size() << " recorded evaluations\n";
  } else {
    std::ofstream truncate(history_path, std::ios::trunc);
  }
  bo.history_path = history_path.string();

  CVOptions cv = config.cv;
  auto objective = [&](const std::vector<double>& x) {
    const FeatureSet fs = compute_features(ds.graphs, evolution_from_parameters(config, x), config);
    if (!fs.skipped.empty()) throw BudgetError("graphs exceed the qubit budget; lower dataset.max_nodes");
    const KernelMatrix k = kernel_matrix(fs.distributions, config.mu, fs.ids, config.workers);
    return -cross_validate(k.values, fs.labels, cv).mean_accuracy;
  };
  const BOResult trained = bayes_optimize(objective, bo, warm);
  const EvolutionSection best = evolution_from_parameters(config, trained.best_x);
  const FeatureSet fs = compute_features(ds.graphs, best, config);
  const KernelMatrix kqe = kernel_matrix(fs.distributions, config.mu, fs.ids, config.workers);
  const CVReport qe_report = cross_validate(kqe.values, fs.labels, cv);
  const double qe_seconds = seconds_since(t_qe);
  log << "QE " << evolution_kind_name(config.evolution.kind) << " p=" << config.bo.depth << ": "
      << qe_report.mean_accuracy << " +- " << qe_report.std_accuracy << '\n';
  json history = json::array();
  for (const auto& e : trained.history) history.push_back(to_json(e));
  report["qe_training"] = {{"best_x", trained.best_x}, {"best_value", trained.best_value}, {"history", history}};
  json qe_params = {{"parameters", trained.best_x},
                    {"thetas", best.thetas},
                    {"times", best.times},
                    {"durations_ns", best.durations_ns}};
  kernels.push_back({{"name", std::string("QE-") + evolution_kind_name(config.evolution.kind) + "-p" +
                                  std::to_string(config.bo.depth)},
                     {"family", "qe"},
                     {"hyperparameters", qe_params},
                     {"cv", to_json(qe_report)},
                     {"min_eigenvalue", min_eigenvalue(kqe)}});

  // Classical baselines: keep the hyperparameter with the best mean accuracy.
  const auto t_cl = std::chrono::steady_clock::now();
  if (config.classical.enabled) {
    CVOptions ccv = config.cv;
    ccv.c_grid = config.classical.c_grid;
    const double bound = random_walk_lambda_bound(ds.graphs);
    json best_rw;
    double best_rw_acc = -1.0;
    for (double lambda : config.classical.rw_lambdas) {
      if (!(lambda < bound)) {
        log << "RW lambda " << lambda << " skipped: above the convergence bound " << bound << '\n';
        continue;
      }
      const KernelMatrix k = random_walk_kernel_matrix(ds.graphs, lambda, config.workers);
      const CVReport r = cross_validate(k.values, labels, ccv);
      if (r.mean_accuracy > best_rw_acc) {
        best_rw_acc = r.mean_accuracy;
        best_rw = {{"name", "RW"},
                   {"family", "random_walk"},
                   {"hyperparameters", {{"lambda", lambda}}},
                   {"cv", to_json(r)},
                   {"min_eigenvalue", min_eigenvalue(k)}};
      }
    }
    if (!best_rw.is_null()) {
      log << "RW: " << best_rw_acc << '\n';
      kernels.push_back(best_rw);
    }
    json best_gs;
    double best_gs_acc = -1.0;
    for (int k : config.classical.graphlet_sizes) {
      const KernelMatrix km = graphlet_kernel_matrix(ds.graphs, k, static_cast<std::size_t>(config.classical.graphlet_samples),
                                                     config.seed, config.workers);
      const CVReport r = cross_validate(km.values, labels, ccv);
      if (r.mean_accuracy > best_gs_acc) {
        best_gs_acc = r.mean_accuracy;
        best_gs = {{"name", "GS"},
                   {"family", "graphlet"},
                   {"hyperparameters", {{"k", k}, {"samples", config.classical.graphlet_samples}}},
                   {"cv", to_json(r)},
                   {"min_eigenvalue", min_eigenvalue(km)}};
      }
    }
    if (!best_gs.is_null()) {
      log << "GS: " << best_gs_acc << '\n';
      kernels.push_back(best_gs);
    }
  }
  const double classical_seconds = seconds_since(t_cl);

  report["timing"] = {{"qe_seconds", qe_seconds},
                      {"classical_seconds", classical_seconds},
                      {"total_seconds", seconds_since(t_total)}};
  return report;
}

}  // namespace

json cmd_benchmark(const RunConfig& config, std::ostream& log) {
  json report;
  try {
    run_benchmark(config, log, report);
  } catch (const std::exception& e) {
    report["error"] = e.what();
    write_json_file(out_path(config, "benchmark_report.partial.json"), report);
    throw;
  }
  write_json_file(out_path(config, "benchmark_report.json"), report);
  return report;
}

json cmd_analytic_demo(const RunConfig& config, std::ostream& log) {
  const auto& d = config.demo;
  std::vector<Graph> graphs;
  std::vector<int> cls;
  for (std::size_t c = 0; c < d.densities.size(); ++c)
    for (int g = 0; g < d.graphs_per_class; ++g) {
      graphs.push_back(erdos_renyi(d.num_nodes, d.densities[c], mix_seed(d.seed, c, static_cast<std::uint64_t>(g))));
      graphs.back().set_id(static_cast<long>(graphs.size()) - 1);
      cls.push_back(static_cast<int>(c));
    }
  int K = 1;
  for (const auto& g : graphs) K = std::max(K, degree_histogram(g).max_degree() + 1);
  RamseyConfig rc;
  rc.theta = d.theta;
  rc.num_components = K;
  rc.time_samples = 4 * K + 1;
  rc.validate();

  const std::size_t n = graphs.size();
  std::vector<ProbabilityDistribution> closed(n);
  std::vector<std::vector<double>> traces(n);
  double max_gap = 0.0;
  std::vector<double> col_graph, col_k, col_closed, col_dft;
  for (std::size_t i = 0; i < n; ++i) {
    closed[i] = fourier_features(graphs[i], rc);
    traces[i] = sample_occupation_trace(graphs[i], rc.theta, rc.period, rc.time_samples);
    const ProbabilityDistribution dft = fourier_distribution(traces[i], K);
    for (int k = 0; k < K; ++k) {
      const double a = closed[i].prob(k), b = dft.prob(k);
      max_gap = std::max(max_gap, std::abs(a - b));
      col_graph.push_back(static_cast<double>(i));
      col_k.push_back(k);
      col_closed.push_back(a);
      col_dft.push_back(b);
    }
  }
  Eigen::MatrixXd js(n, n);
  double intra = 0.0, inter = 0.0;
  int n_intra = 0, n_inter = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      js(i, j) = js_divergence(closed[i], closed[j]);
      if (j <= i) continue;
      if (cls[i] == cls[j]) {
        intra += js(i, j);
        ++n_intra;
      } else {
        inter += js(i, j);
        ++n_inter;
      }
    }
  intra = n_intra ? intra / n_intra : 0.0;
  inter = n_inter ? inter / n_inter : 0.0;
  const double ratio = intra > 0.0 ? inter / intra : std::numeric_limits<double>::infinity();

  if (config.emit_plot_data) {
    std::vector<std::string> header{"t"};
    std::vector<std::vector<double>> cols(1);
    for (int j = 0; j < rc.time_samples; ++j) cols[0].push_back(j * rc.period / (rc.time_samples - 1));
    for (std::size_t i = 0; i < n; ++i) {
      header.push_back("graph_" + std::to_string(i));
      cols.push_back(traces[i]);
    }
    write_columns_csv(out_path(config, "demo_traces.csv"), header, cols);
    write_columns_csv(out_path(config, "demo_distributions.csv"), {"graph", "k", "closed_form", "dft"},
                      {col_graph, col_k, col_closed, col_dft});
    std::vector<long> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    write_matrix_csv(out_path(config, "demo_js_matrix.csv"), ids, js);
  }
  json summary = {{"graphs", n},
                  {"classes", cls},
                  {"num_components", K},
                  {"intra_class_mean_js", intra},
                  {"inter_class_mean_js", inter},
                  {"separation_ratio", ratio},
                  {"max_closed_form_vs_dft_gap", max_gap}};
  write_json_file(out_path(config, "demo_summary.json"), {{"config", config.to_json()}, {"summary", summary}});
  log << "intra-class JS " << intra << ", inter-class JS " << inter << ", ratio " << ratio << '\n';
  return summary;
}

json cmd_noise_study(const RunConfig& config, std::ostream& log) {
  const Dataset ds = load_dataset(config);
  const auto selection = noise_study_selection(ds, config.noise_study);
  if (selection.size() < 2) throw ConfigError("noise study selected fewer than two graphs");
  std::vector<Graph> graphs;
  for (std::size_t i : selection) {
    if (!ds.graphs[i].has_positions()) throw ConfigError("noise study needs node positions (node attributes)");
    graphs.push_back(ds.graphs[i]);
  }
  RunConfig cfg = config;
  cfg.evolution.kind = EvolutionKind::Hardware;
  try {
    validate_durations(cfg.evolution.durations_ns, cfg.hardware);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("evolution.durations_ns: ") + e.what());
  }
  const auto t0 = std::chrono::steady_clock::now();
  const NoiseStudyResult r = run_noise_study(graphs, cfg);

  std::vector<double> sorted = r.deviations;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> xs, cdf;
  const std::size_t step = std::max<std::size_t>(1, sorted.size() / 2000);
  for (std::size_t i = 0; i < sorted.size(); i += step) {
    xs.push_back(sorted[i]);
    cdf.push_back(static_cast<double>(i + 1) / static_cast<double>(sorted.size()));
  }
  if (xs.empty() || xs.back() != sorted.back()) {
    xs.push_back(sorted.back());
    cdf.push_back(1.0);
  }
  write_columns_csv(out_path(config, "noise_cdf.csv"), {"delta_k", "cdf"}, {xs, cdf});
  std::vector<long> selected_ids;
  for (const auto& g : graphs) selected_ids.push_back(g.id());
  json summary = {{"graphs", graphs.size()},
                  {"selection_indices", selection},
                  {"selection_ids", selected_ids},
                  {"pairs_per_estimation", graphs.size() * (graphs.size() - 1) / 2},
                  {"estimations", cfg.noise_study.estimations},
                  {"shots", cfg.noise_study.shots},
                  {"epsilon", cfg.noise_study.noise.epsilon},
                  {"epsilon_prime", cfg.noise_study.noise.epsilon_prime},
                  {"threshold", cfg.noise_study.threshold},
                  {"fraction_above_threshold", r.fraction_above_threshold},
                  {"max_deviation", r.max_deviation},
                  {"quantile_levels", r.quantile_levels},
                  {"quantiles", r.quantiles},
                  {"seconds", seconds_since(t0)}};
  write_json_file(out_path(config, "noise_quantiles.json"), {{"config", cfg.to_json()}, {"summary", summary}});
  log << "fraction of dK > " << cfg.noise_study.threshold << ": " << r.fraction_above_threshold << " (quantiles";
  for (std::size_t i = 0; i < r.quantiles.size(); ++i) log << ' ' << r.quantile_levels[i] << ':' << r.quantiles[i];
  log << ")\n";
  return summary;
}

}  // namespace qek
