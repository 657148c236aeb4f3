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

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qek/common.hpp"
#include "qek/pipeline.hpp"
#include "qek/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  int workers = 0;
  bool emit_plot_data = false;
  bool print_config = false;
};

qek::RunConfig resolve(const CommonFlags& f) {
  nlohmann::json j = nlohmann::json::object();
  if (!f.config_path.empty()) j = qek::read_json_file(f.config_path);
  for (const auto& o : f.overrides) qek::apply_override(j, o);
  if (!f.output_dir.empty()) j["output_dir"] = f.output_dir;
  if (f.workers > 0) j["workers"] = f.workers;
  if (f.emit_plot_data) j["emit_plot_data"] = true;
  return qek::RunConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum evolution graph kernels: simulation, kernels and benchmarks"};
  app.require_subcommand(1);
  CommonFlags flags;

  using Command = nlohmann::json (*)(const qek::RunConfig&, std::ostream&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands = {
      {"dataset-info", "Summarize a dataset after preprocessing", qek::cmd_dataset_info},
      {"features", "Compute one measurement distribution per graph", qek::cmd_compute_features},
      {"kernel", "Build the quantum evolution Gram matrix", qek::cmd_kernel},
      {"benchmark", "Train the pulse sequence and compare against classical kernels", qek::cmd_benchmark},
      {"demo-analytic", "Closed-form Ising demo on random graphs", qek::cmd_analytic_demo},
      {"noise-study", "Kernel deviation under detection noise", qek::cmd_noise_study},
  };
  Command selected = nullptr;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", flags.config_path, "JSON configuration file");
    sub->add_option("-s,--set", flags.overrides, "Override a config key, e.g. --set bo.budget=20");
    sub->add_option("-o,--output-dir", flags.output_dir, "Directory for reports and data files");
    sub->add_option("-j,--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--emit-plot-data", flags.emit_plot_data, "Write CSV plot data");
    sub->add_flag("--print-config", flags.print_config, "Print the resolved config and exit");
    sub->callback([&selected, f = fn] { selected = f; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  qek::RunConfig config;
  try {
    config = resolve(flags);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (flags.print_config) {
    std::cout << config.to_json().dump(2) << '\n';
    return 0;
  }
  try {
    const nlohmann::json summary = selected(config, std::cout);
    const std::string text = summary.dump(2);
    if (text.size() < 4096) std::cout << text << '\n';
  } catch (const qek::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qek::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
