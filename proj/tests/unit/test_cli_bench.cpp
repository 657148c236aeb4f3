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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qek/pipeline.hpp"
#include "qek/report.hpp"

using namespace qek;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qek_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json fixture_config(const fs::path& out) {
  return {{"dataset", {{"path", (fs::path(QEK_TEST_DATA_DIR) / "FIX").string()}, {"name", "FIX"}}},
          {"output_dir", out.string()}};
}

}  // namespace

TEST_SUITE("cli_bench") {
  TEST_CASE("config defaults round trip") {
    const RunConfig c = RunConfig::from_json(json::object());
    const json j = c.to_json();
    CHECK(RunConfig::from_json(j).to_json() == j);
    CHECK(j["bo"]["budget"] == 100);
    CHECK(j["evolution"]["durations_ns"] == json({87, 32, 84, 54, 72}));
    CHECK(j["noise_study"]["max_nodes"] == 12);
  }

  TEST_CASE("config errors") {
    CHECK_THROWS_AS(RunConfig::from_json({{"nope", 1}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"bo", {{"budgett", 1}}}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"mu", "high"}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"evolution", {{"hamiltonian", "heisenberg"}}}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"evolution", {{"hamiltonian", "hardware"}, {"durations_ns", {3, 50, 50}}}}}),
                    ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json({{"workers", 0}}), ConfigError);
  }

  TEST_CASE("dotted overrides") {
    json j = json::object();
    apply_override(j, "bo.budget=7");
    apply_override(j, "dataset.name=MUTAG");
    apply_override(j, "cv.c_grid=[0.1,1]");
    CHECK(j["bo"]["budget"] == 7);
    CHECK(j["dataset"]["name"] == "MUTAG");
    const RunConfig c = RunConfig::from_json(j);
    CHECK(c.cv.c_grid == std::vector<double>{0.1, 1.0});
    CHECK_THROWS_AS(apply_override(j, "novalue"), ConfigError);
  }

  TEST_CASE("dataset info on the fixture") {
    const auto out = scratch("info");
    std::ostringstream log;
    const json s = cmd_dataset_info(RunConfig::from_json(fixture_config(out)), log);
    CHECK(s["samples"] == 2);
    CHECK(fs::exists(out / "dataset_info.json"));
  }

  TEST_CASE("feature files are reproducible byte for byte") {
    const auto out = scratch("features");
    json j = fixture_config(out);
    j["measurement"] = {{"shots", 500}, {"epsilon", 0.05}, {"epsilon_prime", 0.05}};
    std::ostringstream log;
    cmd_compute_features(RunConfig::from_json(j), log);
    const std::string first = slurp(out / "features.csv");
    j["workers"] = 2;
    cmd_compute_features(RunConfig::from_json(j), log);
    CHECK(slurp(out / "features.csv") == first);
    CHECK(first.find("graph_id,bin,prob") == 0);
  }

  TEST_CASE("oversized graphs are skipped") {
    const auto out = scratch("skip");
    json j = fixture_config(out);
    j["max_qubits"] = 2;
    std::ostringstream log;
    const json s = cmd_compute_features(RunConfig::from_json(j), log);
    CHECK(s["skipped"].size() == 2);
    CHECK(log.str().find("skipped graph") != std::string::npos);
  }

  TEST_CASE("kernel command") {
    const auto out = scratch("kernel");
    std::ostringstream log;
    const json s = cmd_kernel(RunConfig::from_json(fixture_config(out)), log);
    CHECK(s["size"] == 2);
    const json k = read_json_file(out / "kernel.json");
    CHECK(k["labels"].size() == 2);
  }

  TEST_CASE("analytic demo output") {
    const auto out = scratch("demo");
    std::ostringstream log;
    const json s = cmd_analytic_demo(RunConfig::from_json({{"output_dir", out.string()}}), log);
    CHECK(s["intra_class_mean_js"].get<double>() <= s["inter_class_mean_js"].get<double>() / 50.0);
    CHECK(s["max_closed_form_vs_dft_gap"].get<double>() < 1e-4);
    for (const char* f : {"demo_traces.csv", "demo_distributions.csv", "demo_js_matrix.csv", "demo_summary.json"})
      CHECK(fs::exists(out / f));
  }

  TEST_CASE("noise study needs positions and reports three quantiles") {
    const auto out = scratch("noise");
    json j = fixture_config(out);
    j["noise_study"] = {{"estimations", 3}, {"shots", 200}, {"classes", nullptr}};
    std::ostringstream log;
    const json s = cmd_noise_study(RunConfig::from_json(j), log);
    CHECK(s["quantiles"].size() == 3);
    CHECK(s["quantile_levels"] == json({0.5, 0.9, 0.999}));
    CHECK(fs::exists(out / "noise_cdf.csv"));
    j["noise_study"]["epsilon"] = 0.0;
    j["noise_study"]["epsilon_prime"] = 0.0;
    const json z = cmd_noise_study(RunConfig::from_json(j), log);
    CHECK(z["max_deviation"] == 0.0);
  }

  TEST_CASE("synthetic benchmark reaches perfect accuracy") {
    const auto out = scratch("bench");
    const auto data = out / "data";
    Dataset ds = make_synthetic_dataset(10, 6, 8, 4);
    write_tu_dataset(ds, data);
    json j = {{"dataset", {{"path", data.string()}, {"name", "SYNTH"}}},
              {"output_dir", out.string()},
              {"bo", {{"budget", 4}, {"n_init", 3}, {"candidates", 200}}},
              {"cv", {{"folds", 5}, {"repeats", 2}}},
              {"classical", {{"graphlet_sizes", {3}}, {"graphlet_samples", 200}, {"rw_lambdas", {1e-3}}}}};
    std::ostringstream log;
    const json r = cmd_benchmark(RunConfig::from_json(j), log);
    CHECK(r["kernels"][0]["cv"]["mean_accuracy"] == 1.0);
    CHECK(r["kernels"].size() == 3);
    CHECK(r["qe_training"]["history"].size() == 4);
    CHECK(r["config"] == RunConfig::from_json(j).to_json());
    CHECK(fs::exists(out / "benchmark_report.json"));
    CHECK(fs::exists(out / "qe_history.jsonl"));
  }
}
