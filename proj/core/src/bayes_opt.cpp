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

#include "qek/bayes_opt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qek/common.hpp"

namespace qek {

void BOConfig::validate() const {
  if (bounds.empty()) throw std::invalid_argument("BOConfig: no dimensions");
  for (const auto& [lo, hi] : bounds)
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
      throw std::invalid_argument("BOConfig: each bound needs lo < hi");
  if (budget < 1) throw std::invalid_argument("BOConfig: budget must be >= 1");
  if (n_init < 1) throw std::invalid_argument("BOConfig: n_init must be >= 1");
  if (candidates < 1 || thompson_candidates < 1) throw std::invalid_argument("BOConfig: candidate counts must be >= 1");
  if (!(kappa >= 0.0)) throw std::invalid_argument("BOConfig: kappa must be >= 0");
  if (workers < 1) throw std::invalid_argument("BOConfig: workers must be >= 1");
  for (const auto& p : initial_points) {
    if (p.size() != bounds.size()) throw std::invalid_argument("BOConfig: initial point has wrong dimension");
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] < bounds[i].first || p[i] > bounds[i].second)
        throw std::invalid_argument("BOConfig: initial point outside the bounds");
  }
}

nlohmann::json to_json(const Evaluation& e) {
  return {{"iteration", e.iteration}, {"x", e.x}, {"value", e.value}, {"wall_time_s", e.wall_time_s}};
}

Evaluation evaluation_from_json(const nlohmann::json& j) {
  Evaluation e;
  e.iteration = j.at("iteration").get<int>();
  e.x = j.at("x").get<std::vector<double>>();
  e.value = j.at("value").get<double>();
  e.wall_time_s = j.value("wall_time_s", 0.0);
  return e;
}

std::vector<Evaluation> read_history(std::istream& in) {
  std::vector<Evaluation> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(evaluation_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("<history>", lineno, e.what());
    }
  }
  return out;
}

namespace {

std::string format_point(const std::vector<double>& x) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ']';
  return os.str();
}

class Runner {
 public:
  Runner(const Objective& f, const BOConfig& c) : f_(f), c_(c) {
    if (!c.history_path.empty()) {
      log_.open(c.history_path, std::ios::app);
      if (!log_) throw std::invalid_argument("bayes_optimize: cannot open history file " + c.history_path);
    }
  }

  // Evaluates a batch, in parallel when configured, and appends in order.
  void evaluate(const std::vector<std::vector<double>>& xs, std::vector<Evaluation>& history) {
    std::vector<Evaluation> batch(xs.size());
    std::vector<std::exception_ptr> errors(xs.size());
    auto run = [&](std::size_t i) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        batch[i].value = f_(xs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
      batch[i].x = xs[i];
      batch[i].wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    if (c_.workers > 1 && xs.size() > 1) {
      std::vector<std::jthread> pool;
      for (std::size_t i = 0; i < xs.size(); ++i) pool.emplace_back(run, i);
    } else {
      for (std::size_t i = 0; i < xs.size(); ++i) run(i);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (errors[i]) {
        try {
          std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
          throw Error("objective failed at x = " + format_point(xs[i]) + ": " + e.what());
        }
      }
      if (!std::isfinite(batch[i].value))
        throw Error("objective returned a non-finite value at x = " + format_point(xs[i]));
      batch[i].iteration = static_cast<int>(history.size());
      if (log_.is_open()) log_ << to_json(batch[i]).dump() << '\n' << std::flush;
      history.push_back(std::move(batch[i]));
    }
  }

 private:
  const Objective& f_;
  const BOConfig& c_;
  std::ofstream log_;
};

}  // namespace

BOResult bayes_optimize(const Objective& objective, const BOConfig& config, std::span<const Evaluation> warm_start) {
  config.validate();
  const std::size_t d = config.bounds.size();
  for (const auto& e : warm_start)
    if (e.x.size() != d) throw std::invalid_argument("bayes_optimize: warm-start point has wrong dimension");

  std::vector<Evaluation> history(warm_start.begin(), warm_start.end());
  if (history.size() > static_cast<std::size_t>(config.budget)) history.resize(config.budget);
  Runner runner(objective, config);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  auto to_unit = [&](const std::vector<double>& x) {
    std::vector<double> u(d);
    for (std::size_t i = 0; i < d; ++i)
      u[i] = (x[i] - config.bounds[i].first) / (config.bounds[i].second - config.bounds[i].first);
    return u;
  };
  auto from_unit = [&](const std::vector<double>& u) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i)
      x[i] = config.bounds[i].first + u[i] * (config.bounds[i].second - config.bounds[i].first);
    return x;
  };
  auto random_unit = [&](std::mt19937_64& g) {
    std::vector<double> u(d);
    for (auto& v : u) v = u01(g);
    return u;
  };

  // Initial design: forced points, then uniform draws up to n_init.
  const std::size_t budget = static_cast<std::size_t>(config.budget);
  std::vector<std::vector<double>> design;
  for (const auto& p : config.initial_points) design.push_back(p);
  while (design.size() < static_cast<std::size_t>(config.n_init)) design.push_back(from_unit(random_unit(rng)));
  {
    std::vector<std::vector<double>> todo;
    for (std::size_t i = history.size(); i < design.size() && history.size() + todo.size() < budget; ++i)
      todo.push_back(design[i]);
    runner.evaluate(todo, history);
  }

  CovarianceSpec cov = config.covariance;
  int fit_round = 0;
  while (history.size() < budget) {
    Eigen::MatrixXd X(history.size(), d);
    Eigen::VectorXd y(history.size());
    for (std::size_t i = 0; i < history.size(); ++i) {
      const auto u = to_unit(history[i].x);
      for (std::size_t j = 0; j < d; ++j) X(i, j) = u[j];
      y(i) = history[i].value;
    }
    GaussianProcess gp;
    GPOptions gp_opts = config.gp;
    gp_opts.seed = config.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(++fit_round));
    gp.fit(X, y, cov, gp_opts);
    cov = gp.covariance();

    const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(config.workers), budget - history.size());
    std::vector<std::vector<double>> next;
    if (config.workers <= 1) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> arg;
      for (int c = 0; c < config.candidates; ++c) {
        auto u = random_unit(rng);
        const double a = lcb(gp, u, config.kappa);
        if (a < best) {
          best = a;
          arg = std::move(u);
        }
      }
      next.push_back(from_unit(arg));
    } else {
      const int pool = std::min(config.candidates, config.thompson_candidates);
      for (std::size_t w = 0; w < batch; ++w) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(history.size()),
                          static_cast<std::uint32_t>(w)};
        std::mt19937_64 wrng(seq);
        Eigen::MatrixXd P(pool, d);
        for (int c = 0; c < pool; ++c)
          for (std::size_t j = 0; j < d; ++j) P(c, j) = u01(wrng);
        const Eigen::VectorXd draw = gp.sample_joint(P, wrng);
        Eigen::Index arg = 0;
        draw.minCoeff(&arg);
        std::vector<double> u(d);
        for (std::size_t j = 0; j < d; ++j) u[j] = P(arg, j);
        next.push_back(from_unit(u));
      }
    }
    runner.evaluate(next, history);
  }

  BOResult result;
  result.history = std::move(history);
  result.best_value = std::numeric_limits<double>::infinity();
  for (const auto& e : result.history)
    if (e.value < result.best_value) {
      result.best_value = e.value;
      result.best_x = e.x;
    }
  return result;
}

}  // namespace qek
