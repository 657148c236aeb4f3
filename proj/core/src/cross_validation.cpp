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

#include "qek/cross_validation.hpp"
#include "qek/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qek {

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw std::invalid_argument("log_grid: need 0 < lo <= hi and n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) out[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  return out;
}

std::vector<double> default_c_grid() { return log_grid(1e-3, 1e3, 7); }

namespace {

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

nlohmann::json to_json(const CVReport& r) {
  return {{"mean_accuracy", r.mean_accuracy},
          {"std_accuracy", r.std_accuracy},
          {"fold_accuracies", r.fold_accuracies},
          {"chosen_c", r.chosen_c},
          {"per_fold_best_mean", r.per_fold_best_mean},
          {"per_fold_best_std", r.per_fold_best_std},
          {"flagged_folds", r.flagged_folds},
          {"repeat_seeds", r.repeat_seeds}};
}

double holdout_accuracy(const Eigen::MatrixXd& K, std::span<const int> labels, std::span<const int> train,
                        std::span<const int> test, double C, const SVMOptions& options, bool* degenerate) {
  if (test.empty()) throw std::invalid_argument("holdout_accuracy: empty test set");
  std::vector<int> ytr(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) ytr[i] = labels[train[i]];
  const std::set<int> classes(ytr.begin(), ytr.end());
  if (degenerate) *degenerate = classes.size() < 2;
  std::size_t correct = 0;
  if (classes.size() < 2) {
    if (classes.empty()) throw std::invalid_argument("holdout_accuracy: empty training set");
    for (int t : test) correct += labels[t] == *classes.begin();
    return static_cast<double>(correct) / static_cast<double>(test.size());
  }
  Eigen::MatrixXd sub(train.size(), train.size());
  for (std::size_t r = 0; r < train.size(); ++r)
    for (std::size_t c = 0; c < train.size(); ++c) sub(r, c) = K(train[r], train[c]);
  const OneVsOneModel model = one_vs_one_train(sub, ytr, C, options);
  std::vector<double> row(train.size());
  for (int t : test) {
    for (std::size_t c = 0; c < train.size(); ++c) row[c] = K(t, train[c]);
    correct += one_vs_one_predict(model, row) == labels[t];
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

CVReport cross_validate(const Eigen::MatrixXd& K, std::span<const int> labels, const CVOptions& options) {
  const int n = static_cast<int>(labels.size());
  if (K.rows() != n || K.cols() != n) throw std::invalid_argument("cross_validate: kernel and label sizes differ");
  if (options.folds < 2 || options.folds > n) throw std::invalid_argument("cross_validate: need 2 <= folds <= samples");
  if (options.repeats < 1) throw std::invalid_argument("cross_validate: repeats must be >= 1");
  if (options.c_grid.empty()) throw std::invalid_argument("cross_validate: empty C grid");

  const int F = options.folds, R = options.repeats;
  const std::size_t G = options.c_grid.size();
  CVReport report;
  // acc[(r * F + f) * G + g]
  std::vector<double> acc(static_cast<std::size_t>(R) * F * G);
  std::vector<char> flagged(static_cast<std::size_t>(R) * F, 0);
  std::vector<std::vector<int>> orders(R);
  for (int r = 0; r < R; ++r) {
    const std::uint64_t s = options.seed + static_cast<std::uint64_t>(r);
    report.repeat_seeds.push_back(s);
    orders[r].resize(n);
    std::iota(orders[r].begin(), orders[r].end(), 0);
    std::mt19937_64 rng(s);
    std::shuffle(orders[r].begin(), orders[r].end(), rng);
  }

  auto run_task = [&](std::size_t task) {
    const int r = static_cast<int>(task / F), f = static_cast<int>(task % F);
    const auto& order = orders[r];
    // Fold f covers [f n / F, (f + 1) n / F).
    const int lo = static_cast<int>(static_cast<long>(f) * n / F);
    const int hi = static_cast<int>(static_cast<long>(f + 1) * n / F);
    std::vector<int> train, test;
    for (int i = 0; i < n; ++i) (i >= lo && i < hi ? test : train).push_back(order[i]);
    for (std::size_t g = 0; g < G; ++g) {
      bool degenerate = false;
      acc[task * G + g] = holdout_accuracy(K, labels, train, test, options.c_grid[g], options.svm, &degenerate);
      flagged[task] = degenerate;
    }
  };
  const std::size_t tasks = static_cast<std::size_t>(R) * F;
  parallel_for(tasks, std::clamp(options.workers, 1, 256), run_task);

  std::vector<double> per_fold_best;
  for (int r = 0; r < R; ++r) {
    std::size_t best_g = 0;
    double best_mean = -1.0;
    for (std::size_t g = 0; g < G; ++g) {
      double m = 0.0;
      for (int f = 0; f < F; ++f) m += acc[(static_cast<std::size_t>(r) * F + f) * G + g];
      m /= F;
      if (m > best_mean + 1e-12) {
        best_mean = m;
        best_g = g;
      }
    }
    report.chosen_c.push_back(options.c_grid[best_g]);
    for (int f = 0; f < F; ++f) {
      const std::size_t task = static_cast<std::size_t>(r) * F + f;
      report.fold_accuracies.push_back(acc[task * G + best_g]);
      double best = 0.0;
      for (std::size_t g = 0; g < G; ++g) best = std::max(best, acc[task * G + g]);
      per_fold_best.push_back(best);
      if (flagged[task]) report.flagged_folds.push_back(static_cast<int>(task));
    }
  }
  report.mean_accuracy = mean_of(report.fold_accuracies);
  report.std_accuracy = std_of(report.fold_accuracies);
  report.per_fold_best_mean = mean_of(per_fold_best);
  report.per_fold_best_std = std_of(per_fold_best);
  return report;
}

}  // namespace qek
