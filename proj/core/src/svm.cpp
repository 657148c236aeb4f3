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

#include "qek/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace qek {

namespace {

constexpr double kTau = 1e-12;

}  // namespace

SVMModel svm_train(const Eigen::MatrixXd& K, std::span<const int> y, double C, const SVMOptions& options) {
  const long n = K.rows();
  if (K.cols() != n) throw std::invalid_argument("svm_train: kernel matrix must be square");
  if (static_cast<long>(y.size()) != n) throw std::invalid_argument("svm_train: label count mismatch");
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("svm_train: C must be > 0");
  bool pos = false, neg = false;
  for (int v : y) {
    if (v == 1) pos = true;
    else if (v == -1) neg = true;
    else throw std::invalid_argument("svm_train: labels must be +1 or -1");
  }
  if (!pos || !neg) throw std::invalid_argument("svm_train: both classes are required");

  SVMModel m;
  m.C = C;
  m.labels.assign(y.begin(), y.end());
  std::vector<double> a(n, 0.0);
  std::vector<double> G(n, -1.0);  // gradient of the dual objective at a = 0
  auto Q = [&](long i, long j) { return y[i] * y[j] * K(i, j); };
  auto is_up = [&](long t) { return (y[t] == 1 && a[t] < C) || (y[t] == -1 && a[t] > 0); };
  auto is_low = [&](long t) { return (y[t] == 1 && a[t] > 0) || (y[t] == -1 && a[t] < C); };

  long iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    long i = -1;
    for (long t = 0; t < n; ++t)
      if (is_up(t) && -y[t] * G[t] >= gmax) {
        gmax = -y[t] * G[t];
        i = t;
      }
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    long j = -1;
    for (long t = 0; t < n; ++t) {
      if (!is_low(t)) continue;
      gmax2 = std::max(gmax2, y[t] * G[t]);
      const double grad_diff = gmax + y[t] * G[t];
      if (i >= 0 && grad_diff > 0) {
        double quad = K(i, i) + K(t, t) - 2.0 * K(i, t);
        if (quad <= 0) quad = kTau;
        const double obj = -grad_diff * grad_diff / quad;
        if (obj <= best) {
          best = obj;
          j = t;
        }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < options.tol) {
      m.converged = true;
      break;
    }

    const double ai_old = a[i], aj_old = a[j];
    if (y[i] != y[j]) {
      double quad = Q(i, i) + Q(j, j) + 2.0 * Q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-G[i] - G[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0) {
        if (a[j] < 0) { a[j] = 0; a[i] = diff; }
      } else {
        if (a[i] < 0) { a[i] = 0; a[j] = -diff; }
      }
      if (diff > 0) {
        if (a[i] > C) { a[i] = C; a[j] = C - diff; }
      } else {
        if (a[j] > C) { a[j] = C; a[i] = C + diff; }
      }
    } else {
      double quad = Q(i, i) + Q(j, j) - 2.0 * Q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (G[i] - G[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > C) {
        if (a[i] > C) { a[i] = C; a[j] = sum - C; }
      } else {
        if (a[j] < 0) { a[j] = 0; a[i] = sum; }
      }
      if (sum > C) {
        if (a[j] > C) { a[j] = C; a[i] = sum - C; }
      } else {
        if (a[i] < 0) { a[i] = 0; a[j] = sum; }
      }
    }
    const double di = a[i] - ai_old, dj = a[j] - aj_old;
    for (long t = 0; t < n; ++t) G[t] += Q(t, i) * di + Q(t, j) * dj;
  }
  m.iterations = iter;

  // b = -rho with rho averaged over free vectors, else the midpoint of the
  // feasible interval.
  double sum_free = 0.0;
  long n_free = 0;
  double ub = std::numeric_limits<double>::infinity(), lb = -std::numeric_limits<double>::infinity();
  for (long t = 0; t < n; ++t) {
    const double yg = y[t] * G[t];
    if (a[t] >= C) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (a[t] <= 0) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  m.bias = -rho;
  m.alphas = std::move(a);
  for (long t = 0; t < n; ++t)
    if (m.alphas[t] > 0) m.support_indices.push_back(static_cast<int>(t));
  return m;
}

double svm_decision(const SVMModel& model, std::span<const double> k_row) {
  if (k_row.size() != model.alphas.size()) throw std::invalid_argument("svm_decision: kernel row length mismatch");
  double f = model.bias;
  for (int i : model.support_indices) f += model.labels[i] * model.alphas[i] * k_row[i];
  return f;
}

int svm_predict(const SVMModel& model, std::span<const double> k_row) {
  return svm_decision(model, k_row) >= 0.0 ? 1 : -1;
}

double svm_dual_objective(const Eigen::MatrixXd& K, std::span<const int> y, std::span<const double> alphas) {
  const long n = K.rows();
  if (static_cast<long>(y.size()) != n || static_cast<long>(alphas.size()) != n)
    throw std::invalid_argument("svm_dual_objective: size mismatch");
  double quad = 0.0, lin = 0.0;
  for (long i = 0; i < n; ++i) {
    lin += alphas[i];
    if (alphas[i] == 0.0) continue;
    for (long j = 0; j < n; ++j) quad += alphas[i] * alphas[j] * y[i] * y[j] * K(i, j);
  }
  return 0.5 * quad - lin;
}

OneVsOneModel one_vs_one_train(const Eigen::MatrixXd& K, std::span<const int> labels, double C,
                               const SVMOptions& options) {
  if (K.rows() != K.cols() || static_cast<std::size_t>(K.rows()) != labels.size())
    throw std::invalid_argument("one_vs_one_train: kernel and label sizes differ");
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) throw std::invalid_argument("one_vs_one_train: need at least two classes");
  OneVsOneModel model;
  model.classes.assign(distinct.begin(), distinct.end());
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      const int ca = model.classes[a], cb = model.classes[b];
      std::vector<int> idx, y;
      for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t] == ca || labels[t] == cb) {
          idx.push_back(static_cast<int>(t));
          y.push_back(labels[t] == ca ? 1 : -1);
        }
      }
      Eigen::MatrixXd sub(idx.size(), idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = K(idx[r], idx[c]);
      model.pairs.emplace_back(ca, cb);
      model.models.push_back(svm_train(sub, y, C, options));
      model.members.push_back(std::move(idx));
    }
  }
  return model;
}

int one_vs_one_predict(const OneVsOneModel& model, std::span<const double> k_row) {
  std::map<int, int> votes;
  for (int c : model.classes) votes[c] = 0;
  std::vector<double> sub;
  for (std::size_t m = 0; m < model.models.size(); ++m) {
    const auto& idx = model.members[m];
    sub.resize(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (static_cast<std::size_t>(idx[r]) >= k_row.size())
        throw std::invalid_argument("one_vs_one_predict: kernel row too short");
      sub[r] = k_row[idx[r]];
    }
    const int winner = svm_predict(model.models[m], sub) == 1 ? model.pairs[m].first : model.pairs[m].second;
    ++votes[winner];
  }
  int best = model.classes.front(), best_votes = -1;
  for (const auto& [c, v] : votes)
    if (v > best_votes) {
      best = c;
      best_votes = v;
    }
  return best;
}

}  // namespace qek
