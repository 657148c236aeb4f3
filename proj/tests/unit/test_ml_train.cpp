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

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qek/cross_validation.hpp"
#include "qek/krr.hpp"
#include "qek/svm.hpp"

using namespace qek;
using doctest::Approx;

namespace {

std::vector<double> row_of(const Eigen::MatrixXd& K, Eigen::Index i) {
  std::vector<double> r(K.cols());
  for (Eigen::Index j = 0; j < K.cols(); ++j) r[j] = K(i, j);
  return r;
}

// Block kernel: 1 inside a class, `off` across classes.
Eigen::MatrixXd block_kernel(const std::vector<int>& labels, double off) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) K(i, j) = labels[i] == labels[j] ? 1.0 : off;
  return K;
}

struct Instance {
  Eigen::MatrixXd K;
  std::vector<int> y;
};

Instance random_instance(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd X(n, 3);
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i % 2 ? 1 : -1;
    for (int d = 0; d < 3; ++d) X(i, d) = z(rng) + (d == 0 ? 0.7 * y[i] : 0.0);
  }
  Eigen::MatrixXd K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) K(i, j) = std::exp(-0.5 * (X.row(i) - X.row(j)).squaredNorm());
  return {K, y};
}

}  // namespace

TEST_SUITE("ml_train") {
  TEST_CASE("separable pair") {
    const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(2, 2);
    const std::vector<int> y{1, -1};
    const auto m = svm_train(K, y, 10.0);
    CHECK(m.support_indices.size() == 2);
    CHECK(svm_predict(m, row_of(K, 0)) == 1);
    CHECK(svm_predict(m, row_of(K, 1)) == -1);
    CHECK(m.converged);
  }

  TEST_CASE("zero kernel row follows the bias sign") {
    SVMModel m;
    m.alphas = {0.5, 0.5};
    m.labels = {1, -1};
    m.support_indices = {0, 1};
    m.bias = 0.3;
    CHECK(svm_predict(m, std::vector<double>{0.0, 0.0}) == 1);
    m.bias = -0.3;
    CHECK(svm_predict(m, std::vector<double>{0.0, 0.0}) == -1);
    m.bias = 0.0;
    CHECK(svm_predict(m, std::vector<double>{0.0, 0.0}) == 1);
  }

  TEST_CASE("SMO matches the projected-gradient reference") {
    std::mt19937_64 rng(7);
    for (int n : {5, 12, 20}) {
      const auto [K, y] = random_instance(rng, n);
      for (double C : {0.1, 1.0, 10.0}) {
        SVMOptions opt;
        opt.tol = 1e-8;
        const auto m = svm_train(K, y, C, opt);
        const auto ref = test::reference_svm_dual(K, y, C);
        double eq = 0.0;
        for (int i = 0; i < n; ++i) {
          CHECK(m.alphas[i] >= 0.0);
          CHECK(m.alphas[i] <= C);
          eq += m.alphas[i] * y[i];
        }
        CHECK(std::abs(eq) <= 1e-6);
        CHECK(svm_dual_objective(K, y, m.alphas) <= svm_dual_objective(K, y, ref) + 1e-6);
      }
    }
  }

  TEST_CASE("predictions agree with the reference solution") {
    std::mt19937_64 rng(8);
    const auto [K, y] = random_instance(rng, 40);
    const std::vector<int> train_y(y.begin(), y.begin() + 20);
    const Eigen::MatrixXd Ktr = K.topLeftCorner(20, 20);
    SVMOptions opt;
    opt.tol = 1e-8;
    const auto m = svm_train(Ktr, train_y, 1.0, opt);
    const auto ref = test::reference_svm_dual(Ktr, train_y, 1.0);
    // Reference bias from the free multipliers.
    double b = 0.0;
    int free = 0;
    for (int i = 0; i < 20; ++i)
      if (ref[i] > 1e-6 && ref[i] < 1.0 - 1e-6) {
        double f = 0.0;
        for (int j = 0; j < 20; ++j) f += ref[j] * train_y[j] * Ktr(i, j);
        b += train_y[i] - f;
        ++free;
      }
    REQUIRE(free > 0);
    b /= free;
    int agree = 0;
    for (int t = 20; t < 40; ++t) {
      std::vector<double> r(20);
      double f = b;
      for (int j = 0; j < 20; ++j) {
        r[j] = K(t, j);
        f += ref[j] * train_y[j] * r[j];
      }
      agree += svm_predict(m, r) == (f >= 0 ? 1 : -1);
    }
    CHECK(agree == 20);
  }

  TEST_CASE("invalid SVM input") {
    const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(svm_train(K, std::vector<int>{1, 1, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(svm_train(K, std::vector<int>{1, 2, -1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(svm_train(K, std::vector<int>{1, -1, 1}, 0.0), std::invalid_argument);
  }

  TEST_CASE("one-vs-one model counts and block kernels") {
    const std::vector<int> labels{0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3};
    const auto K = block_kernel(labels, 0.1);
    const auto m3 = one_vs_one_train(K.topLeftCorner(9, 9), std::span(labels.data(), 9), 1.0);
    CHECK(m3.num_models() == 3);
    for (int i = 0; i < 9; ++i) {
      std::vector<double> r(9);
      for (int j = 0; j < 9; ++j) r[j] = K(i, j);
      CHECK(one_vs_one_predict(m3, r) == labels[i]);
    }
    const auto m4 = one_vs_one_train(K, labels, 1.0);
    CHECK(m4.num_models() == 6);
  }

  TEST_CASE("two-class one-vs-one equals the binary model") {
    std::mt19937_64 rng(9);
    const auto [K, y] = random_instance(rng, 16);
    std::vector<int> cls(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) cls[i] = y[i] > 0 ? 0 : 1;
    const auto ovo = one_vs_one_train(K, cls, 1.0);
    const auto bin = svm_train(K, y, 1.0);
    REQUIRE(ovo.num_models() == 1);
    CHECK(ovo.models[0].alphas == bin.alphas);
    CHECK(ovo.models[0].bias == bin.bias);
    for (int i = 0; i < 16; ++i) CHECK(one_vs_one_predict(ovo, row_of(K, i)) == (svm_predict(bin, row_of(K, i)) > 0 ? 0 : 1));
  }

  TEST_CASE("kernel ridge regression") {
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    const std::vector<double> y{1, -2, 3, 0.5};
    const auto m = krr_train(I, y, 0.25);
    for (int i = 0; i < 4; ++i) CHECK(m.weights(i) == Approx(y[i] / 1.25));
    std::mt19937_64 rng(10);
    const Eigen::MatrixXd K = test::random_psd(rng, 10, 10) + Eigen::MatrixXd::Identity(10, 10);
    std::vector<double> t(10);
    std::normal_distribution<double> z;
    for (auto& v : t) v = z(rng);
    const auto r = krr_train(K, t, 0.3);
    const Eigen::VectorXd tv = Eigen::Map<const Eigen::VectorXd>(t.data(), 10);
    const Eigen::VectorXd oracle = (K + 0.3 * Eigen::MatrixXd::Identity(10, 10)).inverse() * tv;
    CHECK((r.weights - oracle).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(((K + 0.3 * Eigen::MatrixXd::Identity(10, 10)) * r.weights - tv).cwiseAbs().maxCoeff() <= 1e-8);
    const auto interp = krr_train(K, t, 1e-10);
    for (int i = 0; i < 10; ++i) CHECK(std::abs(krr_predict(interp, row_of(K, i)) - t[i]) < 1e-6);
    const Eigen::MatrixXd singular = test::random_psd(rng, 6, 2);
    const std::vector<double> ys{1, 2, 3, 4, 5, 6};
    CHECK_NOTHROW(krr_train(singular, ys, 1e-3));
  }

  TEST_CASE("cross-validation on a perfect block kernel") {
    std::vector<int> labels;
    for (int i = 0; i < 30; ++i) labels.push_back(i % 3);
    CVOptions opt;
    opt.folds = 5;
    opt.repeats = 3;
    const auto r = cross_validate(block_kernel(labels, 0.0), labels, opt);
    CHECK(r.mean_accuracy == 1.0);
    CHECK(r.fold_accuracies.size() == 15);
    CHECK(r.chosen_c.size() == 3);
    CHECK(r.repeat_seeds.size() == 3);
  }

  TEST_CASE("cross-validation is deterministic and thread-count independent") {
    std::mt19937_64 rng(11);
    const auto [K, y] = random_instance(rng, 40);
    CVOptions opt;
    opt.repeats = 2;
    opt.seed = 5;
    const auto a = cross_validate(K, y, opt);
    const auto b = cross_validate(K, y, opt);
    opt.workers = 3;
    const auto c = cross_validate(K, y, opt);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_json(a) == to_json(c));
  }

  TEST_CASE("uninformative kernel scores near the majority rate") {
    std::mt19937_64 rng(12);
    std::bernoulli_distribution coin(0.7);
    std::vector<int> labels(100);
    for (auto& l : labels) l = coin(rng) ? 1 : 0;
    CVOptions opt;
    opt.repeats = 3;
    const auto r = cross_validate(Eigen::MatrixXd::Identity(100, 100), labels, opt);
    const double majority = std::max(std::count(labels.begin(), labels.end(), 1), std::count(labels.begin(), labels.end(), 0)) / 100.0;
    CHECK(std::abs(r.mean_accuracy - majority) < 0.15);
  }

  TEST_CASE("single-class training folds are flagged") {
    const std::vector<int> labels{0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
    CVOptions opt;
    opt.folds = 10;
    opt.repeats = 1;
    const auto r = cross_validate(Eigen::MatrixXd::Identity(10, 10), labels, opt);
    CHECK(r.flagged_folds.size() == 1);
  }

  TEST_CASE("grids") {
    const auto g = log_grid(1e-3, 1e3, 7);
    REQUIRE(g.size() == 7);
    CHECK(g[3] == Approx(1.0));
    CHECK(default_c_grid() == g);
  }
}
