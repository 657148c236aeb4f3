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

#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qek/analytic_ising.hpp"
#include "qek/bayes_opt.hpp"
#include "qek/classical_kernels.hpp"
#include "qek/cross_validation.hpp"
#include "qek/dataset.hpp"
#include "qek/evolution.hpp"
#include "qek/hamiltonian.hpp"
#include "qek/krr.hpp"
#include "qek/krylov.hpp"
#include "qek/measurement.hpp"
#include "qek/multikernel.hpp"
#include "qek/qe_kernel.hpp"
#include "qek/svm.hpp"

using namespace qek;

namespace {

constexpr int kCases = 40;

ProbabilityDistribution random_distribution(std::mt19937_64& rng, int max_bins = 8) {
  std::uniform_int_distribution<int> nbins(1, max_bins), shift(-3, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution sparse(0.3);
  const int n = nbins(rng);
  const BinId start = shift(rng);
  std::vector<BinId> bins;
  std::vector<double> w;
  for (int i = 0; i < n; ++i) {
    bins.push_back(start + i);
    w.push_back(sparse(rng) ? 0.0 : u(rng));
  }
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[0] = 1.0;
  return ProbabilityDistribution::from_weights(bins, w);
}

Dataset random_dataset(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, 12), label(0, 3);
  Dataset ds;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Graph g = test::random_graph(rng, 1, 20);
    const int l = label(rng) * 2 - 1;
    g.set_id(i + 1);
    g.set_class_label(l);
    g.set_original_label(l);
    ds.graphs.push_back(g);
    ++ds.class_counts[l];
    ds.label_mapping[l] = l;
  }
  return ds;
}

Bitstring complement(Bitstring s, int n) { return ~s & ((Bitstring{1} << n) - 1); }

}  // namespace

TEST_CASE("degree histograms count nodes and edge ends") {
  std::mt19937_64 rng(1);
  for (int c = 0; c < kCases; ++c) {
    const Graph g = test::random_graph(rng, 1, 30);
    const auto h = degree_histogram(g);
    long nodes = 0, ends = 0;
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
      nodes += h.counts[k];
      ends += static_cast<long>(k) * h.counts[k];
    }
    CHECK(nodes == g.num_nodes());
    CHECK(ends == 2 * static_cast<long>(g.num_edges()));
  }
}

TEST_CASE("preprocess is idempotent") {
  std::mt19937_64 rng(2);
  for (int c = 0; c < kCases; ++c) {
    const Dataset ds = random_dataset(rng);
    std::optional<std::set<int>> keep;
    if (c % 2) keep = std::set<int>{ds.graphs[0].original_label().value()};
    Dataset once;
    try {
      once = preprocess(ds, 12, keep);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const Dataset twice = preprocess(once, 12, keep);
    CHECK(twice.graphs == once.graphs);
    CHECK(twice.labels() == once.labels());
    CHECK(twice.label_mapping == once.label_mapping);
  }
}

TEST_CASE("occupation graphs match the closed-form counts") {
  std::mt19937_64 rng(3);
  for (int c = 0; c < kCases; ++c) {
    const Graph g = test::random_graph(rng, 2, 10);
    for (int n = 1; n < g.num_nodes(); ++n) {
      const auto og = occupation_graph(g, n);
      const auto cc = occupation_counts(g, n);
      CHECK(static_cast<std::uint64_t>(og.graph.num_nodes()) == cc.vertices);
      CHECK(static_cast<std::uint64_t>(og.graph.num_edges()) == cc.edges);
    }
  }
}

TEST_CASE("particle-hole complement maps G_n onto G_{N-n}") {
  std::mt19937_64 rng(4);
  for (int c = 0; c < kCases; ++c) {
    const Graph g = test::random_graph(rng, 2, 8);
    const int N = g.num_nodes();
    for (int n = 1; n < N; ++n) {
      const auto a = occupation_graph(g, n);
      const auto b = occupation_graph(g, N - n);
      auto index_in_b = [&](Bitstring s) {
        return static_cast<int>(std::lower_bound(b.configurations.begin(), b.configurations.end(), s) -
                                b.configurations.begin());
      };
      std::set<std::pair<int, int>> mapped;
      for (const auto& e : a.graph.edges()) {
        int u = index_in_b(complement(a.configurations[e.u], N));
        int v = index_in_b(complement(a.configurations[e.v], N));
        mapped.insert({std::min(u, v), std::max(u, v)});
      }
      std::set<std::pair<int, int>> target;
      for (const auto& e : b.graph.edges()) target.insert({e.u, e.v});
      CHECK(mapped == target);
    }
  }
}

TEST_CASE("Fourier features are distributions") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  for (int c = 0; c < kCases; ++c) {
    const Graph g = test::random_graph(rng, 1, 40);
    const auto p = fourier_features(g, RamseyConfig::for_graph(g, angle(rng)));
    double s = 0.0;
    for (double x : p.probs()) {
      CHECK(x >= 0.0);
      s += x;
    }
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("norm is preserved over long random sequences") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int c = 0; c < 10; ++c) {
    const Graph g = test::random_weighted_graph(rng, 2, 8);
    StateVector psi = test::from_vec(test::random_state(rng, g.num_nodes()));
    const auto energies = ising_energies(g);
    const CompiledHamiltonian xy({HamiltonianKind::XYGraph, g, 0, 0});
    for (int op = 0; op < 20; ++op) {
      switch (op % 3) {
        case 0: apply_global_pulse_inplace(psi, u(rng)); break;
        case 1: evolve_diagonal_inplace(psi, energies, u(rng)); break;
        default: krylov_propagate(xy, psi.amplitudes(), std::abs(u(rng))); break;
      }
    }
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("diagonal evolution composes additively") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int c = 0; c < kCases; ++c) {
    const Graph g = test::random_weighted_graph(rng, 1, 8);
    const auto psi = test::from_vec(test::random_state(rng, g.num_nodes()));
    const double t1 = u(rng), t2 = u(rng);
    const auto a = evolve_diagonal(evolve_diagonal(psi, g, t1), g, t2);
    const auto b = evolve_diagonal(psi, g, t1 + t2);
    CHECK(test::max_abs_diff(test::to_vec(a), test::to_vec(b)) <= 1e-12);
  }
}

TEST_CASE("XY evolution stays in its occupation sector") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int c = 0; c < 15; ++c) {
    const Graph g = test::random_graph(rng, 2, 9);
    const int N = g.num_nodes();
    std::uniform_int_distribution<Bitstring> pick(0, (Bitstring{1} << N) - 1);
    const Bitstring s0 = pick(rng);
    const int n = std::popcount(s0);
    const auto out = evolve_sparse(StateVector::basis(N, s0), {HamiltonianKind::XYGraph, g, 0, 0}, time(rng));
    double leak = 0.0;
    for (std::size_t s = 0; s < out.dimension(); ++s)
      if (std::popcount(s) != n) leak += std::norm(out[s]);
    CHECK(leak <= 1e-10);
  }
}

TEST_CASE("noiseless detection never changes samples") {
  std::mt19937_64 rng(9);
  for (int c = 0; c < kCases; ++c) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto psi = test::from_vec(test::random_state(rng, n));
    const auto s = sample_clean(psi, 500, rng());
    CHECK(apply_detection_noise(s, n, {}, rng()) == s);
  }
}

TEST_CASE("JS divergence is a bounded symmetric divergence") {
  std::mt19937_64 rng(10);
  for (int c = 0; c < 200; ++c) {
    const auto p = random_distribution(rng), q = random_distribution(rng);
    const double a = js_divergence(p, q), b = js_divergence(q, p);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= kLn2);
    CHECK(js_divergence(p, p) <= 1e-12);
    if (a <= 1e-12) CHECK(total_variation(p, q) < 1e-5);
  }
}

TEST_CASE("kernel matrices are symmetric with unit diagonal") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mu(0.0, 4.0);
  for (int c = 0; c < 20; ++c) {
    std::vector<ProbabilityDistribution> d;
    for (int i = 0; i < 12; ++i) d.push_back(random_distribution(rng));
    const double m = mu(rng);
    const auto k = kernel_matrix(d, m, {}, 1 + c % 3);
    CHECK((k.values - k.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((k.values.diagonal().array() == 1.0).all());
    CHECK(k.values.minCoeff() >= std::pow(2.0, -m) - 1e-15);
    CHECK(k.values.maxCoeff() <= 1.0);
  }
}

TEST_CASE("kernel combinations are linear in the weights") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int c = 0; c < kCases; ++c) {
    std::vector<KernelMatrix> ks;
    for (int r = 0; r < 3; ++r) ks.push_back({{0, 1, 2, 3, 4}, test::random_psd(rng, 5, 3)});
    std::vector<double> p(3), q(3), mix(3);
    const double a = u(rng), b = u(rng);
    for (int r = 0; r < 3; ++r) {
      p[r] = u(rng);
      q[r] = u(rng);
      mix[r] = a * p[r] + b * q[r];
    }
    const Eigen::MatrixXd lhs = combine_kernels(ks, mix).values;
    const Eigen::MatrixXd rhs = a * combine_kernels(ks, p).values + b * combine_kernels(ks, q).values;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("random walk kernel is symmetric in its arguments") {
  std::mt19937_64 rng(13);
  for (int c = 0; c < kCases; ++c) {
    const Graph a = test::random_graph(rng, 1, 9), b = test::random_graph(rng, 1, 9);
    const double rho = spectral_radius(a) * spectral_radius(b);
    const double lambda = 0.5 / std::max(rho, 1.0);
    const double x = random_walk_kernel(a, b, lambda), y = random_walk_kernel(b, a, lambda);
    CHECK(std::abs(x - y) <= 1e-10 * x);
  }
}

TEST_CASE("graphlet features ignore node labels") {
  std::mt19937_64 rng(14);
  for (int c = 0; c < kCases; ++c) {
    const int k = 3 + c % 3;
    const Graph g = test::random_graph(rng, k, 9);
    const Graph h = test::relabel(g, test::random_permutation(rng, g.num_nodes()));
    const auto fg = graphlet_features(g, k, 1u << 20, 0), fh = graphlet_features(h, k, 1u << 20, 0);
    REQUIRE(fg.counts.size() == fh.counts.size());
    for (const auto& [p, v] : fg.counts) CHECK(std::abs(fh.counts.at(p) - v) < 1e-12);
  }
}

TEST_CASE("SVM solutions are feasible") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> logc(-2.0, 2.0);
  for (int c = 0; c < kCases; ++c) {
    const int n = 4 + static_cast<int>(rng() % 30);
    const Eigen::MatrixXd K = test::random_psd(rng, n, 1 + n / 2) + 1e-6 * Eigen::MatrixXd::Identity(n, n);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) y[i] = i % 2 ? 1 : -1;
    std::shuffle(y.begin(), y.end(), rng);
    const double C = std::pow(10.0, logc(rng));
    const auto m = svm_train(K, y, C);
    double eq = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(m.alphas[i] >= 0.0);
      CHECK(m.alphas[i] <= C);
      eq += m.alphas[i] * y[i];
    }
    CHECK(std::abs(eq) <= 1e-6 * std::max(1.0, C));
  }
}

TEST_CASE("KRR residual stays small") {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> loglam(-3.0, 1.0);
  for (int c = 0; c < kCases; ++c) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const Eigen::MatrixXd K = test::random_psd(rng, n, n);
    std::vector<double> y(n);
    for (auto& v : y) v = z(rng);
    const double lambda = std::pow(10.0, loglam(rng));
    const auto m = krr_train(K, y, lambda);
    const Eigen::VectorXd r =
        (K + lambda * Eigen::MatrixXd::Identity(n, n)) * m.weights - Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("swapping two class names leaves CV accuracy unchanged") {
  std::mt19937_64 rng(17);
  for (int c = 0; c < 8; ++c) {
    const int n = 30;
    const Eigen::MatrixXd K = test::random_psd(rng, n, 4) + 0.1 * Eigen::MatrixXd::Identity(n, n);
    std::vector<int> y(n), swapped(n);
    for (int i = 0; i < n; ++i) {
      y[i] = static_cast<int>(rng() % 2);
      swapped[i] = 1 - y[i];
    }
    if (std::count(y.begin(), y.end(), 1) < 2 || std::count(y.begin(), y.end(), 0) < 2) continue;
    CVOptions opt;
    opt.folds = 5;
    opt.repeats = 2;
    opt.seed = c;
    CHECK(std::abs(cross_validate(K, y, opt).mean_accuracy - cross_validate(K, swapped, opt).mean_accuracy) < 1e-12);
  }
}

TEST_CASE("GP posterior variance is never meaningfully negative") {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 10; ++c) {
    const int n = 3 + static_cast<int>(rng() % 15);
    const int d = 1 + static_cast<int>(rng() % 3);
    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) X(i, j) = u(rng);
      y(i) = std::sin(5 * X(i, 0)) + u(rng);
    }
    GaussianProcess gp;
    CovarianceSpec cov;
    if (c % 2) cov.family = CovarianceFamily::RBF;
    gp.fit(X, y, cov);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> x(d);
      for (auto& v : x) v = u(rng);
      const auto p = gp.posterior(x);
      CHECK(p.raw_variance >= -1e-8);
      CHECK(p.stddev >= 0.0);
    }
  }
}

TEST_CASE("BO history length equals the budget") {
  std::mt19937_64 rng(19);
  for (int c = 0; c < 5; ++c) {
    BOConfig cfg;
    const int d = 1 + c % 3;
    cfg.bounds.assign(d, {-1.0, 2.0});
    cfg.budget = 8 + c;
    cfg.n_init = 3 + c % 2;
    cfg.candidates = 300;
    cfg.workers = 1 + c % 2;
    cfg.seed = rng();
    const auto r = bayes_optimize([](const std::vector<double>& x) { return std::cos(3 * x[0]) + x[0] * x[0]; }, cfg);
    CHECK(static_cast<int>(r.history.size()) == cfg.budget);
    double best = 1e300;
    for (const auto& e : r.history) best = std::min(best, e.value);
    CHECK(r.best_value == best);
  }
}

TEST_CASE("multikernel score is at least the best single kernel") {
  std::mt19937_64 rng(20);
  for (int c = 0; c < 3; ++c) {
    const int n = 24;
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) y[i] = i % 2;
    std::vector<KernelMatrix> ks;
    std::vector<long> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int r = 0; r < 2; ++r) ks.push_back({ids, test::random_psd(rng, n, 3) + Eigen::MatrixXd::Identity(n, n)});
    MultikernelOptions opt;
    opt.cv.folds = 4;
    opt.cv.repeats = 1;
    opt.budget = 8;
    opt.n_init = 4;
    opt.candidates = 200;
    opt.seed = c;
    const auto r = optimize_multikernel(ks, y, opt);
    CHECK(r.score >= *std::max_element(r.single_scores.begin(), r.single_scores.end()) - 1e-12);
  }
}
