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

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qek/distribution.hpp"
#include "qek/measurement.hpp"

using namespace qek;
using doctest::Approx;

namespace {

const Graph kK3(3, {{0, 1}, {0, 2}, {1, 2}});

StateVector uniform_state(int n) {
  return StateVector::normalized(std::vector<Complex>(std::size_t{1} << n, Complex(1.0)));
}

}  // namespace

TEST_SUITE("measurement") {
  TEST_CASE("exact distributions of basis and uniform states") {
    const Graph g = erdos_renyi(5, 0.6, 3);
    CHECK(exact_distribution(initial_state(5), g, Observable::ising_energy(), BinningSpec::integer()) ==
          ProbabilityDistribution::point_mass(0));
    const auto full = exact_distribution(StateVector::basis(5, 31), g, Observable::ising_energy(), BinningSpec::integer());
    CHECK(full == ProbabilityDistribution::point_mass(static_cast<BinId>(g.num_edges())));
    const auto k2 = exact_distribution(uniform_state(2), Graph(2, {{0, 1}}), Observable::ising_energy(),
                                       BinningSpec::integer());
    CHECK(k2.prob(0) == Approx(0.75));
    CHECK(k2.prob(1) == Approx(0.25));
  }

  TEST_CASE("integer bins on the triangle") {
    const auto d = exact_distribution(uniform_state(3), kK3, Observable::ising_energy(), BinningSpec::integer());
    CHECK(d.bin_ids() == std::vector<BinId>{0, 1, 3});
    CHECK(d.prob(0) == Approx(4.0 / 8));
    CHECK(d.prob(1) == Approx(3.0 / 8));
    CHECK(d.prob(3) == Approx(1.0 / 8));
  }

  TEST_CASE("weighted energies need fixed-width bins") {
    Graph g(2, {{0, 1}});
    g.set_edge_weights({0.5});
    CHECK_THROWS_AS(exact_distribution(uniform_state(2), g, Observable::ising_energy(), BinningSpec::integer()),
                    std::invalid_argument);
    const auto b = default_binning(g, Observable::ising_energy());
    CHECK(b.mode == BinningSpec::Mode::FixedWidth);
    const auto d = exact_distribution(uniform_state(2), g, Observable::ising_energy(), b);
    CHECK(d.size() == 2);
    CHECK(default_binning(kK3, Observable::ising_energy()).mode == BinningSpec::Mode::IntegerBins);
  }

  TEST_CASE("expectations") {
    CHECK(expectation(StateVector::basis(4, 15), Graph(4, {}), Observable::total_occupation()) == Approx(4.0));
    const auto plus = apply_global_pulse(initial_state(6), kPi / 4);
    CHECK(expectation(plus, Graph(6, {}), Observable::total_occupation()) == Approx(3.0));
    CHECK(expectation(plus, Graph(6, {}), Observable::site_occupation(2)) == Approx(0.5));
    std::mt19937_64 rng(1);
    const Graph g = erdos_renyi(6, 0.5, 2);
    const auto psi = test::from_vec(test::random_state(rng, 6));
    const auto d = exact_distribution(psi, g, Observable::ising_energy(), BinningSpec::integer());
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) s += static_cast<double>(d.bin_ids()[i]) * d.probs()[i];
    CHECK(expectation(psi, g, Observable::ising_energy()) == Approx(s).epsilon(1e-12));
  }

  TEST_CASE("global phase does not change the distribution") {
    std::mt19937_64 rng(2);
    const Graph g = erdos_renyi(5, 0.5, 3);
    const auto v = test::random_state(rng, 5);
    const auto a = exact_distribution(test::from_vec(v), g, Observable::ising_energy(), BinningSpec::integer());
    const auto b = exact_distribution(test::from_vec(v * std::polar(1.0, 1.1)), g, Observable::ising_energy(),
                                      BinningSpec::integer());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.probs()[i] == Approx(b.probs()[i]).epsilon(1e-14));
  }

  TEST_CASE("sampling edge cases") {
    const auto basis = StateVector::basis(4, 0b0110);
    for (auto s : sample_bitstrings(basis, 100, {}, 3)) CHECK(s == 0b0110u);
    for (auto s : sample_bitstrings(initial_state(4), 100, {1.0, 0.0}, 3)) CHECK(s == 0b1111u);
    for (auto s : sample_bitstrings(StateVector::basis(4, 15), 100, {0.0, 1.0}, 3)) CHECK(s == 0u);
  }

  TEST_CASE("flip frequency follows the noise rate") {
    const std::size_t shots = 100000;
    const auto samples = sample_bitstrings(initial_state(5), shots, {0.05, 0.05}, 11);
    const double sigma = std::sqrt(0.05 * 0.95 / shots);
    for (int q = 0; q < 5; ++q) {
      std::size_t ones = 0;
      for (auto s : samples) ones += (s >> q) & 1U;
      CHECK(std::abs(static_cast<double>(ones) / shots - 0.05) < 3.0 * sigma);
    }
  }

  TEST_CASE("noiseless detection is the identity") {
    std::mt19937_64 rng(3);
    const auto psi = test::from_vec(test::random_state(rng, 6));
    const auto clean = sample_clean(psi, 5000, 4);
    CHECK(apply_detection_noise(clean, 6, {}, 99) == clean);
    CHECK(sample_bitstrings(psi, 5000, {}, 4) == clean);
  }

  TEST_CASE("histograms converge to the exact distribution") {
    std::mt19937_64 rng(4);
    const Graph g = erdos_renyi(8, 0.5, 5);
    const auto psi = test::from_vec(test::random_state(rng, 8));
    const auto exact = exact_distribution(psi, g, Observable::ising_energy(), BinningSpec::integer());
    double prev = 1.0;
    for (std::size_t m : {1000u, 10000u, 100000u}) {
      const auto h = histogram_from_samples(sample_clean(psi, m, 7), g, Observable::ising_energy(),
                                            BinningSpec::integer());
      const double tv = total_variation(h, exact);
      CHECK(tv <= 3.0 * std::sqrt(static_cast<double>(exact.size()) / m));
      if (m == 100000u) CHECK(tv <= 0.02);
      CHECK(tv < prev * 1.5);
      prev = tv;
    }
    const std::vector<Bitstring> same(50, 0b101);
    CHECK(histogram_from_samples(same, kK3, Observable::ising_energy(), BinningSpec::integer()) ==
          ProbabilityDistribution::point_mass(1));
  }

  TEST_CASE("Fourier distributions of simple traces") {
    std::vector<double> flat(64, 0.3), wave(64);
    for (int i = 0; i < 64; ++i) wave[i] = std::cos(2 * kPi * i / 63.0);
    CHECK(fourier_distribution(flat, 4).prob(0) == Approx(1.0));
    const auto w = fourier_distribution(wave, 4);
    CHECK(w.prob(1) > 0.9);
    std::vector<double> zero(64, 0.0);
    CHECK(fourier_distribution(zero, 4) == ProbabilityDistribution::point_mass(0));
    CHECK_THROWS_AS(fourier_magnitudes(flat, 17), std::invalid_argument);
  }

  TEST_CASE("single edge Ramsey trace spectrum") {
    const int n = 257;
    std::vector<double> trace(n);
    for (int i = 0; i < n; ++i) trace[i] = (1.0 - std::cos(2 * kPi * i / (n - 1))) / 2.0;
    const auto d = fourier_distribution(trace, 2);
    CHECK(std::abs(d.prob(0) - 2.0 / 3.0) < 1e-6);
    CHECK(std::abs(d.prob(1) - 1.0 / 3.0) < 1e-6);
  }

  TEST_CASE("bitstring text round trip") {
    const std::vector<Bitstring> s{0b001, 0b110, 0b111};
    std::stringstream io;
    write_bitstrings(io, s, 3);
    CHECK(io.str().substr(0, 4) == "100\n");
    int n = 0;
    CHECK(read_bitstrings(io, &n) == s);
    CHECK(n == 3);
  }

  TEST_CASE("noise model validation") {
    CHECK_THROWS_AS(NoiseModel({-0.1, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel({0.0, 1.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BinningSpec::fixed_width(0.0, 0.0), std::invalid_argument);
  }
}
