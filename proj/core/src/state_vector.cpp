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

#include "qek/state_vector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qek {

namespace {

int log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n))
    throw std::invalid_argument("StateVector: dimension must be a power of two");
  return std::countr_zero(n);
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes)
    : num_qubits_(log2_exact(amplitudes.size())), amps_(std::move(amplitudes)) {
  if (std::abs(norm() - 1.0) > 1e-10) throw std::invalid_argument("StateVector: amplitudes are not normalized");
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  if (!(s > 0.0)) throw std::invalid_argument("StateVector: zero vector");
  const double inv = 1.0 / std::sqrt(s);
  for (auto& a : amplitudes) a *= inv;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(int num_qubits, Bitstring index) {
  if (num_qubits < 0 || num_qubits > 62) throw std::invalid_argument("StateVector::basis: bad qubit count");
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::invalid_argument("StateVector::basis: index out of range");
  std::vector<Complex> a(dim);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

StateVector initial_state(int n, int max_qubits) {
  if (n < 1) throw std::invalid_argument("initial_state: need at least one qubit");
  if (n > max_qubits)
    throw BudgetError("initial_state: " + std::to_string(n) + " qubits exceed budget of " +
                      std::to_string(max_qubits));
  return StateVector::basis(n, 0);
}

std::vector<double> ising_energies(const Graph& graph) {
  const int n = graph.num_nodes();
  if (n > 30) throw BudgetError("ising_energies: graph too large for a dense energy table");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> e(dim, 0.0);
  const auto& edges = graph.edges();
  std::vector<double> w(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) w[k] = graph.edge_weight(k);
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) h[i] = graph.node_field(i);
  for (std::size_t s = 0; s < dim; ++s) {
    double v = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (((s >> edges[k].u) & 1U) && ((s >> edges[k].v) & 1U)) v += w[k];
    if (graph.has_node_fields())
      for (int i = 0; i < n; ++i)
        if ((s >> i) & 1U) v += h[i];
    e[s] = v;
  }
  return e;
}

void evolve_diagonal_inplace(StateVector& state, std::span<const double> energies, double t) {
  auto a = state.amplitudes();
  if (energies.size() != a.size()) throw std::invalid_argument("evolve_diagonal: size mismatch");
  if (t == 0.0) return;
  for (std::size_t s = 0; s < a.size(); ++s) a[s] *= std::polar(1.0, -energies[s] * t);
}

StateVector evolve_diagonal(StateVector state, const Graph& graph, double t) {
  if (state.num_qubits() != graph.num_nodes())
    throw std::invalid_argument("evolve_diagonal: state and graph sizes differ");
  const auto e = ising_energies(graph);
  evolve_diagonal_inplace(state, e, t);
  return state;
}

void apply_global_pulse_inplace(StateVector& state, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto a = state.amplitudes();
  const std::size_t dim = a.size();
  for (int q = 0; q < state.num_qubits(); ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
      for (std::size_t i = base; i < base + bit; ++i) {
        const Complex a0 = a[i];
        const Complex a1 = a[i | bit];
        a[i] = c * a0 - s * a1;
        a[i | bit] = s * a0 + c * a1;
      }
    }
  }
}

StateVector apply_global_pulse(StateVector state, double theta) {
  apply_global_pulse_inplace(state, theta);
  return state;
}

}  // namespace qek
