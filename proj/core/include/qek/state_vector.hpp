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

#pragma once

#include <span>
#include <vector>

#include "qek/common.hpp"
#include "qek/graph.hpp"

namespace qek {

inline constexpr int kDefaultMaxQubits = 16;

/// Pure state over 2^n computational basis states; index bit i is qubit i.
class StateVector {
 public:
  StateVector() = default;

  /// Throws std::invalid_argument unless the size is a power of two and the
  /// L2 norm is 1 within 1e-10.
  explicit StateVector(std::vector<Complex> amplitudes);

  /// Rescales to unit norm first.
  static StateVector normalized(std::vector<Complex> amplitudes);
  static StateVector basis(int num_qubits, Bitstring index);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// |0...0> on n qubits; BudgetError when n exceeds max_qubits.
StateVector initial_state(int n, int max_qubits = kDefaultMaxQubits);

/// Basis-state energies E_s = sum_{(i,j)} J_ij n_i n_j + sum_i h_i n_i with
/// occupations n_i in {0, 1} (bit i of s). Unweighted graphs give integers.
std::vector<double> ising_energies(const Graph& graph);

/// Multiplies amplitude s by exp(-i E_s t).
void evolve_diagonal_inplace(StateVector& state, std::span<const double> energies, double t);
StateVector evolve_diagonal(StateVector state, const Graph& graph, double t);

/// exp(-i theta sum_i sigma^y_i): every qubit gets [[cos, -sin], [sin, cos]],
/// so theta = pi/2 maps |0...0> to |1...1>.
void apply_global_pulse_inplace(StateVector& state, double theta);
StateVector apply_global_pulse(StateVector state, double theta);

}  // namespace qek
