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

enum class HamiltonianKind {
  /// sum J_ij n_i n_j + sum h_i n_i (diagonal).
  IsingGraph,
  /// sum J_ij (s+_i s-_j + h.c.) + sum h_i n_i; conserves total occupation.
  XYGraph,
  /// sum_i sigma^y_i; evolving for time theta is the global pulse.
  GlobalY,
  /// sum J_ij n_i n_j + sum h_i n_i - detuning sum n_i + (drive/2) sum sigma^x_i,
  /// with J_ij the position-derived couplings carried as edge weights.
  HardwareDrive,
};

const char* to_string(HamiltonianKind kind);

struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::IsingGraph;
  Graph graph;
  /// Rabi frequency Omega (rad/us), HardwareDrive only.
  double drive_amplitude = 0.0;
  /// Detuning delta (rad/us), HardwareDrive only.
  double detuning = 0.0;

  int num_qubits() const noexcept { return graph.num_nodes(); }
  void validate() const;
};

/// Matrix-free operator: a dense diagonal plus structured off-diagonal terms.
class CompiledHamiltonian {
 public:
  explicit CompiledHamiltonian(const HamiltonianSpec& spec);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return diag_.size(); }
  const std::vector<double>& diagonal() const noexcept { return diag_; }
  bool is_diagonal() const noexcept { return hops_.empty() && x_coeff_ == 0.0 && y_coeff_ == 0.0; }

  /// out = H in. `in` and `out` must not alias.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  /// Upper bound on the spectral radius (Gershgorin).
  double norm_bound() const noexcept { return norm_bound_; }

 private:
  struct Hop {
    Bitstring mask;
    double coeff;
  };

  int num_qubits_ = 0;
  std::vector<double> diag_;
  std::vector<Hop> hops_;
  double x_coeff_ = 0.0;
  double y_coeff_ = 0.0;
  double norm_bound_ = 0.0;
};

}  // namespace qek
