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

#include "qek/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "qek/hamiltonian.hpp"

namespace qek {

void PulseSequence::validate() const {
  if (thetas.size() != times.size() + 1)
    throw std::invalid_argument("PulseSequence: need exactly one more pulse than free-evolution times");
  for (double th : thetas)
    if (!std::isfinite(th)) throw std::invalid_argument("PulseSequence: non-finite pulse parameter");
  for (double t : times)
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("PulseSequence: free times must be finite and >= 0");
}

PulseSequence PulseSequence::ramsey(double theta, double t) { return {{theta, -theta}, {t}}; }

const char* to_string(GraphHamiltonian kind) { return kind == GraphHamiltonian::Ising ? "ising" : "xy"; }

StateVector run_sequence(const Graph& graph, const PulseSequence& sequence, GraphHamiltonian kind,
                         const SimulationOptions& options) {
  sequence.validate();
  StateVector psi = initial_state(graph.num_nodes(), options.max_qubits);
  apply_global_pulse_inplace(psi, sequence.thetas[0]);

  if (kind == GraphHamiltonian::Ising) {
    const std::vector<double> energies = ising_energies(graph);
    for (int i = 0; i < sequence.depth(); ++i) {
      evolve_diagonal_inplace(psi, energies, sequence.times[i]);
      apply_global_pulse_inplace(psi, sequence.thetas[i + 1]);
    }
  } else {
    const CompiledHamiltonian H({HamiltonianKind::XYGraph, graph, 0.0, 0.0});
    for (int i = 0; i < sequence.depth(); ++i) {
      krylov_propagate(H, psi.amplitudes(), sequence.times[i], options.krylov);
      apply_global_pulse_inplace(psi, sequence.thetas[i + 1]);
    }
  }
  return psi;
}

}  // namespace qek
