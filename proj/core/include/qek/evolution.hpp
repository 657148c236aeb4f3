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

#include <vector>

#include "qek/graph.hpp"
#include "qek/krylov.hpp"
#include "qek/state_vector.hpp"

namespace qek {

/// Layered sequence {theta_0, t_1, theta_1, ..., t_p, theta_p}.
struct PulseSequence {
  std::vector<double> thetas;
  std::vector<double> times;

  int depth() const noexcept { return static_cast<int>(times.size()); }
  void validate() const;

  /// {theta, t, -theta}.
  static PulseSequence ramsey(double theta, double t);
};

enum class GraphHamiltonian { Ising, XY };

const char* to_string(GraphHamiltonian kind);

struct SimulationOptions {
  int max_qubits = kDefaultMaxQubits;
  KrylovOptions krylov;
};

/// Pulse(theta_p) FreeEvolve(t_p) ... Pulse(theta_1) FreeEvolve(t_1) Pulse(theta_0) |0...0>.
StateVector run_sequence(const Graph& graph, const PulseSequence& sequence, GraphHamiltonian kind,
                         const SimulationOptions& options = {});

}  // namespace qek
