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

#include "qek/hardware.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qek/hamiltonian.hpp"

namespace qek {

void HardwareConfig::validate() const {
  if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("HardwareConfig: omega0 must be >= 0");
  if (!std::isfinite(detuning)) throw std::invalid_argument("HardwareConfig: detuning must be finite");
  if (!(c6 > 0.0)) throw std::invalid_argument("HardwareConfig: c6 must be > 0");
  if (!(min_distance_um > 0.0)) throw std::invalid_argument("HardwareConfig: min_distance_um must be > 0");
  if (!(min_duration_ns >= 0.0) || !(max_total_ns > min_duration_ns))
    throw std::invalid_argument("HardwareConfig: inconsistent duration limits");
}

std::vector<Position> rescaled_positions(const Graph& graph, const HardwareConfig& hw) {
  if (!graph.has_positions()) throw std::invalid_argument("rescaled_positions: graph has no positions");
  const auto& pos = graph.positions();
  const int n = graph.num_nodes();
  if (n < 2) return pos;
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dmin = std::min(dmin, std::hypot(pos[i][0] - pos[j][0], pos[i][1] - pos[j][1]));
  if (!(dmin > 0.0) || !std::isfinite(dmin))
    throw std::invalid_argument("rescaled_positions: coincident atoms");
  const double scale = hw.min_distance_um / dmin;
  std::vector<Position> out(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) out[i] = {pos[i][0] * scale, pos[i][1] * scale};
  return out;
}

Graph interaction_graph(const Graph& graph, const HardwareConfig& hw) {
  hw.validate();
  const auto pos = rescaled_positions(graph, hw);
  const int n = graph.num_nodes();
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  Graph g(n, edges);
  std::vector<double> weights;
  weights.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    const double r = std::hypot(pos[e.u][0] - pos[e.v][0], pos[e.u][1] - pos[e.v][1]);
    weights.push_back(hw.c6 / std::pow(r, 6));
  }
  if (!weights.empty()) g.set_edge_weights(std::move(weights));
  g.set_positions(pos);
  g.set_id(graph.id());
  g.set_class_label(graph.class_label());
  g.set_original_label(graph.original_label());
  return g;
}

void validate_durations(std::span<const double> durations_ns, const HardwareConfig& hw) {
  if (durations_ns.size() % 2 != 1)
    throw std::invalid_argument("validate_durations: expected an odd number of segments");
  double total = 0.0;
  for (std::size_t i = 0; i < durations_ns.size(); ++i) {
    const double d = durations_ns[i];
    if (!std::isfinite(d) || !(d > hw.min_duration_ns))
      throw std::invalid_argument("validate_durations: segment " + std::to_string(i) + " is " + std::to_string(d) +
                                  " ns, must exceed " + std::to_string(hw.min_duration_ns) + " ns");
    total += d;
  }
  if (!(total < hw.max_total_ns))
    throw std::invalid_argument("validate_durations: total " + std::to_string(total) + " ns must be below " +
                                std::to_string(hw.max_total_ns) + " ns");
}

StateVector run_hardware_sequence(const Graph& graph, const HardwareConfig& hw,
                                  std::span<const double> durations_ns, const SimulationOptions& options) {
  validate_durations(durations_ns, hw);
  const Graph atoms = interaction_graph(graph, hw);
  StateVector psi = initial_state(atoms.num_nodes(), options.max_qubits);

  const CompiledHamiltonian mixing({HamiltonianKind::HardwareDrive, atoms, hw.omega0, hw.detuning});
  const CompiledHamiltonian free_h({HamiltonianKind::HardwareDrive, atoms, 0.0, hw.detuning});
  for (std::size_t i = 0; i < durations_ns.size(); ++i) {
    const double t_us = durations_ns[i] * 1e-3;
    if (i % 2 == 0)
      krylov_propagate(mixing, psi.amplitudes(), t_us, options.krylov);
    else
      evolve_diagonal_inplace(psi, free_h.diagonal(), t_us);
  }
  return psi;
}

}  // namespace qek
