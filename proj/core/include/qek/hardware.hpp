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

#include "qek/evolution.hpp"
#include "qek/graph.hpp"

namespace qek {

/// Neutral-atom device model. Units: rad/us for rates, um for distances,
/// ns for pulse durations.
struct HardwareConfig {
  double omega0 = 15.0;
  double detuning = 0.0;
  double c6 = 5420503.0;
  /// Resonant dipole coefficient; kept for configuration round-trips, unused by the Ising drive.
  double c3 = 0.0;
  double min_distance_um = 5.0;
  double min_duration_ns = 4.0;
  double max_total_ns = 500.0;

  void validate() const;
};

/// Positions scaled so that the closest pair sits at hw.min_distance_um.
std::vector<Position> rescaled_positions(const Graph& graph, const HardwareConfig& hw);

/// Complete graph over the atoms with weights C6 / R^6 on every pair.
Graph interaction_graph(const Graph& graph, const HardwareConfig& hw);

/// Durations {tau_0, t_0, tau_1, ..., tau_p}: odd count, each > min, sum < max.
void validate_durations(std::span<const double> durations_ns, const HardwareConfig& hw);

/// Alternating mixing (interaction + drive) and free (interaction only)
/// segments from |0...0>, starting and ending with mixing.
StateVector run_hardware_sequence(const Graph& graph, const HardwareConfig& hw,
                                  std::span<const double> durations_ns,
                                  const SimulationOptions& options = {});

}  // namespace qek
