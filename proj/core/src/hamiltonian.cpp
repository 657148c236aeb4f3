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

#include "qek/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qek/state_vector.hpp"

namespace qek {

const char* to_string(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::IsingGraph: return "ising";
    case HamiltonianKind::XYGraph: return "xy";
    case HamiltonianKind::GlobalY: return "global_y";
    case HamiltonianKind::HardwareDrive: return "hardware";
  }
  return "unknown";
}

void HamiltonianSpec::validate() const {
  if (graph.num_nodes() < 1) throw std::invalid_argument("HamiltonianSpec: empty graph");
  if (kind == HamiltonianKind::HardwareDrive && graph.num_nodes() > 1 && !graph.has_edge_weights())
    throw std::invalid_argument("HamiltonianSpec: HardwareDrive needs position-derived couplings");
  if (!std::isfinite(drive_amplitude) || !std::isfinite(detuning))
    throw std::invalid_argument("HamiltonianSpec: non-finite drive parameters");
}

CompiledHamiltonian::CompiledHamiltonian(const HamiltonianSpec& spec) : num_qubits_(spec.num_qubits()) {
  spec.validate();
  const int n = num_qubits_;
  switch (spec.kind) {
    case HamiltonianKind::IsingGraph:
      diag_ = ising_energies(spec.graph);
      break;
    case HamiltonianKind::XYGraph: {
      diag_.assign(std::size_t{1} << n, 0.0);
      if (spec.graph.has_node_fields())
        for (std::size_t s = 0; s < diag_.size(); ++s)
          for (int i = 0; i < n; ++i)
            if ((s >> i) & 1U) diag_[s] += spec.graph.node_field(i);
      const auto& edges = spec.graph.edges();
      for (std::size_t k = 0; k < edges.size(); ++k)
        hops_.push_back({(Bitstring{1} << edges[k].u) | (Bitstring{1} << edges[k].v), spec.graph.edge_weight(k)});
      break;
    }
    case HamiltonianKind::GlobalY:
      diag_.assign(std::size_t{1} << n, 0.0);
      y_coeff_ = 1.0;
      break;
    case HamiltonianKind::HardwareDrive:
      diag_ = ising_energies(spec.graph);
      if (spec.detuning != 0.0)
        for (std::size_t s = 0; s < diag_.size(); ++s)
          diag_[s] -= spec.detuning * std::popcount(static_cast<Bitstring>(s));
      x_coeff_ = spec.drive_amplitude / 2.0;
      break;
  }

  double max_diag = 0.0;
  for (double d : diag_) max_diag = std::max(max_diag, std::abs(d));
  double offdiag = n * (std::abs(x_coeff_) + std::abs(y_coeff_));
  for (const auto& h : hops_) offdiag += std::abs(h.coeff);
  norm_bound_ = max_diag + offdiag;
}

void CompiledHamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t dim = diag_.size();
  if (in.size() != dim || out.size() != dim) throw std::invalid_argument("CompiledHamiltonian::apply: size mismatch");
  for (std::size_t s = 0; s < dim; ++s) out[s] = diag_[s] * in[s];
  for (const auto& h : hops_) {
    for (std::size_t s = 0; s < dim; ++s) {
      const Bitstring m = s & h.mask;
      if (m != 0 && m != h.mask) out[s ^ h.mask] += h.coeff * in[s];
    }
  }
  if (x_coeff_ != 0.0) {
    for (int q = 0; q < num_qubits_; ++q) {
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t s = 0; s < dim; ++s) out[s ^ bit] += x_coeff_ * in[s];
    }
  }
  if (y_coeff_ != 0.0) {
    const Complex up(0.0, y_coeff_);
    for (int q = 0; q < num_qubits_; ++q) {
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t s = 0; s < dim; ++s) out[s ^ bit] += ((s & bit) ? -up : up) * in[s];
    }
  }
}

}  // namespace qek
