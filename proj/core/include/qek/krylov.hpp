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

#include "qek/hamiltonian.hpp"
#include "qek/state_vector.hpp"

namespace qek {

struct KrylovOptions {
  /// Maximum Krylov subspace dimension per step.
  int subspace_dim = 30;
  /// Error budget for the whole propagation; each sub-step of length h gets
  /// tol * h / |t|.
  double tol = 1e-10;
  /// Cap on accepted sub-steps plus step-halvings.
  int max_iterations = 100000;
};

struct KrylovStats {
  int steps = 0;
  int matvecs = 0;
  double error_estimate = 0.0;
};

/// psi <- exp(-i H t) psi by restarted Lanczos (full reorthogonalization)
/// with adaptive sub-stepping. Throws ConvergenceError when the iteration
/// cap is reached.
void krylov_propagate(const CompiledHamiltonian& hamiltonian, std::span<Complex> psi, double t,
                      const KrylovOptions& options = {}, KrylovStats* stats = nullptr);

/// exp(-i H t)|state> for the XY, global-Y and hardware-drive kinds.
StateVector evolve_sparse(StateVector state, const HamiltonianSpec& hamiltonian, double t,
                          const KrylovOptions& options = {});

}  // namespace qek
