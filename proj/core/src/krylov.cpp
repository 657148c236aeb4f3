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

#include "qek/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qek {

namespace {

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const Complex> a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

void krylov_propagate(const CompiledHamiltonian& H, std::span<Complex> psi, double t,
                      const KrylovOptions& options, KrylovStats* stats) {
  if (psi.size() != H.dimension()) throw std::invalid_argument("krylov_propagate: size mismatch");
  if (options.subspace_dim < 2) throw std::invalid_argument("krylov_propagate: subspace_dim must be >= 2");
  KrylovStats local;
  if (t == 0.0) {
    if (stats) *stats = local;
    return;
  }

  const std::size_t dim = psi.size();
  const int m_max = static_cast<int>(std::min<std::size_t>(options.subspace_dim, dim));
  const double total = std::abs(t);
  const double direction = t > 0 ? 1.0 : -1.0;
  std::vector<std::vector<Complex>> basis(static_cast<std::size_t>(m_max) + 1, std::vector<Complex>(dim));
  std::vector<double> alpha(m_max), beta(m_max);

  double done = 0.0;
  int iterations = 0;
  while (done < total) {
    const double beta0 = norm2(psi);
    if (beta0 == 0.0) break;
    for (std::size_t i = 0; i < dim; ++i) basis[0][i] = psi[i] / beta0;

    // Lanczos with full reorthogonalization.
    int m = 0;
    bool invariant = false;
    const double breakdown = 1e-13 * std::max(1.0, H.norm_bound());
    for (int j = 0; j < m_max; ++j) {
      auto& w = basis[j + 1];
      H.apply(basis[j], w);
      ++local.matvecs;
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const Complex c = dot(basis[i], w);
          if (pass == 0 && i == j) alpha[j] = c.real();
          for (std::size_t k = 0; k < dim; ++k) w[k] -= c * basis[i][k];
        }
      }
      beta[j] = norm2(w);
      m = j + 1;
      if (beta[j] < breakdown) {
        invariant = true;
        break;
      }
      for (auto& v : w) v /= beta[j];
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < m) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const Eigen::MatrixXd& Q = eig.eigenvectors();

    auto small_exp = [&](double h) {
      Eigen::VectorXcd y(m);
      Eigen::VectorXcd coeff(m);
      for (int k = 0; k < m; ++k) coeff(k) = std::polar(Q(0, k), -direction * lam(k) * h);
      y = Q.cast<Complex>() * coeff;
      return y;
    };

    double h = total - done;
    Eigen::VectorXcd y;
    double err = 0.0;
    while (true) {
      if (++iterations > options.max_iterations)
        throw ConvergenceError("krylov_propagate: iteration cap reached");
      y = small_exp(h);
      err = invariant ? 0.0 : beta0 * beta[m - 1] * std::abs(y(m - 1));
      if (err <= options.tol * h / total) break;
      h *= 0.5;
      if (h < total * 1e-14) throw ConvergenceError("krylov_propagate: step size underflow");
    }

    for (std::size_t i = 0; i < dim; ++i) {
      Complex s = 0.0;
      for (int k = 0; k < m; ++k) s += y(k) * basis[k][i];
      psi[i] = beta0 * s;
    }
    done += h;
    if (total - done < total * 1e-15) done = total;
    local.error_estimate += err;
    ++local.steps;
  }
  if (stats) *stats = local;
}

StateVector evolve_sparse(StateVector state, const HamiltonianSpec& hamiltonian, double t,
                          const KrylovOptions& options) {
  if (hamiltonian.kind == HamiltonianKind::IsingGraph)
    throw std::invalid_argument("evolve_sparse: Ising kind is diagonal; use evolve_diagonal");
  if (state.num_qubits() != hamiltonian.num_qubits())
    throw std::invalid_argument("evolve_sparse: state and Hamiltonian sizes differ");
  const CompiledHamiltonian H(hamiltonian);
  krylov_propagate(H, state.amplitudes(), t, options);
  return state;
}

}  // namespace qek
