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

#include "qek/qe_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qek/common.hpp"
#include "qek/parallel.hpp"

namespace qek {

double shannon_entropy(const ProbabilityDistribution& p) {
  double h = 0.0;
  for (double x : p.probs())
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double js_divergence(const ProbabilityDistribution& p, const ProbabilityDistribution& q) {
  const AlignedPair a = align(p, q);
  // Sum of the two KL terms against the midpoint; equal to the entropy form
  // but exact for disjoint supports.
  double js = 0.0;
  for (std::size_t k = 0; k < a.bins.size(); ++k) {
    const double x = a.p[k], y = a.q[k];
    const double m = x + y;
    const double tx = x > 0.0 ? x * std::log(2.0 * x / m) : 0.0;
    const double ty = y > 0.0 ? y * std::log(2.0 * y / m) : 0.0;
    js += tx + ty;
  }
  return std::clamp(0.5 * js, 0.0, kLn2);
}

double qe_kernel(const ProbabilityDistribution& p, const ProbabilityDistribution& q, double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("qe_kernel: mu must be >= 0");
  return std::exp(-mu * js_divergence(p, q));
}

void KernelMatrix::validate() const {
  if (values.rows() != values.cols()) throw std::invalid_argument("KernelMatrix: not square");
  if (graph_ids.size() != static_cast<std::size_t>(values.rows()))
    throw std::invalid_argument("KernelMatrix: id count does not match matrix size");
}

KernelMatrix kernel_matrix(std::span<const ProbabilityDistribution> dists, double mu, std::vector<long> ids,
                           int workers) {
  if (dists.empty()) throw std::invalid_argument("kernel_matrix: empty distribution list");
  if (!(mu >= 0.0)) throw std::invalid_argument("kernel_matrix: mu must be >= 0");
  const std::size_t n = dists.size();
  if (ids.empty()) {
    ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<long>(i);
  }
  if (ids.size() != n) throw std::invalid_argument("kernel_matrix: id count does not match distributions");
  KernelMatrix k{std::move(ids), Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n))};
  parallel_for(n, std::clamp(workers, 1, 256), [&](std::size_t i) {
    k.values(i, i) = qe_kernel(dists[i], dists[i], mu);
    for (std::size_t j = i + 1; j < n; ++j) k.values(i, j) = qe_kernel(dists[i], dists[j], mu);
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) k.values(j, i) = k.values(i, j);
  return k;
}

Eigen::MatrixXd relative_kernel_deviation(const KernelMatrix& noisy, const KernelMatrix& clean) {
  if (noisy.values.rows() != clean.values.rows() || noisy.values.cols() != clean.values.cols())
    throw std::invalid_argument("relative_kernel_deviation: shape mismatch");
  if ((clean.values.array() == 0.0).any())
    throw std::invalid_argument("relative_kernel_deviation: clean kernel has zero entries");
  return (1.0 - noisy.values.array() / clean.values.array()).abs().matrix();
}

KernelMatrix combine_kernels(std::span<const KernelMatrix> kernels, std::span<const double> weights) {
  if (kernels.empty()) throw std::invalid_argument("combine_kernels: no kernels");
  if (kernels.size() != weights.size()) throw std::invalid_argument("combine_kernels: weight count mismatch");
  KernelMatrix out{kernels[0].graph_ids, Eigen::MatrixXd::Zero(kernels[0].values.rows(), kernels[0].values.cols())};
  for (std::size_t r = 0; r < kernels.size(); ++r) {
    if (!(weights[r] >= 0.0)) throw std::invalid_argument("combine_kernels: weights must be >= 0");
    if (kernels[r].values.rows() != out.values.rows() || kernels[r].values.cols() != out.values.cols())
      throw std::invalid_argument("combine_kernels: shape mismatch");
    out.values += weights[r] * kernels[r].values;
  }
  return out;
}

double min_eigenvalue(const KernelMatrix& k) {
  k.validate();
  if (k.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k.values, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty data");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<double> upper_triangle(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = i + 1; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

void write_kernel_csv(std::ostream& out, const KernelMatrix& k) {
  k.validate();
  out << "graph_id";
  for (long id : k.graph_ids) out << ',' << id;
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < k.size(); ++i) {
    out << k.graph_ids[i];
    for (std::size_t j = 0; j < k.size(); ++j) out << ',' << k.values(i, j);
    out << '\n';
  }
}

KernelMatrix read_kernel_csv(std::istream& in) {
  std::string line;
  long lineno = 0;
  auto split = [&](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    return cells;
  };
  if (!std::getline(in, line)) throw ParseError("<kernel csv>", 1, "missing header");
  ++lineno;
  const auto header = split(line);
  if (header.empty()) throw ParseError("<kernel csv>", lineno, "empty header");
  KernelMatrix k;
  try {
    for (std::size_t c = 1; c < header.size(); ++c) k.graph_ids.push_back(std::stol(header[c]));
    const long n = static_cast<long>(k.graph_ids.size());
    k.values.resize(n, n);
    for (long i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw ParseError("<kernel csv>", lineno + 1, "missing row");
      ++lineno;
      const auto cells = split(line);
      if (static_cast<long>(cells.size()) != n + 1) throw ParseError("<kernel csv>", lineno, "wrong column count");
      for (long j = 0; j < n; ++j) k.values(i, j) = std::stod(cells[j + 1]);
    }
  } catch (const std::logic_error& e) {
    throw ParseError("<kernel csv>", lineno, std::string("bad number: ") + e.what());
  }
  return k;
}

nlohmann::json kernel_to_json(const KernelMatrix& k) {
  k.validate();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::vector<double> r(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) r[j] = k.values(i, j);
    rows.push_back(r);
  }
  return {{"graph_ids", k.graph_ids}, {"values", rows}};
}

KernelMatrix kernel_from_json(const nlohmann::json& j) {
  KernelMatrix k;
  k.graph_ids = j.at("graph_ids").get<std::vector<long>>();
  const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
  const long n = static_cast<long>(rows.size());
  k.values.resize(n, n);
  for (long i = 0; i < n; ++i) {
    if (static_cast<long>(rows[i].size()) != n) throw std::invalid_argument("kernel_from_json: ragged matrix");
    for (long jj = 0; jj < n; ++jj) k.values(i, jj) = rows[i][jj];
  }
  k.validate();
  return k;
}

}  // namespace qek
