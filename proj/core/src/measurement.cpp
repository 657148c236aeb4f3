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

#include "qek/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include "qek/common.hpp"

namespace qek {

const char* to_string(Observable::Kind kind) {
  switch (kind) {
    case Observable::Kind::IsingEnergy: return "ising_energy";
    case Observable::Kind::TotalOccupation: return "total_occupation";
    case Observable::Kind::SiteOccupation: return "site_occupation";
  }
  return "unknown";
}

BinningSpec BinningSpec::fixed_width(double width, double origin) {
  BinningSpec b{Mode::FixedWidth, width, origin};
  b.validate();
  return b;
}

void BinningSpec::validate() const {
  if (mode == Mode::FixedWidth && !(width > 0.0 && std::isfinite(width)))
    throw std::invalid_argument("BinningSpec: width must be positive");
  if (!std::isfinite(origin)) throw std::invalid_argument("BinningSpec: origin must be finite");
}

BinId BinningSpec::bin_of(double value) const {
  if (!std::isfinite(value)) throw std::invalid_argument("BinningSpec: non-finite value");
  if (mode == Mode::IntegerBins) {
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9)
      throw std::invalid_argument("BinningSpec: non-integer value " + std::to_string(value) + " with integer bins");
    return static_cast<BinId>(std::llround(value));
  }
  // Nudge values that sit on a bin edge up to round-off.
  return static_cast<BinId>(std::floor((value - origin) / width + 1e-9));
}

double BinningSpec::bin_value(BinId bin) const {
  return mode == Mode::IntegerBins ? static_cast<double>(bin) : origin + static_cast<double>(bin) * width;
}

BinningSpec default_binning(const Graph& graph, const Observable& obs) {
  const auto values = observable_values(graph, obs);
  bool integral = true;
  double lo = values.front(), hi = values.front();
  for (double v : values) {
    integral = integral && std::abs(v - std::round(v)) <= 1e-9;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (integral) return BinningSpec::integer();
  return BinningSpec::fixed_width((hi - lo) / 64.0, lo);
}

void NoiseModel::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0) || !(epsilon_prime >= 0.0 && epsilon_prime <= 1.0))
    throw std::invalid_argument("NoiseModel: flip probabilities must lie in [0, 1]");
}

double observable_value(const Graph& graph, const Observable& obs, Bitstring sigma) {
  switch (obs.kind) {
    case Observable::Kind::IsingEnergy: {
      double e = 0.0;
      const auto& edges = graph.edges();
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (((sigma >> edges[k].u) & 1U) && ((sigma >> edges[k].v) & 1U)) e += graph.edge_weight(k);
      return e;
    }
    case Observable::Kind::TotalOccupation:
      return std::popcount(sigma);
    case Observable::Kind::SiteOccupation:
      if (obs.site < 0 || obs.site >= graph.num_nodes())
        throw std::invalid_argument("observable_value: site out of range");
      return static_cast<double>((sigma >> obs.site) & 1U);
  }
  return 0.0;
}

std::vector<double> observable_values(const Graph& graph, const Observable& obs) {
  const int n = graph.num_nodes();
  if (n > 30) throw BudgetError("observable_values: too many qubits");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> out(dim);
  if (obs.kind == Observable::Kind::IsingEnergy) {
    // Build by adding one edge at a time over all states.
    const auto& edges = graph.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Bitstring mask = (Bitstring{1} << edges[k].u) | (Bitstring{1} << edges[k].v);
      const double w = graph.edge_weight(k);
      for (std::size_t s = 0; s < dim; ++s)
        if ((s & mask) == mask) out[s] += w;
    }
    return out;
  }
  for (std::size_t s = 0; s < dim; ++s) out[s] = observable_value(graph, obs, s);
  return out;
}

ProbabilityDistribution exact_distribution(const StateVector& state, const Graph& graph, const Observable& obs,
                                           const BinningSpec& binning) {
  if (state.num_qubits() != graph.num_nodes())
    throw std::invalid_argument("exact_distribution: state and graph sizes differ");
  binning.validate();
  const auto values = observable_values(graph, obs);
  std::map<BinId, double> acc;
  const auto amps = state.amplitudes();
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const double p = std::norm(amps[s]);
    if (p == 0.0) continue;
    acc[binning.bin_of(values[s])] += p;
  }
  std::vector<BinId> bins;
  std::vector<double> weights;
  for (const auto& [b, w] : acc) {
    bins.push_back(b);
    weights.push_back(w);
  }
  return ProbabilityDistribution::from_weights(std::move(bins), std::move(weights));
}

double expectation(const StateVector& state, const Graph& graph, const Observable& obs) {
  if (state.num_qubits() != graph.num_nodes())
    throw std::invalid_argument("expectation: state and graph sizes differ");
  const auto values = observable_values(graph, obs);
  const auto amps = state.amplitudes();
  double e = 0.0;
  for (std::size_t s = 0; s < amps.size(); ++s) e += std::norm(amps[s]) * values[s];
  return e;
}

std::vector<Bitstring> sample_clean(const StateVector& state, std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_clean: shots must be >= 1");
  const auto amps = state.amplitudes();
  std::vector<double> cumulative(amps.size());
  double total = 0.0;
  for (std::size_t s = 0; s < amps.size(); ++s) {
    total += std::norm(amps[s]);
    cumulative[s] = total;
  }
  std::size_t last = amps.size() - 1;
  while (last > 0 && std::norm(amps[last]) == 0.0) --last;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, total);
  std::vector<Bitstring> out(shots);
  for (auto& o : out) {
    const double u = uniform(rng);
    auto idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    if (idx == amps.size()) idx = last;
    o = idx;
  }
  return out;
}

std::vector<Bitstring> apply_detection_noise(std::span<const Bitstring> samples, int num_qubits,
                                             const NoiseModel& noise, std::uint64_t seed) {
  noise.validate();
  std::vector<Bitstring> out(samples.begin(), samples.end());
  if (noise.is_noiseless()) return out;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 1U};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (auto& s : out) {
    for (int q = 0; q < num_qubits; ++q) {
      const Bitstring bit = Bitstring{1} << q;
      const double rate = (s & bit) ? noise.epsilon_prime : noise.epsilon;
      if (uniform(rng) < rate) s ^= bit;
    }
  }
  return out;
}

std::vector<Bitstring> sample_bitstrings(const StateVector& state, std::size_t shots, const NoiseModel& noise,
                                         std::uint64_t seed) {
  const auto clean = sample_clean(state, shots, seed);
  return apply_detection_noise(clean, state.num_qubits(), noise, seed);
}

ProbabilityDistribution histogram_from_samples(std::span<const Bitstring> samples, const Graph& graph,
                                               const Observable& obs, const BinningSpec& binning) {
  if (samples.empty()) throw std::invalid_argument("histogram_from_samples: empty sample list");
  binning.validate();
  std::map<BinId, double> acc;
  for (Bitstring s : samples) acc[binning.bin_of(observable_value(graph, obs, s))] += 1.0;
  std::vector<BinId> bins;
  std::vector<double> weights;
  for (const auto& [b, w] : acc) {
    bins.push_back(b);
    weights.push_back(w);
  }
  return ProbabilityDistribution::from_weights(std::move(bins), std::move(weights));
}

std::vector<double> fourier_magnitudes(std::span<const double> trace, int num_components) {
  if (num_components < 1) throw std::invalid_argument("fourier_magnitudes: K must be >= 1");
  const std::size_t n = trace.size();
  if (n < 2 || n < 4 * static_cast<std::size_t>(num_components))
    throw std::invalid_argument("fourier_magnitudes: time grid too coarse (need >= 4K samples)");
  // (1/T) * integral over [0, T]; with T = (n - 1) h the factor h/T is 1/(n - 1).
  const double inv = 1.0 / static_cast<double>(n - 1);
  std::vector<double> out(num_components);
  for (int k = 0; k < num_components; ++k) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      const double phase = -2.0 * kPi * k * static_cast<double>(j) * inv;
      s += w * trace[j] * Complex(std::cos(phase), std::sin(phase));
    }
    out[k] = std::abs(s) * inv;
  }
  return out;
}

ProbabilityDistribution fourier_distribution(std::span<const double> trace, int num_components) {
  const auto mags = fourier_magnitudes(trace, num_components);
  double total = 0.0;
  for (double m : mags) total += m;
  if (total < 1e-14) return ProbabilityDistribution::point_mass(0);
  return ProbabilityDistribution::from_weights(mags);
}

void write_bitstrings(std::ostream& out, std::span<const Bitstring> samples, int num_qubits) {
  std::string line(static_cast<std::size_t>(num_qubits), '0');
  for (Bitstring s : samples) {
    for (int q = 0; q < num_qubits; ++q) line[q] = ((s >> q) & 1U) ? '1' : '0';
    out << line << '\n';
  }
}

std::vector<Bitstring> read_bitstrings(std::istream& in, int* num_qubits) {
  std::vector<Bitstring> out;
  std::string line;
  int width = -1;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (width < 0) width = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != width || width > 64)
      throw ParseError("<bitstrings>", lineno, "inconsistent bitstring width");
    Bitstring s = 0;
    for (int q = 0; q < width; ++q) {
      if (line[q] == '1') s |= Bitstring{1} << q;
      else if (line[q] != '0') throw ParseError("<bitstrings>", lineno, "expected only 0/1 characters");
    }
    out.push_back(s);
  }
  if (num_qubits) *num_qubits = std::max(width, 0);
  return out;
}

}  // namespace qek
