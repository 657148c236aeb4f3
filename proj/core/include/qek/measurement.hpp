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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qek/distribution.hpp"
#include "qek/graph.hpp"
#include "qek/state_vector.hpp"

namespace qek {

/// Observables are evaluated on bit values n_i in {0, 1}.
struct Observable {
  enum class Kind {
    IsingEnergy,      ///< sum over edges of J_ij n_i n_j
    TotalOccupation,  ///< sum_i n_i
    SiteOccupation,   ///< n_site
  };
  Kind kind = Kind::IsingEnergy;
  int site = 0;

  static Observable ising_energy() { return {Kind::IsingEnergy, 0}; }
  static Observable total_occupation() { return {Kind::TotalOccupation, 0}; }
  static Observable site_occupation(int i) { return {Kind::SiteOccupation, i}; }
};

const char* to_string(Observable::Kind kind);

struct BinningSpec {
  enum class Mode { IntegerBins, FixedWidth };
  Mode mode = Mode::IntegerBins;
  double width = 1.0;
  double origin = 0.0;

  static BinningSpec integer() { return {}; }
  static BinningSpec fixed_width(double width, double origin);

  void validate() const;
  /// IntegerBins: the value must be an integer within 1e-9.
  BinId bin_of(double value) const;
  /// Representative value of a bin (left edge for FixedWidth).
  double bin_value(BinId bin) const;
};

/// IntegerBins when every outcome is integral, otherwise 64 fixed-width bins
/// spanning the outcome range.
BinningSpec default_binning(const Graph& graph, const Observable& obs);

struct NoiseModel {
  /// False positive rate (0 -> 1).
  double epsilon = 0.0;
  /// False negative rate (1 -> 0).
  double epsilon_prime = 0.0;

  bool is_noiseless() const noexcept { return epsilon == 0.0 && epsilon_prime == 0.0; }
  void validate() const;
};

double observable_value(const Graph& graph, const Observable& obs, Bitstring sigma);
std::vector<double> observable_values(const Graph& graph, const Observable& obs);

/// Outcome distribution of a measurement; empty bins are omitted.
ProbabilityDistribution exact_distribution(const StateVector& state, const Graph& graph, const Observable& obs,
                                           const BinningSpec& binning);

double expectation(const StateVector& state, const Graph& graph, const Observable& obs);

/// Noiseless draws from |psi|^2.
std::vector<Bitstring> sample_clean(const StateVector& state, std::size_t shots, std::uint64_t seed);

/// Independent per-bit flips. Uses an RNG stream separate from sample_clean
/// so that clean and noisy sample sets can share the same underlying draws.
std::vector<Bitstring> apply_detection_noise(std::span<const Bitstring> samples, int num_qubits,
                                             const NoiseModel& noise, std::uint64_t seed);

/// sample_clean followed by apply_detection_noise with the same seed.
std::vector<Bitstring> sample_bitstrings(const StateVector& state, std::size_t shots, const NoiseModel& noise,
                                         std::uint64_t seed);

ProbabilityDistribution histogram_from_samples(std::span<const Bitstring> samples, const Graph& graph,
                                               const Observable& obs, const BinningSpec& binning);

/// Normalized magnitudes of the first K Fourier coefficients of a trace
/// sampled uniformly on [0, T] (endpoints included), by trapezoidal quadrature.
std::vector<double> fourier_magnitudes(std::span<const double> trace, int num_components);
ProbabilityDistribution fourier_distribution(std::span<const double> trace, int num_components);

/// One bitstring per line, qubit 0 leftmost.
void write_bitstrings(std::ostream& out, std::span<const Bitstring> samples, int num_qubits);
std::vector<Bitstring> read_bitstrings(std::istream& in, int* num_qubits = nullptr);

}  // namespace qek
