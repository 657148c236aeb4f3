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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qek {

using Complex = std::complex<double>;

/// Basis-state label: bit i holds the occupation of qubit i.
using Bitstring = std::uint64_t;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

// Failures that are not plain precondition violations. Precondition
// violations throw std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the offending file and 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::string file, long line, const std::string& what)
      : Error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  long line() const noexcept { return line_; }

 private:
  std::string file_;
  long line_;
};

/// A configured size budget (qubits, occupation-graph vertices) was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (CLI maps this to exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qek
