// Copyright 2026 The LBCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lbcs {

/// Bad user input: malformed files, inconsistent sizes, invalid arguments.
/// The CLI maps this family to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public InputError {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : InputError("qubit count mismatch: expected " + std::to_string(expected) +
                   ", got " + std::to_string(actual)) {}
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Numerical failure: non-convergence, divergent variance, internal
/// consistency checks. The CLI maps this family to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// A term needs a measurement label whose sampling probability is zero, so
/// its contribution to the second moment is unbounded.
class DivergentVariance : public NumericalError {
 public:
  DivergentVariance(std::size_t qubit, char label)
      : NumericalError("variance diverges: qubit " + std::to_string(qubit + 1) +
                       " has zero probability for label " + std::string(1, label)),
        qubit_(qubit),
        label_(label) {}

  /// 0-based qubit index.
  std::size_t qubit() const noexcept { return qubit_; }
  char label() const noexcept { return label_; }

 private:
  std::size_t qubit_;
  char label_;
};

}  // namespace lbcs
