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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lbcs/hamiltonian.hpp"
#include "lbcs/pauli.hpp"

namespace lbcs {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Largest qubit count accepted by the dense statevector engine.
inline constexpr std::size_t kMaxStateQubits = 20;

/// Unit-norm pure state on n qubits. Basis index b1 b2 ... bn is read
/// big-endian: qubit 1 is the most significant bit.
class StateVector {
 public:
  StateVector() = default;
  /// Validates the length and that the norm is 1 within 1e-10.
  StateVector(std::size_t n, Amplitudes amplitudes);

  /// Rescales to unit norm before validating.
  static StateVector normalized(std::size_t n, Amplitudes amplitudes);
  /// Computational basis state from a bit string, leftmost bit = qubit 1.
  static StateVector from_bits(std::string_view bits);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t index) const { return amplitudes_[index]; }

 private:
  std::size_t n_ = 0;
  Amplitudes amplitudes_;
};

/// Reverses the low n bits: converts a qubit-indexed mask (bit q = qubit q)
/// into a basis-index mask (qubit q = bit n-1-q).
std::uint64_t qubit_mask_to_index_mask(std::uint64_t mask, std::size_t n) noexcept;

/// P|v>, by bit-indexed permutation and phases.
StateVector apply_pauli(const PauliString& p, const StateVector& v);

/// H|v> (not normalized).
Amplitudes apply_observable(const ObservableSum& h, std::span<const Complex> v);
Amplitudes apply_observable(const ObservableSum& h, const StateVector& v);

/// Matrix-free H prepared for repeated products. Terms sharing an X/Y flip
/// pattern are fused into one diagonal when memory allows.
class PauliSumOperator {
 public:
  explicit PauliSumOperator(const ObservableSum& h, std::size_t threads = 0,
                            std::size_t memory_budget_bytes = std::size_t{1} << 29);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }
  /// out = H in. `out` must not alias `in`.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  struct FlipGroup {
    std::uint64_t flip = 0;  // basis-index mask
    std::vector<Complex> diagonal;               // fused, when materialized
    std::vector<std::pair<std::uint64_t, Complex>> terms;  // (z index mask, coeff * i^ny)
  };

  std::size_t n_ = 0;
  double identity_ = 0.0;
  std::size_t threads_ = 1;
  std::vector<FlipGroup> groups_;
};

/// <v|Q|v>. Throws NumericalError if the imaginary part exceeds 1e-10.
double expectation(const StateVector& v, const PauliString& q);

/// Re(i^k <v|S|v>) where (k, S) = product(q, r).
double pair_expectation(const StateVector& v, const PauliString& q, const PauliString& r);

/// Binary amplitude dump: magic "LBCSSV01", uint32 n (little endian), then
/// 2^n (re, im) float64 pairs.
void write_state_file(const std::string& path, const StateVector& v);
StateVector read_state_file(const std::string& path);

}  // namespace lbcs
