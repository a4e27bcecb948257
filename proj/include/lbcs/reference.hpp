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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lbcs/pauli.hpp"
#include "lbcs/state.hpp"

namespace lbcs {

/// Computational basis reference |b1...bn> with Z signs m_i = (-1)^{b_i}.
class SingleReference {
 public:
  SingleReference() = default;
  /// Bits as text, leftmost = qubit 1.
  static SingleReference from_bits(std::string_view bits);
  /// Signs must each be +1 or -1.
  explicit SingleReference(std::vector<int> signs);

  std::size_t num_qubits() const noexcept { return signs_.size(); }
  const std::vector<int>& signs() const noexcept { return signs_; }
  /// Bit q set iff qubit q is |1>.
  std::uint64_t bits() const noexcept { return bits_; }
  std::string bit_string() const;

 private:
  std::vector<int> signs_;
  std::uint64_t bits_ = 0;
};

/// Superposition sum_k lambda_k |b^(k)> of distinct basis states.
class MultiReference {
 public:
  struct Component {
    std::uint64_t bits = 0;  // bit q = qubit q
    Complex amplitude{0, 0};
  };

  MultiReference() = default;
  /// Validates distinct bitstrings and sum |lambda|^2 = 1 within 1e-10.
  MultiReference(std::size_t n, std::vector<Component> components);
  static MultiReference from_single(const SingleReference& ref);

  std::size_t num_qubits() const noexcept { return n_; }
  const std::vector<Component>& components() const noexcept { return components_; }
  /// Index of the component with the given bits, or npos.
  std::size_t find(std::uint64_t bits) const noexcept;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_ = 0;
  std::vector<Component> components_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Parses a bit string into a qubit-indexed mask.
std::uint64_t parse_bits(std::string_view bits);

/// tr(rho_ref Q R) for a computational basis state. Non-zero only when QR
/// is diagonal: factor 1 where Q_i = R_i, m_i where {Q_i, R_i} = {I, Z}, and
/// the phase of QR where X/Y labels combine into Z. Returns the real part.
double reference_expectation(const SingleReference& ref, const PauliString& q,
                             const PauliString& r);

/// sum_{k,l} lambda_k conj(lambda_l) <b^(l)| Q R |b^(k)>.
Complex multireference_density_expectation(const MultiReference& ref, const PauliString& q,
                                           const PauliString& r);

/// Dense statevector of the reference (n <= kMaxStateQubits).
StateVector to_state(const SingleReference& ref);
StateVector to_state(const MultiReference& ref);

}  // namespace lbcs
