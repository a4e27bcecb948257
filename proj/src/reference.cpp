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

#include "lbcs/reference.hpp"

#include <bit>
#include <cmath>

#include "lbcs/error.hpp"

namespace lbcs {

namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

double parity_sign(std::uint64_t v) noexcept { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

std::size_t basis_index(std::uint64_t bits, std::size_t n) {
  return static_cast<std::size_t>(qubit_mask_to_index_mask(bits, n));
}

}  // namespace

std::uint64_t parse_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > kMaxQubits) throw InputError("invalid bit string length");
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      mask |= std::uint64_t{1} << q;
    } else if (bits[q] != '0') {
      throw InputError("bit string may only contain 0 and 1");
    }
  }
  return mask;
}

SingleReference SingleReference::from_bits(std::string_view bits) {
  const std::uint64_t mask = parse_bits(bits);
  std::vector<int> signs(bits.size());
  for (std::size_t q = 0; q < bits.size(); ++q) signs[q] = ((mask >> q) & 1) ? -1 : 1;
  return SingleReference(std::move(signs));
}

SingleReference::SingleReference(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty() || signs_.size() > kMaxQubits) throw InputError("invalid reference size");
  for (std::size_t q = 0; q < signs_.size(); ++q) {
    if (signs_[q] == -1) {
      bits_ |= std::uint64_t{1} << q;
    } else if (signs_[q] != 1) {
      throw InputError("reference signs must be +1 or -1");
    }
  }
}

std::string SingleReference::bit_string() const {
  std::string out(signs_.size(), '0');
  for (std::size_t q = 0; q < signs_.size(); ++q) {
    if (signs_[q] == -1) out[q] = '1';
  }
  return out;
}

MultiReference::MultiReference(std::size_t n, std::vector<Component> components)
    : n_(n), components_(std::move(components)) {
  if (n == 0 || n > kMaxQubits) throw InputError("invalid reference size");
  if (components_.empty()) throw InputError("multi-reference state needs a component");
  const std::uint64_t valid = n == 64 ? ~0ull : ((std::uint64_t{1} << n) - 1);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const Component& c = components_[k];
    if ((c.bits & ~valid) != 0) throw InputError("component bits exceed qubit count");
    if (!index_.emplace(c.bits, k).second) {
      throw InputError("multi-reference bitstrings must be distinct");
    }
    norm2 += std::norm(c.amplitude);
  }
  if (!(std::abs(norm2 - 1.0) <= 1e-10)) {
    throw InputError("multi-reference amplitudes are not normalized");
  }
}

MultiReference MultiReference::from_single(const SingleReference& ref) {
  return MultiReference(ref.num_qubits(), {Component{ref.bits(), Complex{1, 0}}});
}

std::size_t MultiReference::find(std::uint64_t bits) const noexcept {
  const auto it = index_.find(bits);
  return it == index_.end() ? npos : it->second;
}

double reference_expectation(const SingleReference& ref, const PauliString& q,
                             const PauliString& r) {
  if (q.num_qubits() != ref.num_qubits()) throw DimensionMismatch(ref.num_qubits(), q.num_qubits());
  const PhasedPauli qr = product(q, r);
  if (qr.string.x_mask() != 0) return 0.0;
  return (kIPow[qr.phase] * parity_sign(ref.bits() & qr.string.z_mask())).real();
}

Complex multireference_density_expectation(const MultiReference& ref, const PauliString& q,
                                           const PauliString& r) {
  if (q.num_qubits() != ref.num_qubits()) throw DimensionMismatch(ref.num_qubits(), q.num_qubits());
  const PhasedPauli qr = product(q, r);
  const PauliString& s = qr.string;
  // S|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>
  const Complex phase = kIPow[(qr.phase + std::popcount(s.y_mask())) & 3];
  Complex total{0, 0};
  for (const auto& ck : ref.components()) {
    const std::size_t l = ref.find(ck.bits ^ s.x_mask());
    if (l == MultiReference::npos) continue;
    total += ck.amplitude * std::conj(ref.components()[l].amplitude) *
             parity_sign(ck.bits & s.z_mask());
  }
  return phase * total;
}

StateVector to_state(const SingleReference& ref) {
  return to_state(MultiReference::from_single(ref));
}

StateVector to_state(const MultiReference& ref) {
  const std::size_t n = ref.num_qubits();
  if (n > kMaxStateQubits) throw InputError("reference too large for a dense statevector");
  Amplitudes a(std::size_t{1} << n);
  for (const auto& c : ref.components()) a[basis_index(c.bits, n)] = c.amplitude;
  return StateVector(n, std::move(a));
}

}  // namespace lbcs
