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

#include "lbcs/pauli.hpp"

#include <cassert>

#include "lbcs/beta.hpp"
#include "lbcs/error.hpp"

namespace lbcs {

namespace {

void check_same_size(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionMismatch(a.num_qubits(), b.num_qubits());
  }
}

int popcount(std::uint64_t v) { return std::popcount(v); }

}  // namespace

char to_char(PauliLabel label) noexcept {
  static constexpr char chars[4] = {'I', 'X', 'Y', 'Z'};
  return chars[static_cast<int>(label)];
}

PauliLabel label_from_char(char c) {
  switch (c) {
    case 'I':
      return PauliLabel::I;
    case 'X':
      return PauliLabel::X;
    case 'Y':
      return PauliLabel::Y;
    case 'Z':
      return PauliLabel::Z;
    default:
      throw InputError(std::string("invalid Pauli label '") + c + "'");
  }
}

PauliString::PauliString(std::size_t n) : n_(static_cast<std::uint32_t>(n)) {
  if (n > kMaxQubits) {
    throw InputError("at most " + std::to_string(kMaxQubits) + " qubits are supported");
  }
}

PauliString PauliString::from_masks(std::size_t n, std::uint64_t x, std::uint64_t z) {
  PauliString p(n);
  const std::uint64_t valid = n == 64 ? ~0ull : ((1ull << n) - 1);
  if ((x | z) & ~valid) {
    throw InputError("Pauli mask has bits beyond qubit count");
  }
  p.x_ = x;
  p.z_ = z;
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  if (text.empty()) {
    throw InputError("empty Pauli string");
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    p.set(q, label_from_char(text[q]));
  }
  return p;
}

std::string PauliString::to_string() const {
  std::string out(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) {
    out[q] = to_char((*this)[q]);
  }
  return out;
}

void PauliString::set(std::size_t qubit, PauliLabel label) {
  assert(qubit < n_);
  const std::uint64_t bit = 1ull << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (label == PauliLabel::X || label == PauliLabel::Y) x_ |= bit;
  if (label == PauliLabel::Z || label == PauliLabel::Y) z_ |= bit;
}

bool PauliString::is_full_weight() const noexcept {
  return static_cast<std::size_t>(std::popcount(x_ | z_)) == n_;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) noexcept {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return std::strong_ordering::equal;
  const auto q = static_cast<std::size_t>(std::countr_zero(diff));
  return static_cast<int>(a[q]) <=> static_cast<int>(b[q]);
}

PhasedPauli product(const PauliString& a, const PauliString& b) {
  check_same_size(a, b);
  const std::uint64_t ax = a.x_mask() & ~a.z_mask();
  const std::uint64_t ay = a.x_mask() & a.z_mask();
  const std::uint64_t az = ~a.x_mask() & a.z_mask();
  const std::uint64_t bx = b.x_mask() & ~b.z_mask();
  const std::uint64_t by = b.x_mask() & b.z_mask();
  const std::uint64_t bz = ~b.x_mask() & b.z_mask();
  // XY = iZ, YZ = iX, ZX = iY; reversed orders carry -i.
  const int plus = popcount(ax & by) + popcount(ay & bz) + popcount(az & bx);
  const int minus = popcount(ay & bx) + popcount(az & by) + popcount(ax & bz);
  PhasedPauli out;
  out.phase = (plus + 3 * minus) & 3;
  out.string = PauliString::from_masks(a.num_qubits(), a.x_mask() ^ b.x_mask(),
                                       a.z_mask() ^ b.z_mask());
  return out;
}

std::vector<std::size_t> support(const PauliString& q) {
  std::vector<std::size_t> out;
  for (std::uint64_t m = q.support_mask(); m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

bool qubitwise_commute(const PauliString& a, const PauliString& b) {
  check_same_size(a, b);
  const std::uint64_t differ = (a.x_mask() ^ b.x_mask()) | (a.z_mask() ^ b.z_mask());
  return (a.support_mask() & b.support_mask() & differ) == 0;
}

bool agrees_with_basis(const PauliString& q, const PauliString& basis) {
  check_same_size(q, basis);
  if (!basis.is_full_weight()) {
    throw InputError("measurement basis " + basis.to_string() + " is not full weight");
  }
  const std::uint64_t differ = (q.x_mask() ^ basis.x_mask()) | (q.z_mask() ^ basis.z_mask());
  return (q.support_mask() & differ) == 0;
}

double f_factor(const PauliString& p, const PauliString& q, const BetaDistribution& beta) {
  check_same_size(p, q);
  if (beta.num_qubits() != p.num_qubits()) {
    throw DimensionMismatch(p.num_qubits(), beta.num_qubits());
  }
  if (!qubitwise_commute(p, q)) return 0.0;
  double value = 1.0;
  for (std::uint64_t m = matched_mask(p, q); m != 0; m &= m - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    const double b = beta(i, p[i]);
    if (b == 0.0) return 0.0;
    value /= b;
  }
  return value;
}

}  // namespace lbcs
