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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lbcs {

class BetaDistribution;

/// Single-qubit Pauli symbol. Enumerator values define the total order
/// I < X < Y < Z used for deterministic tie-breaking.
enum class PauliLabel : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLabel label) noexcept;
/// Throws InputError on anything other than I, X, Y, Z.
PauliLabel label_from_char(char c);

/// Maximum qubit count of a PauliString (one machine word per mask).
inline constexpr std::size_t kMaxQubits = 64;

/// n-qubit Pauli string stored as x/z bit masks; bit q of each mask is
/// qubit q (0-based, i.e. qubit q+1 of the text form).
///   I = (0,0)  X = (1,0)  Y = (1,1)  Z = (0,1)
class PauliString {
 public:
  PauliString() = default;
  /// All-identity string on n qubits.
  explicit PauliString(std::size_t n);

  static PauliString from_masks(std::size_t n, std::uint64_t x, std::uint64_t z);
  /// Parses the text form (leftmost character is qubit 1). Throws InputError.
  static PauliString parse(std::string_view text);

  std::string to_string() const;

  std::size_t num_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support_mask() const noexcept { return x_ | z_; }
  /// Positions carrying X or Y.
  std::uint64_t y_mask() const noexcept { return x_ & z_; }

  PauliLabel operator[](std::size_t qubit) const noexcept {
    const unsigned xb = (x_ >> qubit) & 1u;
    const unsigned zb = (z_ >> qubit) & 1u;
    // (x,z) -> I X Y Z
    static constexpr PauliLabel table[4] = {PauliLabel::I, PauliLabel::X, PauliLabel::Z,
                                            PauliLabel::Y};
    return table[xb | (zb << 1)];
  }
  void set(std::size_t qubit, PauliLabel label);

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_full_weight() const noexcept;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Lexicographic over labels from qubit 1, with I < X < Y < Z. Strings of
  /// different length order by length first.
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) noexcept;

 private:
  std::uint32_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    std::uint64_t h = p.x_mask() * 0x9E3779B97F4A7C15ull;
    h ^= p.z_mask() + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    h ^= p.num_qubits();
    return static_cast<std::size_t>(h);
  }
};

/// i^phase * string.
struct PhasedPauli {
  int phase = 0;  // in {0,1,2,3}
  PauliString string;

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
};

/// Matrix product a*b as i^k S, computed qubit-wise.
PhasedPauli product(const PauliString& a, const PauliString& b);

/// 0-based indices of non-identity positions, ascending.
std::vector<std::size_t> support(const PauliString& q);
inline std::size_t weight(const PauliString& q) noexcept {
  return static_cast<std::size_t>(std::popcount(q.support_mask()));
}

/// True iff on every qubit the two labels commute (one is I, or they match).
bool qubitwise_commute(const PauliString& a, const PauliString& b);

/// True iff every label of q is I or equal to the basis label. Throws
/// InputError unless basis is full weight.
bool agrees_with_basis(const PauliString& q, const PauliString& basis);

/// Product over qubits of f_i(p, q, beta): 1 where either label is I,
/// 1/beta_i(p_i) where the labels match, 0 on any mismatch. A vanishing
/// probability at a matched position contributes a factor of 0.
double f_factor(const PauliString& p, const PauliString& q, const BetaDistribution& beta);

/// Qubits where a and b carry the same non-identity label.
inline std::uint64_t matched_mask(const PauliString& a, const PauliString& b) noexcept {
  const std::uint64_t differ = (a.x_mask() ^ b.x_mask()) | (a.z_mask() ^ b.z_mask());
  return a.support_mask() & b.support_mask() & ~differ;
}

}  // namespace lbcs

template <>
struct std::hash<lbcs::PauliString> : lbcs::PauliStringHash {};
