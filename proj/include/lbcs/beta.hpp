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

#include <array>
#include <cstddef>
#include <vector>

#include "lbcs/pauli.hpp"

namespace lbcs {

/// Product distribution over full-weight measurement bases: one probability
/// triple (X, Y, Z) per qubit.
class BetaDistribution {
 public:
  using Row = std::array<double, 3>;

  BetaDistribution() = default;
  /// Validates: entries >= 0 and every row sums to 1 within 1e-12.
  explicit BetaDistribution(std::vector<Row> rows);

  std::size_t num_qubits() const noexcept { return rows_.size(); }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(std::size_t qubit) const { return rows_[qubit]; }

  /// beta_i(label) for label in {X, Y, Z}.
  double operator()(std::size_t qubit, PauliLabel label) const noexcept {
    return rows_[qubit][static_cast<std::size_t>(label) - 1];
  }

  /// Probability of the full-weight basis: product of per-qubit entries.
  double basis_probability(const PauliString& basis) const;

  friend bool operator==(const BetaDistribution&, const BetaDistribution&) = default;

 private:
  std::vector<Row> rows_;
};

/// Row tolerance accepted by the validating constructor.
inline constexpr double kBetaRowTolerance = 1e-12;

/// Every entry 1/3: the uniform classical-shadow distribution.
BetaDistribution uniform_beta(std::size_t n);

/// Rescales each row to sum to one. Rows must be non-negative with positive
/// sum; used by optimizer updates and lenient file input.
BetaDistribution normalized_beta(std::vector<BetaDistribution::Row> rows);

}  // namespace lbcs
