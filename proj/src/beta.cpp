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

#include "lbcs/beta.hpp"

#include <cmath>
#include <string>

#include "lbcs/error.hpp"

namespace lbcs {

BetaDistribution::BetaDistribution(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw InputError("beta distribution needs at least one qubit");
  if (rows_.size() > kMaxQubits) throw InputError("too many qubits in beta distribution");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    double sum = 0.0;
    for (double p : rows_[i]) {
      if (!std::isfinite(p) || p < 0.0) {
        throw InputError("beta row " + std::to_string(i + 1) + " has an invalid entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kBetaRowTolerance) {
      throw InputError("beta row " + std::to_string(i + 1) + " does not sum to 1");
    }
  }
}

double BetaDistribution::basis_probability(const PauliString& basis) const {
  if (basis.num_qubits() != num_qubits()) {
    throw DimensionMismatch(num_qubits(), basis.num_qubits());
  }
  double p = 1.0;
  for (std::size_t i = 0; i < num_qubits(); ++i) {
    if (basis[i] == PauliLabel::I) return 0.0;
    p *= (*this)(i, basis[i]);
  }
  return p;
}

BetaDistribution uniform_beta(std::size_t n) {
  if (n == 0) throw InputError("uniform_beta needs n >= 1");
  return BetaDistribution(std::vector<BetaDistribution::Row>(n, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

BetaDistribution normalized_beta(std::vector<BetaDistribution::Row> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    const double sum = row[0] + row[1] + row[2];
    if (!(sum > 0.0) || row[0] < 0.0 || row[1] < 0.0 || row[2] < 0.0) {
      throw InputError("beta row " + std::to_string(i + 1) + " cannot be normalized");
    }
    for (double& p : row) p /= sum;
  }
  return BetaDistribution(std::move(rows));
}

}  // namespace lbcs
