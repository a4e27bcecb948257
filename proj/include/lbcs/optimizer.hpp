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

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "lbcs/beta.hpp"
#include "lbcs/hamiltonian.hpp"
#include "lbcs/reference.hpp"

namespace lbcs {

/// Ordered pair of indices into ObservableSum::terms().
struct InfluentialPair {
  std::size_t q = 0;
  std::size_t r = 0;

  friend bool operator==(const InfluentialPair&, const InfluentialPair&) = default;
};

/// All ordered pairs (Q, R), Q == R included, whose labels agree on every
/// qubit up to I <-> Z swaps.
std::vector<InfluentialPair> influential_pairs(const ObservableSum& h);

/// A cost value. Monomials that need a zero probability are evaluated with
/// 1/0 read as 0 and counted in divergent_terms: the true variance is
/// infinite whenever that count is non-zero.
struct CostValue {
  double value = 0.0;
  std::size_t divergent_terms = 0;

  bool divergent() const noexcept { return divergent_terms != 0; }
};

/// sum over influential pairs of a_Q a_R prod_{Q_i=R_i!=I} beta_i(Q_i)^{-1}
/// prod_{Q_i!=R_i} m_i.
CostValue cost_full(const ObservableSum& h, const SingleReference& ref,
                    const BetaDistribution& beta);

/// sum_Q a_Q^2 prod_{i in supp Q} beta_i(Q_i)^{-1}.
CostValue cost_diag(const ObservableSum& h, const BetaDistribution& beta);

/// Multi-reference cost built from the per-qubit g (bits agree) and h (bits
/// differ) factors, weighted by a_Q a_R and summed over traceless pairs and
/// component pairs. Throws NumericalError if the imaginary part exceeds 1e-9.
CostValue cost_multiref(const ObservableSum& h, const MultiReference& ref,
                        const BetaDistribution& beta);

/// Cost of the form c0 + sum_t w_t prod_{(i,W) in t} beta_i(W)^{-1}, with
/// monomials sharing a label set merged. All three costs compile to this.
class SignomialCost {
 public:
  struct Monomial {
    PauliString labels;  // qubits/labels whose reciprocal probabilities multiply
    double weight = 0.0;
  };

  /// Result of one closed-form Lagrange evaluation.
  struct ClosedForm {
    BetaDistribution beta;
    /// Entries whose numerator was negative (floored) plus rows whose
    /// denominator was non-positive (left unchanged).
    std::size_t floored = 0;
    /// max |beta_i(W) - closed_i(W)| over qubits and labels some monomial
    /// uses: the deviation of the closed-form equation from equality.
    double residual = 0.0;
  };

  SignomialCost(std::size_t n, std::vector<Monomial> monomials, double constant = 0.0);

  static SignomialCost diagonal(const ObservableSum& h);
  static SignomialCost full(const ObservableSum& h, const SingleReference& ref);
  static SignomialCost multireference(const ObservableSum& h, const MultiReference& ref);

  std::size_t num_qubits() const noexcept { return n_; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  double constant() const noexcept { return constant_; }
  /// Qubits that no monomial touches.
  std::vector<std::size_t> untouched_qubits() const;

  CostValue evaluate(const BetaDistribution& beta) const;

  /// beta_i(W) <- N_i(W) / sum_W' N_i(W'), where N_i(W) sums the monomial
  /// values containing (i, W). Entries are floored at `floor`, rows
  /// renormalized; rows no monomial touches are returned unchanged.
  ClosedForm closed_form(const BetaDistribution& beta, double floor) const;

 private:
  std::size_t n_ = 0;
  std::vector<Monomial> monomials_;
  double constant_ = 0.0;
  std::uint64_t touched_ = 0;
};

/// Closed-form Lagrange update (un-damped) for the diagonal cost.
BetaDistribution lagrange_update_diag(const ObservableSum& h, const BetaDistribution& beta,
                                      double floor = 1e-9);
/// Closed-form Lagrange update (un-damped) for the full single-reference cost.
BetaDistribution lagrange_update_full(const ObservableSum& h, const SingleReference& ref,
                                      const BetaDistribution& beta, double floor = 1e-9);

struct DiagonalCost {};
struct FullCost {
  SingleReference reference;
};
/// Experimental: uses the same ratio update derived from the g/h expansion.
struct MultiReferenceCost {
  MultiReference reference;
};
using CostKind = std::variant<DiagonalCost, FullCost, MultiReferenceCost>;

struct OptimizerConfig {
  enum class Init { kUniform, kRandom };

  /// Damping: beta <- (1 - step) beta + step * closed.
  double step = 0.5;
  /// Stop when max |change in beta| falls below this.
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  /// Probability floor inside iterations; final entries below 10x floor are
  /// zeroed.
  double floor = 1e-9;
  Init init = Init::kUniform;
  std::uint64_t seed = 0;
};

/// Throws InputError unless 0 < step < 1, floor >= 0, tolerance > 0.
void validate(const OptimizerConfig& config);

struct OptimizeResult {
  BetaDistribution beta;
  double cost = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Closed-form residual at the last iterate, before small entries are
  /// zeroed.
  double kkt_residual = 0.0;
  std::size_t floored_updates = 0;
  std::vector<std::size_t> untouched_qubits;
  /// The final beta zeroes a probability that some monomial needs.
  bool divergent = false;
};

/// Damped fixed-point iteration on the chosen cost. Non-convergence is
/// reported through `converged`, not thrown.
OptimizeResult optimize(const ObservableSum& h, const CostKind& kind,
                        const OptimizerConfig& config = {});

}  // namespace lbcs
