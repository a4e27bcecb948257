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
#include <vector>

#include "lbcs/beta.hpp"
#include "lbcs/hamiltonian.hpp"
#include "lbcs/pauli.hpp"
#include "lbcs/reference.hpp"
#include "lbcs/rng.hpp"
#include "lbcs/state.hpp"

namespace lbcs {

/// One shot: a full-weight basis and the +/-1 outcome on every qubit.
struct MeasurementRecord {
  PauliString basis;
  std::vector<int> outcomes;

  /// Bit q set iff qubit q returned -1.
  std::uint64_t outcome_mask() const noexcept;
  /// Product of outcomes over the qubits in `mask` (1 for an empty set).
  int outcome_product(std::uint64_t mask) const noexcept;
};

struct EstimateReport {
  double mean = 0.0;
  /// Single-shot sample variance (S - 1 denominator; 0 when S = 1).
  double variance = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Draws each qubit's label independently from its beta row.
PauliString sample_basis(const BetaDistribution& beta, CounterRng& rng);

/// Cumulative Born distribution over basis indices after rotating every
/// qubit's basis onto Z.
std::vector<double> born_cumulative(const StateVector& v, const PauliString& basis);

/// Samples one outcome row for a full-weight basis from a cumulative
/// distribution produced by born_cumulative.
MeasurementRecord sample_outcome(const PauliString& basis, const std::vector<double>& cumulative,
                                 CounterRng& rng);

/// Projective measurement of every qubit in the given full-weight basis.
MeasurementRecord measure_state(const StateVector& v, const PauliString& basis, CounterRng& rng);

/// nu = sum_Q a_Q f(P, Q, beta) mu(P, supp Q), identity term included.
double single_shot_estimate(const ObservableSum& h, const MeasurementRecord& record,
                            const BetaDistribution& beta);

/// Locally-biased classical shadows; uniform_beta(n) gives the uniform
/// protocol. Shot s draws from CounterRng(seed, kShots, s), so the report
/// is identical for any thread count.
EstimateReport run_protocol(const ObservableSum& h, const StateVector& v,
                            const BetaDistribution& beta, std::uint64_t shots, std::uint64_t seed,
                            std::size_t threads = 0);

/// tr(rho H), identity coefficient included.
double observable_expectation(const ObservableSum& h, const StateVector& v);
double observable_expectation(const ObservableSum& h, const SingleReference& ref);
double observable_expectation(const ObservableSum& h, const MultiReference& ref);

/// Throws DivergentVariance if some traceless term needs a label whose
/// probability is below 1e-12.
void check_variance_finite(const ObservableSum& h, const BetaDistribution& beta);

/// Exact single-shot variance of the shadow estimator:
///   sum_{Q,R} f(Q,R,beta) a_Q a_R tr(rho QR) - tr(rho H_0)^2
/// over traceless terms only. The identity coefficient shifts every shot by
/// a constant and is dropped from both moments.
double exact_variance(const ObservableSum& h, const StateVector& v, const BetaDistribution& beta,
                      std::size_t threads = 0);
double exact_variance(const ObservableSum& h, const SingleReference& ref,
                      const BetaDistribution& beta, std::size_t threads = 0);
double exact_variance(const ObservableSum& h, const MultiReference& ref,
                      const BetaDistribution& beta, std::size_t threads = 0);

}  // namespace lbcs
