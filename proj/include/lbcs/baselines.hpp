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
#include <span>
#include <vector>

#include "lbcs/hamiltonian.hpp"
#include "lbcs/pauli.hpp"
#include "lbcs/shadows.hpp"
#include "lbcs/state.hpp"

namespace lbcs {

// ---------------------------------------------------------------------------
// l1 sampling

/// Per shot: draw a term P with probability |a_P| / ||a||_1, measure its
/// support, return a_I + ||a||_1 sgn(a_P) mu(P, supp P).
EstimateReport l1_protocol(const ObservableSum& h, const StateVector& v, std::uint64_t shots,
                           std::uint64_t seed, std::size_t threads = 0);

/// ||a||_1^2 - tr(rho H_0)^2.
double l1_exact_variance(const ObservableSum& h, const StateVector& v);

// ---------------------------------------------------------------------------
// Qubit-wise commuting grouping

/// Conflict graph over traceless terms: an edge joins two terms that fail
/// to commute on some qubit. Vertex order follows ObservableSum::terms().
struct TermGraph {
  std::vector<PauliString> vertices;
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t max_degree() const noexcept;
  std::size_t edge_count() const noexcept;
};

TermGraph build_term_graph(const ObservableSum& h);

/// Largest-degree-first greedy coloring. Vertices are visited by decreasing
/// degree (ties by PauliString order) and take the smallest free color.
/// Returns color classes as vertex indices, each sorted by PauliString.
std::vector<std::vector<std::size_t>> ldf_coloring(const TermGraph& graph);

/// Full-weight basis measuring every member: the label members share on
/// each qubit, or Z where none acts. Throws InputError on conflicting labels
/// or an empty collection.
PauliString representative_basis(std::span<const PauliString> collection);

/// kappa_k = ||a restricted to C_k||_1 / ||a||_1.
std::vector<double> kappa_weights(const ObservableSum& h,
                                  const std::vector<std::vector<PauliString>>& collections);

struct GroupingScheme {
  std::vector<std::vector<PauliString>> collections;
  std::vector<PauliString> bases;
  std::vector<double> kappa;

  std::size_t size() const noexcept { return collections.size(); }
};

/// Graph, LDF coloring, representative bases and l1 kappa in one call.
GroupingScheme ldf_grouping(const ObservableSum& h);

/// Throws InputError unless the scheme partitions the traceless terms into
/// qubit-wise commuting collections that agree with their bases, and kappa
/// is a distribution that is positive on every non-empty collection.
void validate_scheme(const ObservableSum& h, const GroupingScheme& scheme);

/// Per shot: draw k from kappa, measure all qubits in basis P_k, return
/// a_I + (1/kappa_k) sum_{Q in C_k} a_Q mu(P_k, supp Q).
EstimateReport grouping_protocol(const ObservableSum& h, const GroupingScheme& scheme,
                                 const StateVector& v, std::uint64_t shots, std::uint64_t seed,
                                 std::size_t threads = 0);

struct GroupingVariance {
  /// sum_k kappa_k^{-1} <H_k^2> - <H_0>^2: the single-shot variance of
  /// grouping_protocol.
  double variance = 0.0;
  /// sum_k kappa_k^{-1} (<H_k^2> - <H_k>^2), the covariance form.
  double covariance_form = 0.0;
};

GroupingVariance grouping_exact_variance(const ObservableSum& h, const GroupingScheme& scheme,
                                         const StateVector& v);

}  // namespace lbcs
