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

#include "lbcs/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "lbcs/detail/shots.hpp"
#include "lbcs/error.hpp"
#include "lbcs/pair_index.hpp"
#include "lbcs/parallel.hpp"

namespace lbcs {

namespace {

constexpr double kKappaTolerance = 1e-12;
constexpr std::size_t kBornCacheEntries = std::size_t{1} << 22;

int parity(std::uint64_t v) noexcept { return (std::popcount(v) & 1) ? -1 : 1; }

void check_sizes(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

std::vector<double> cumulative_of(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  std::partial_sum(p.begin(), p.end(), c.begin());
  return c;
}

/// Index drawn from a cumulative table, skipping zero-probability entries.
std::size_t draw_index(const std::vector<double>& cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u * cumulative.back());
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::unordered_map<PauliString, double> coefficient_map(const ObservableSum& h) {
  std::unordered_map<PauliString, double> out;
  for (const Term& t : h.terms()) out.emplace(t.string, t.coefficient);
  return out;
}

/// Memoized tr(rho S) for product strings.
class ProductExpectations {
 public:
  explicit ProductExpectations(const StateVector& v) : v_(v) {}

  double operator()(const PauliString& q, const PauliString& r) {
    const PhasedPauli qr = product(q, r);
    auto it = cache_.find(qr.string);
    if (it == cache_.end()) it = cache_.emplace(qr.string, expectation(v_, qr.string)).first;
    static constexpr double kRe[4] = {1, 0, -1, 0};
    return kRe[qr.phase] * it->second;
  }

 private:
  const StateVector& v_;
  std::unordered_map<PauliString, double> cache_;
};

}  // namespace

EstimateReport l1_protocol(const ObservableSum& h, const StateVector& v, std::uint64_t shots,
                           std::uint64_t seed, std::size_t threads) {
  check_sizes(h.num_qubits(), v.num_qubits());
  const std::vector<double> cumulative = cumulative_of(gamma_distribution(h));
  const double norm = l1_norm(h);
  // mu(P, supp P) is the +/-1 eigenvalue of P, so its Born distribution is
  // Pr(+1) = (1 + <P>) / 2.
  std::vector<double> plus_probability;
  std::vector<double> signed_norm;
  for (const Term& t : h.terms()) {
    plus_probability.push_back(0.5 * (1.0 + expectation(v, t.string)));
    signed_norm.push_back(t.coefficient > 0 ? norm : -norm);
  }
  const double identity = h.identity_coefficient();
  return detail::run_shots(
      shots, seed, threads, [] { return 0; },
      [&](int, CounterRng& rng) {
        const std::size_t t = draw_index(cumulative, rng.uniform());
        const int mu = rng.uniform() < plus_probability[t] ? 1 : -1;
        return identity + signed_norm[t] * mu;
      });
}

double l1_exact_variance(const ObservableSum& h, const StateVector& v) {
  check_sizes(h.num_qubits(), v.num_qubits());
  const double norm = l1_norm(h);
  CompensatedSum mean;
  for (const Term& t : h.terms()) mean.add(t.coefficient * expectation(v, t.string));
  return norm * norm - mean.value() * mean.value();
}

std::size_t TermGraph::max_degree() const noexcept {
  std::size_t d = 0;
  for (const auto& adj : adjacency) d = std::max(d, adj.size());
  return d;
}

std::size_t TermGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& adj : adjacency) twice += adj.size();
  return twice / 2;
}

TermGraph build_term_graph(const ObservableSum& h) {
  TermGraph g;
  g.vertices = h.strings();
  const std::size_t n = g.vertices.size();
  g.adjacency.resize(n);
  const PairIndex index(g.vertices);
  std::vector<char> commutes(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(commutes.begin(), commutes.end(), 0);
    index.for_each_commuting_partner(i, [&](std::size_t j) { commutes[j] = 1; });
    for (std::size_t j = 0; j < n; ++j) {
      if (!commutes[j]) g.adjacency[i].push_back(j);
    }
  }
  return g;
}

std::vector<std::vector<std::size_t>> ldf_coloring(const TermGraph& graph) {
  const std::size_t n = graph.vertices.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t da = graph.adjacency[a].size();
    const std::size_t db = graph.adjacency[b].size();
    if (da != db) return da > db;
    return graph.vertices[a] < graph.vertices[b];
  });

  constexpr std::size_t kUncolored = static_cast<std::size_t>(-1);
  std::vector<std::size_t> color(n, kUncolored);
  std::vector<std::size_t> taken_by(n + 1, kUncolored);  // color -> last vertex that saw it
  std::size_t num_colors = 0;
  for (std::size_t v : order) {
    for (std::size_t u : graph.adjacency[v]) {
      if (color[u] != kUncolored) taken_by[color[u]] = v;
    }
    std::size_t c = 0;
    while (taken_by[c] == v) ++c;
    color[v] = c;
    num_colors = std::max(num_colors, c + 1);
  }

  std::vector<std::vector<std::size_t>> classes(num_colors);
  for (std::size_t v = 0; v < n; ++v) classes[color[v]].push_back(v);
  for (auto& members : classes) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return graph.vertices[a] < graph.vertices[b];
    });
  }
  return classes;
}

PauliString representative_basis(std::span<const PauliString> collection) {
  if (collection.empty()) throw InputError("cannot pick a basis for an empty collection");
  const std::size_t n = collection.front().num_qubits();
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint64_t seen = 0;
  for (const PauliString& q : collection) {
    check_sizes(n, q.num_qubits());
    const std::uint64_t shared = seen & q.support_mask();
    if (((x ^ q.x_mask()) | (z ^ q.z_mask())) & shared) {
      throw InputError("collection is not qubit-wise commuting at " + q.to_string());
    }
    x |= q.x_mask();
    z |= q.z_mask();
    seen |= q.support_mask();
  }
  const std::uint64_t all = n == 64 ? ~0ull : ((std::uint64_t{1} << n) - 1);
  z |= all & ~seen;
  return PauliString::from_masks(n, x, z);
}

std::vector<double> kappa_weights(const ObservableSum& h,
                                  const std::vector<std::vector<PauliString>>& collections) {
  const auto coefficients = coefficient_map(h);
  const double norm = l1_norm(h);
  if (!(norm > 0.0)) throw InputError("observable has no traceless terms");
  std::vector<double> kappa;
  kappa.reserve(collections.size());
  for (const auto& c : collections) {
    double mass = 0.0;
    for (const PauliString& q : c) {
      const auto it = coefficients.find(q);
      if (it == coefficients.end()) throw InputError(q.to_string() + " is not a term of H");
      mass += std::abs(it->second);
    }
    kappa.push_back(mass / norm);
  }
  return kappa;
}

GroupingScheme ldf_grouping(const ObservableSum& h) {
  const TermGraph graph = build_term_graph(h);
  GroupingScheme scheme;
  for (const auto& members : ldf_coloring(graph)) {
    std::vector<PauliString> collection;
    for (std::size_t v : members) collection.push_back(graph.vertices[v]);
    scheme.bases.push_back(representative_basis(collection));
    scheme.collections.push_back(std::move(collection));
  }
  scheme.kappa = kappa_weights(h, scheme.collections);
  return scheme;
}

void validate_scheme(const ObservableSum& h, const GroupingScheme& scheme) {
  if (scheme.bases.size() != scheme.size() || scheme.kappa.size() != scheme.size()) {
    throw InputError("grouping scheme has mismatched collection/basis/kappa counts");
  }
  auto remaining = coefficient_map(h);
  double kappa_sum = 0.0;
  for (std::size_t k = 0; k < scheme.size(); ++k) {
    const PauliString& basis = scheme.bases[k];
    check_sizes(h.num_qubits(), basis.num_qubits());
    const double kappa = scheme.kappa[k];
    if (!std::isfinite(kappa) || kappa < 0.0) throw InputError("kappa entries must be >= 0");
    if (kappa == 0.0 && !scheme.collections[k].empty()) {
      throw InputError("collection " + std::to_string(k + 1) + " has zero kappa");
    }
    kappa_sum += kappa;
    for (const PauliString& q : scheme.collections[k]) {
      check_sizes(h.num_qubits(), q.num_qubits());
      if (remaining.erase(q) != 1) {
        throw InputError(q.to_string() + " is not a term of H or appears twice");
      }
      if (!agrees_with_basis(q, basis)) {
        throw InputError(q.to_string() + " does not agree with basis " + basis.to_string());
      }
    }
  }
  if (!remaining.empty()) {
    throw InputError("term " + remaining.begin()->first.to_string() + " is in no collection");
  }
  if (std::abs(kappa_sum - 1.0) > kKappaTolerance) throw InputError("kappa does not sum to 1");
}

EstimateReport grouping_protocol(const ObservableSum& h, const GroupingScheme& scheme,
                                 const StateVector& v, std::uint64_t shots, std::uint64_t seed,
                                 std::size_t threads) {
  check_sizes(h.num_qubits(), v.num_qubits());
  validate_scheme(h, scheme);
  const auto coefficients = coefficient_map(h);
  struct Member {
    std::uint64_t support;
    double scaled_coefficient;  // a_Q / kappa_k
  };
  std::vector<std::vector<Member>> members(scheme.size());
  for (std::size_t k = 0; k < scheme.size(); ++k) {
    for (const PauliString& q : scheme.collections[k]) {
      members[k].push_back({q.support_mask(), coefficients.at(q) / scheme.kappa[k]});
    }
  }
  const std::vector<double> cumulative = cumulative_of(scheme.kappa);
  const double identity = h.identity_coefficient();
  using Cache = std::unordered_map<std::size_t, std::vector<double>>;
  return detail::run_shots(
      shots, seed, threads, [] { return Cache{}; },
      [&](Cache& cache, CounterRng& rng) {
        const std::size_t k = draw_index(cumulative, rng.uniform());
        auto it = cache.find(k);
        if (it == cache.end()) {
          if ((cache.size() + 1) * v.dimension() > kBornCacheEntries) cache.clear();
          it = cache.emplace(k, born_cumulative(v, scheme.bases[k])).first;
        }
        const std::uint64_t outcomes =
            sample_outcome(scheme.bases[k], it->second, rng).outcome_mask();
        double nu = identity;
        for (const Member& m : members[k]) nu += m.scaled_coefficient * parity(outcomes & m.support);
        return nu;
      });
}

GroupingVariance grouping_exact_variance(const ObservableSum& h, const GroupingScheme& scheme,
                                         const StateVector& v) {
  check_sizes(h.num_qubits(), v.num_qubits());
  validate_scheme(h, scheme);
  const auto coefficients = coefficient_map(h);
  ProductExpectations trace(v);
  const PauliString id(h.num_qubits());

  CompensatedSum second;
  CompensatedSum covariance;
  CompensatedSum mean;
  for (std::size_t k = 0; k < scheme.size(); ++k) {
    const auto& c = scheme.collections[k];
    if (c.empty()) continue;
    const double inv_kappa = 1.0 / scheme.kappa[k];
    for (const PauliString& q : c) {
      const double aq = coefficients.at(q);
      const double tq = trace(q, id);
      mean.add(aq * tq);
      for (const PauliString& r : c) {
        const double ar = coefficients.at(r);
        const double tqr = trace(q, r);
        second.add(inv_kappa * aq * ar * tqr);
        covariance.add(inv_kappa * aq * ar * (tqr - tq * trace(r, id)));
      }
    }
  }
  GroupingVariance out;
  out.variance = second.value() - mean.value() * mean.value();
  out.covariance_form = covariance.value();
  return out;
}

}  // namespace lbcs
