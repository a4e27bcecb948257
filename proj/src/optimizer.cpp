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

#include "lbcs/optimizer.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "lbcs/error.hpp"
#include "lbcs/pair_index.hpp"
#include "lbcs/parallel.hpp"
#include "lbcs/rng.hpp"

namespace lbcs {

namespace {

using Row = BetaDistribution::Row;

constexpr double kImagTolerance = 1e-9;

std::size_t label_slot(PauliLabel l) { return static_cast<std::size_t>(l) - 1; }

void check_sizes(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

/// Product of reciprocal probabilities over `mask`, using the labels of q.
/// A zero probability makes the product 0 and sets `divergent`.
double reciprocal_product(const PauliString& q, std::uint64_t mask, const BetaDistribution& beta,
                          bool& divergent) {
  double value = 1.0;
  for (; mask != 0; mask &= mask - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(mask));
    const double b = beta(i, q[i]);
    if (b == 0.0) {
      divergent = true;
      return 0.0;
    }
    value /= b;
  }
  return value;
}

PauliString restrict_to(const PauliString& q, std::uint64_t mask) {
  return PauliString::from_masks(q.num_qubits(), q.x_mask() & mask, q.z_mask() & mask);
}

/// Per-qubit factor when the two component bits agree.
double g_factor(PauliLabel q, PauliLabel r, double beta_q, int bit, bool& divergent) {
  double value = 0.0;
  if (q == r) {
    if (q == PauliLabel::I) {
      value = 1.0;
    } else if (beta_q == 0.0) {
      divergent = true;
    } else {
      value = 1.0 / beta_q;
    }
  }
  const bool iz = (q == PauliLabel::Z && r == PauliLabel::I) ||
                  (q == PauliLabel::I && r == PauliLabel::Z);
  if (iz) value += bit ? -1.0 : 1.0;
  return value;
}

/// Per-qubit factor when the two component bits differ.
Complex h_factor(PauliLabel q, PauliLabel r, int bit) {
  const bool x_term = (q == PauliLabel::X && r == PauliLabel::I) ||
                      (q == PauliLabel::I && r == PauliLabel::X);
  const bool y_term = (q == PauliLabel::Y && r == PauliLabel::I) ||
                      (q == PauliLabel::I && r == PauliLabel::Y);
  return Complex(x_term ? 1.0 : 0.0, y_term ? (bit ? -1.0 : 1.0) : 0.0);
}

SignomialCost merge_monomials(std::size_t n,
                              const std::unordered_map<PauliString, double>& merged) {
  std::vector<SignomialCost::Monomial> monomials;
  double constant = 0.0;
  for (const auto& [labels, weight] : merged) {
    if (labels.is_identity()) {
      constant += weight;
    } else if (weight != 0.0) {
      monomials.push_back({labels, weight});
    }
  }
  std::sort(monomials.begin(), monomials.end(),
            [](const auto& a, const auto& b) { return a.labels < b.labels; });
  return SignomialCost(n, std::move(monomials), constant);
}

BetaDistribution initial_beta(std::size_t n, const OptimizerConfig& config) {
  if (config.init == OptimizerConfig::Init::kUniform) return uniform_beta(n);
  std::vector<Row> rows(n);
  CounterRng rng(config.seed, RngStream::kOptimizerInit, 0);
  for (Row& row : rows) {
    for (double& p : row) p = -std::log(1.0 - rng.uniform());
  }
  return normalized_beta(std::move(rows));
}

}  // namespace

std::vector<InfluentialPair> influential_pairs(const ObservableSum& h) {
  const PairIndex index(h.strings());
  std::vector<InfluentialPair> out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    index.for_each_influential_partner(i, [&](std::size_t j) { out.push_back({i, j}); });
  }
  return out;
}

CostValue cost_full(const ObservableSum& h, const SingleReference& ref,
                    const BetaDistribution& beta) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  check_sizes(h.num_qubits(), beta.num_qubits());
  const PairIndex index(h.strings());
  CompensatedSum sum;
  CostValue out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const PauliString& q = h.strings()[i];
    index.for_each_influential_partner(i, [&](std::size_t j) {
      const PauliString& r = h.strings()[j];
      bool divergent = false;
      double value = h.terms()[i].coefficient * h.terms()[j].coefficient *
                     reciprocal_product(q, matched_mask(q, r), beta, divergent);
      const std::uint64_t swapped = q.z_mask() ^ r.z_mask();  // I/Z swap positions
      if (std::popcount(ref.bits() & swapped) & 1) value = -value;
      if (divergent) ++out.divergent_terms;
      sum.add(value);
    });
  }
  out.value = sum.value();
  return out;
}

CostValue cost_diag(const ObservableSum& h, const BetaDistribution& beta) {
  check_sizes(h.num_qubits(), beta.num_qubits());
  CompensatedSum sum;
  CostValue out;
  for (const Term& t : h.terms()) {
    bool divergent = false;
    sum.add(t.coefficient * t.coefficient *
            reciprocal_product(t.string, t.string.support_mask(), beta, divergent));
    if (divergent) ++out.divergent_terms;
  }
  out.value = sum.value();
  return out;
}

CostValue cost_multiref(const ObservableSum& h, const MultiReference& ref,
                        const BetaDistribution& beta) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  check_sizes(h.num_qubits(), beta.num_qubits());
  const std::size_t n = h.num_qubits();
  const auto& comps = ref.components();
  const PairIndex index(h.strings());
  Complex total{0, 0};
  CostValue out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const PauliString& q = h.strings()[i];
    // Pairs that fail to commute on some qubit get a zero g or h factor there.
    index.for_each_commuting_partner(i, [&](std::size_t j) {
      const PauliString& r = h.strings()[j];
      const double weight = h.terms()[i].coefficient * h.terms()[j].coefficient;
      const std::uint64_t flip = q.x_mask() ^ r.x_mask();
      bool divergent = false;
      for (const auto& ck : comps) {
        // h vanishes unless exactly one of Q_i, R_i is X/Y where the bits
        // differ, and g vanishes for such positions where they agree, so the
        // partner component is fixed by the flip pattern.
        const std::size_t l = ref.find(ck.bits ^ flip);
        if (l == MultiReference::npos) continue;
        const std::uint64_t bk = ck.bits;
        const std::uint64_t bl = comps[l].bits;
        Complex prod = ck.amplitude * std::conj(comps[l].amplitude) * weight;
        for (std::size_t s = 0; s < n && prod != Complex{0, 0}; ++s) {
          const int bit = static_cast<int>((bk >> s) & 1);
          if (bit == static_cast<int>((bl >> s) & 1)) {
            const double b = q[s] == PauliLabel::I ? 1.0 : beta(s, q[s]);
            prod *= g_factor(q[s], r[s], b, bit, divergent);
          } else {
            prod *= h_factor(q[s], r[s], bit);
          }
        }
        total += prod;
      }
      if (divergent) ++out.divergent_terms;
    });
  }
  if (std::abs(total.imag()) > kImagTolerance * std::max(1.0, std::abs(total.real()))) {
    throw NumericalError("multi-reference cost has imaginary part " +
                         std::to_string(total.imag()));
  }
  out.value = total.real();
  return out;
}

SignomialCost::SignomialCost(std::size_t n, std::vector<Monomial> monomials, double constant)
    : n_(n), monomials_(std::move(monomials)), constant_(constant) {
  for (const Monomial& m : monomials_) {
    check_sizes(n_, m.labels.num_qubits());
    touched_ |= m.labels.support_mask();
  }
}

SignomialCost SignomialCost::diagonal(const ObservableSum& h) {
  std::unordered_map<PauliString, double> merged;
  for (const Term& t : h.terms()) merged[t.string] += t.coefficient * t.coefficient;
  return merge_monomials(h.num_qubits(), merged);
}

SignomialCost SignomialCost::full(const ObservableSum& h, const SingleReference& ref) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  std::unordered_map<PauliString, double> merged;
  for (const InfluentialPair& p : influential_pairs(h)) {
    const PauliString& q = h.strings()[p.q];
    const PauliString& r = h.strings()[p.r];
    double w = h.terms()[p.q].coefficient * h.terms()[p.r].coefficient;
    if (std::popcount(ref.bits() & (q.z_mask() ^ r.z_mask())) & 1) w = -w;
    merged[restrict_to(q, matched_mask(q, r))] += w;
  }
  return merge_monomials(h.num_qubits(), merged);
}

SignomialCost SignomialCost::multireference(const ObservableSum& h, const MultiReference& ref) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  const PairIndex index(h.strings());
  std::unordered_map<PauliString, double> merged;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const PauliString& q = h.strings()[i];
    index.for_each_commuting_partner(i, [&](std::size_t j) {
      const PauliString& r = h.strings()[j];
      const Complex trace = multireference_density_expectation(ref, q, r);
      if (trace == Complex{0, 0}) return;
      merged[restrict_to(q, matched_mask(q, r))] +=
          h.terms()[i].coefficient * h.terms()[j].coefficient * trace.real();
    });
  }
  return merge_monomials(h.num_qubits(), merged);
}

std::vector<std::size_t> SignomialCost::untouched_qubits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (((touched_ >> i) & 1) == 0) out.push_back(i);
  }
  return out;
}

CostValue SignomialCost::evaluate(const BetaDistribution& beta) const {
  check_sizes(n_, beta.num_qubits());
  CompensatedSum sum;
  sum.add(constant_);
  CostValue out;
  for (const Monomial& m : monomials_) {
    bool divergent = false;
    sum.add(m.weight * reciprocal_product(m.labels, m.labels.support_mask(), beta, divergent));
    if (divergent) ++out.divergent_terms;
  }
  out.value = sum.value();
  return out;
}

SignomialCost::ClosedForm SignomialCost::closed_form(const BetaDistribution& beta,
                                                     double floor) const {
  check_sizes(n_, beta.num_qubits());
  std::vector<std::array<double, 3>> numerator(n_, {0.0, 0.0, 0.0});
  std::vector<std::array<bool, 3>> used(n_, {false, false, false});
  for (const Monomial& m : monomials_) {
    bool divergent = false;
    const std::uint64_t mask = m.labels.support_mask();
    const double value = m.weight * reciprocal_product(m.labels, mask, beta, divergent);
    for (std::uint64_t s = mask; s != 0; s &= s - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(s));
      const std::size_t slot = label_slot(m.labels[i]);
      numerator[i][slot] += value;
      used[i][slot] = true;
    }
  }

  ClosedForm out;
  std::vector<Row> rows = beta.rows();
  for (std::size_t i = 0; i < n_; ++i) {
    if (((touched_ >> i) & 1) == 0) continue;
    const auto& num = numerator[i];
    const double denom = num[0] + num[1] + num[2];
    if (!(denom > 0.0)) {
      ++out.floored;
      continue;
    }
    Row row{};
    for (std::size_t l = 0; l < 3; ++l) {
      if (num[l] < 0.0) ++out.floored;
      row[l] = std::max(num[l] / denom, floor);
    }
    const double total = row[0] + row[1] + row[2];
    for (std::size_t l = 0; l < 3; ++l) {
      row[l] /= total;
      if (used[i][l]) out.residual = std::max(out.residual, std::abs(beta.row(i)[l] - row[l]));
    }
    rows[i] = row;
  }
  out.beta = normalized_beta(std::move(rows));
  return out;
}

BetaDistribution lagrange_update_diag(const ObservableSum& h, const BetaDistribution& beta,
                                      double floor) {
  return SignomialCost::diagonal(h).closed_form(beta, floor).beta;
}

BetaDistribution lagrange_update_full(const ObservableSum& h, const SingleReference& ref,
                                      const BetaDistribution& beta, double floor) {
  return SignomialCost::full(h, ref).closed_form(beta, floor).beta;
}

void validate(const OptimizerConfig& config) {
  if (!(config.step > 0.0 && config.step < 1.0)) throw InputError("step must lie in (0, 1)");
  if (!(config.floor >= 0.0)) throw InputError("floor must be >= 0");
  if (!(config.tolerance > 0.0)) throw InputError("tolerance must be positive");
}

OptimizeResult optimize(const ObservableSum& h, const CostKind& kind,
                        const OptimizerConfig& config) {
  validate(config);
  const SignomialCost cost = std::visit(
      [&](const auto& k) -> SignomialCost {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, DiagonalCost>) {
          return SignomialCost::diagonal(h);
        } else if constexpr (std::is_same_v<K, FullCost>) {
          return SignomialCost::full(h, k.reference);
        } else {
          return SignomialCost::multireference(h, k.reference);
        }
      },
      kind);

  const std::size_t n = h.num_qubits();
  OptimizeResult result;
  result.untouched_qubits = cost.untouched_qubits();
  BetaDistribution beta = initial_beta(n, config);

  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    const SignomialCost::ClosedForm closed = cost.closed_form(beta, config.floor);
    result.floored_updates += closed.floored;
    std::vector<Row> next(n);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < 3; ++l) {
        next[i][l] = (1.0 - config.step) * beta.row(i)[l] + config.step * closed.beta.row(i)[l];
        change = std::max(change, std::abs(next[i][l] - beta.row(i)[l]));
      }
    }
    beta = normalized_beta(std::move(next));
    result.iterations = t + 1;
    if (change < config.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.kkt_residual = cost.closed_form(beta, config.floor).residual;

  std::vector<Row> rows = beta.rows();
  for (Row& row : rows) {
    for (double& p : row) {
      if (p < 10.0 * config.floor) p = 0.0;
    }
  }
  result.beta = normalized_beta(std::move(rows));
  const CostValue final_cost = cost.evaluate(result.beta);
  result.cost = final_cost.value;
  result.divergent = final_cost.divergent();
  return result;
}

}  // namespace lbcs
