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

#include "lbcs/shadows.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "lbcs/detail/shots.hpp"
#include "lbcs/error.hpp"
#include "lbcs/pair_index.hpp"
#include "lbcs/parallel.hpp"

namespace lbcs {

namespace {

constexpr double kDivergenceFloor = 1e-12;
constexpr std::size_t kBornCacheEntries = std::size_t{1} << 22;
constexpr std::size_t kPairChunk = 64;

int parity(std::uint64_t v) noexcept { return (std::popcount(v) & 1) ? -1 : 1; }

void check_sizes(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

/// a_Q * prod_{i in supp Q} 1/beta_i(Q_i), the shot weight of Q whenever it
/// agrees with the sampled basis; 0 if a needed probability vanishes.
std::vector<double> agreeing_weights(const ObservableSum& h, const BetaDistribution& beta) {
  std::vector<double> w;
  w.reserve(h.size());
  for (const Term& t : h.terms()) {
    double value = t.coefficient;
    for (std::uint64_t m = t.string.support_mask(); m != 0; m &= m - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(m));
      const double b = beta(i, t.string[i]);
      if (b == 0.0) {
        value = 0.0;
        break;
      }
      value /= b;
    }
    w.push_back(value);
  }
  return w;
}

/// Second moment over traceless pairs, given tr(rho S) for products S = QR
/// of qubit-wise commuting pairs (such products carry no phase).
template <class TraceOfProduct>
double pair_second_moment(const ObservableSum& h, const BetaDistribution& beta,
                          std::size_t threads, TraceOfProduct&& trace) {
  const auto& strings = h.strings();
  const PairIndex index(strings);
  const std::size_t chunks = (h.size() + kPairChunk - 1) / kPairChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    CompensatedSum sum;
    const std::size_t end = std::min(h.size(), (c + 1) * kPairChunk);
    for (std::size_t i = c * kPairChunk; i < end; ++i) {
      const PauliString& q = strings[i];
      const double aq = h.terms()[i].coefficient;
      index.for_each_commuting_partner(i, [&](std::size_t j) {
        if (j < i) return;
        const PauliString& r = strings[j];
        double f = 1.0;
        for (std::uint64_t m = matched_mask(q, r); m != 0; m &= m - 1) {
          const auto k = static_cast<std::size_t>(std::countr_zero(m));
          f /= beta(k, q[k]);
        }
        const double ar = h.terms()[j].coefficient;
        const double value = f * aq * ar;
        if (j == i) {
          sum.add(value);
        } else {
          const PauliString s = PauliString::from_masks(q.num_qubits(), q.x_mask() ^ r.x_mask(),
                                                        q.z_mask() ^ r.z_mask());
          sum.add(2.0 * value * trace(s));
        }
      });
    }
    partial[c] = sum.value();
  });
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

template <class Trace>
double traceless_mean(const ObservableSum& h, Trace&& trace) {
  CompensatedSum sum;
  for (const Term& t : h.terms()) sum.add(t.coefficient * trace(t.string));
  return sum.value();
}

}  // namespace

std::uint64_t MeasurementRecord::outcome_mask() const noexcept {
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < outcomes.size(); ++q) {
    if (outcomes[q] < 0) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

int MeasurementRecord::outcome_product(std::uint64_t mask) const noexcept {
  return parity(outcome_mask() & mask);
}

PauliString sample_basis(const BetaDistribution& beta, CounterRng& rng) {
  PauliString p(beta.num_qubits());
  for (std::size_t q = 0; q < beta.num_qubits(); ++q) {
    const auto& row = beta.row(q);
    const double u = rng.uniform();
    PauliLabel label;
    if (u < row[0]) {
      label = PauliLabel::X;
    } else if (u < row[0] + row[1] || row[2] == 0.0) {
      label = row[1] > 0.0 ? PauliLabel::Y : PauliLabel::X;
    } else {
      label = PauliLabel::Z;
    }
    p.set(q, label);
  }
  return p;
}

std::vector<double> born_cumulative(const StateVector& v, const PauliString& basis) {
  check_sizes(v.num_qubits(), basis.num_qubits());
  if (!basis.is_full_weight()) {
    throw InputError("measurement basis " + basis.to_string() + " is not full weight");
  }
  const std::size_t n = v.num_qubits();
  Amplitudes a = v.amplitudes();
  const double s = std::numbers::sqrt2 / 2.0;
  for (std::size_t q = 0; q < n; ++q) {
    const PauliLabel label = basis[q];
    if (label == PauliLabel::Z) continue;
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t b = 0; b < a.size(); ++b) {
      if (b & bit) continue;
      const Complex a0 = a[b];
      // Y basis: S^dagger first, then Hadamard.
      const Complex a1 = label == PauliLabel::Y ? a[b | bit] * Complex(0, -1) : a[b | bit];
      a[b] = s * (a0 + a1);
      a[b | bit] = s * (a0 - a1);
    }
  }
  std::vector<double> cumulative(a.size());
  double total = 0.0;
  for (std::size_t b = 0; b < a.size(); ++b) {
    total += std::norm(a[b]);
    cumulative[b] = total;
  }
  return cumulative;
}

MeasurementRecord sample_outcome(const PauliString& basis, const std::vector<double>& cumulative,
                                 CounterRng& rng) {
  const std::size_t n = basis.num_qubits();
  const double u = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  const auto index = static_cast<std::size_t>(it - cumulative.begin());
  MeasurementRecord record{basis, std::vector<int>(n)};
  for (std::size_t q = 0; q < n; ++q) {
    record.outcomes[q] = ((index >> (n - 1 - q)) & 1) ? -1 : 1;
  }
  return record;
}

MeasurementRecord measure_state(const StateVector& v, const PauliString& basis, CounterRng& rng) {
  return sample_outcome(basis, born_cumulative(v, basis), rng);
}

double single_shot_estimate(const ObservableSum& h, const MeasurementRecord& record,
                            const BetaDistribution& beta) {
  check_sizes(h.num_qubits(), record.basis.num_qubits());
  check_sizes(h.num_qubits(), beta.num_qubits());
  check_sizes(h.num_qubits(), record.outcomes.size());
  if (!record.basis.is_full_weight()) {
    throw InputError("measurement basis " + record.basis.to_string() + " is not full weight");
  }
  const std::uint64_t outcomes = record.outcome_mask();
  double nu = h.identity_coefficient();
  for (const Term& t : h.terms()) {
    const double f = f_factor(record.basis, t.string, beta);
    if (f != 0.0) nu += t.coefficient * f * parity(outcomes & t.string.support_mask());
  }
  return nu;
}

EstimateReport run_protocol(const ObservableSum& h, const StateVector& v,
                            const BetaDistribution& beta, std::uint64_t shots, std::uint64_t seed,
                            std::size_t threads) {
  check_sizes(h.num_qubits(), v.num_qubits());
  check_sizes(h.num_qubits(), beta.num_qubits());
  const std::vector<double> weights = agreeing_weights(h, beta);
  const auto& strings = h.strings();
  const double identity = h.identity_coefficient();
  using Cache = std::unordered_map<PauliString, std::vector<double>>;
  return detail::run_shots(
      shots, seed, threads, [] { return Cache{}; },
      [&](Cache& cache, CounterRng& rng) {
        const PauliString basis = sample_basis(beta, rng);
        auto it = cache.find(basis);
        if (it == cache.end()) {
          if ((cache.size() + 1) * v.dimension() > kBornCacheEntries) cache.clear();
          it = cache.emplace(basis, born_cumulative(v, basis)).first;
        }
        const MeasurementRecord record = sample_outcome(basis, it->second, rng);
        const std::uint64_t outcomes = record.outcome_mask();
        double nu = identity;
        for (std::size_t t = 0; t < strings.size(); ++t) {
          const PauliString& q = strings[t];
          const std::uint64_t differ =
              (q.x_mask() ^ basis.x_mask()) | (q.z_mask() ^ basis.z_mask());
          if ((differ & q.support_mask()) != 0) continue;
          nu += weights[t] * parity(outcomes & q.support_mask());
        }
        return nu;
      });
}

double observable_expectation(const ObservableSum& h, const StateVector& v) {
  check_sizes(h.num_qubits(), v.num_qubits());
  return h.identity_coefficient() +
         traceless_mean(h, [&](const PauliString& q) { return expectation(v, q); });
}

double observable_expectation(const ObservableSum& h, const SingleReference& ref) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  const PauliString id(h.num_qubits());
  return h.identity_coefficient() + traceless_mean(h, [&](const PauliString& q) {
           return reference_expectation(ref, q, id);
         });
}

double observable_expectation(const ObservableSum& h, const MultiReference& ref) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  const PauliString id(h.num_qubits());
  return h.identity_coefficient() + traceless_mean(h, [&](const PauliString& q) {
           return multireference_density_expectation(ref, q, id).real();
         });
}

void check_variance_finite(const ObservableSum& h, const BetaDistribution& beta) {
  check_sizes(h.num_qubits(), beta.num_qubits());
  for (const Term& t : h.terms()) {
    for (std::uint64_t m = t.string.support_mask(); m != 0; m &= m - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(m));
      if (beta(i, t.string[i]) < kDivergenceFloor) {
        throw DivergentVariance(i, to_char(t.string[i]));
      }
    }
  }
}

double exact_variance(const ObservableSum& h, const StateVector& v, const BetaDistribution& beta,
                      std::size_t threads) {
  check_sizes(h.num_qubits(), v.num_qubits());
  check_variance_finite(h, beta);

  // Evaluate each distinct product string once.
  std::unordered_map<PauliString, double> products;
  {
    const auto& strings = h.strings();
    const PairIndex index(strings);
    for (std::size_t i = 0; i < strings.size(); ++i) {
      index.for_each_commuting_partner(i, [&](std::size_t j) {
        if (j <= i) return;
        const PauliString& q = strings[i];
        const PauliString& r = strings[j];
        products.try_emplace(PauliString::from_masks(q.num_qubits(), q.x_mask() ^ r.x_mask(),
                                                     q.z_mask() ^ r.z_mask()),
                             0.0);
      });
    }
    for (const PauliString& q : strings) products.try_emplace(q, 0.0);
  }
  std::vector<std::unordered_map<PauliString, double>::iterator> slots;
  slots.reserve(products.size());
  for (auto it = products.begin(); it != products.end(); ++it) slots.push_back(it);
  parallel_chunks(slots.size(), threads, [&](std::size_t k) {
    slots[k]->second = expectation(v, slots[k]->first);
  });
  auto trace = [&](const PauliString& s) { return products.at(s); };

  const double mean = traceless_mean(h, trace);
  return pair_second_moment(h, beta, threads, trace) - mean * mean;
}

double exact_variance(const ObservableSum& h, const SingleReference& ref,
                      const BetaDistribution& beta, std::size_t threads) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  check_variance_finite(h, beta);
  const PauliString id(h.num_qubits());
  auto trace = [&](const PauliString& s) { return reference_expectation(ref, s, id); };
  const double mean = traceless_mean(h, trace);
  return pair_second_moment(h, beta, threads, trace) - mean * mean;
}

double exact_variance(const ObservableSum& h, const MultiReference& ref,
                      const BetaDistribution& beta, std::size_t threads) {
  check_sizes(h.num_qubits(), ref.num_qubits());
  check_variance_finite(h, beta);
  const PauliString id(h.num_qubits());
  auto trace = [&](const PauliString& s) {
    return multireference_density_expectation(ref, s, id).real();
  };
  const double mean = traceless_mean(h, trace);
  return pair_second_moment(h, beta, threads, trace) - mean * mean;
}

}  // namespace lbcs
