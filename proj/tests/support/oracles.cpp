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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unsupported/Eigen/KroneckerProduct>

namespace lbcs::oracle {

namespace {

using C = std::complex<double>;

Matrix single(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// Unitary taking the eigenbasis of the label onto the Z basis.
Matrix rotation(char c) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  if (c == 'X') return h;
  if (c == 'Y') {
    Matrix sdg(2, 2);
    sdg << 1, 0, 0, C(0, -1);
    return h * sdg;
  }
  return single('I');
}

Matrix kron_all(const std::string& label, Matrix (*factor)(char)) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : label) {
    Matrix next = Eigen::kroneckerProduct(m, factor(c)).eval();
    m = std::move(next);
  }
  return m;
}

// Outcome of qubit q (0 = leftmost) in basis index b: +1 or -1.
int outcome(std::size_t b, std::size_t q, std::size_t n) {
  return ((b >> (n - 1 - q)) & 1) ? -1 : 1;
}

// Born probabilities after rotating psi into the given full-weight basis.
std::vector<double> born(const Vector& psi, const std::string& basis) {
  const Vector rotated = kron_all(basis, rotation) * psi;
  std::vector<double> p(static_cast<std::size_t>(rotated.size()));
  for (Eigen::Index i = 0; i < rotated.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(rotated[i]);
  return p;
}

double beta_of(const BetaDistribution& beta, std::size_t q, char c) {
  const auto& row = beta.rows()[q];
  return c == 'X' ? row[0] : c == 'Y' ? row[1] : row[2];
}

}  // namespace

Matrix dense_pauli(const std::string& label) { return kron_all(label, single); }

Matrix dense_observable(const ObservableSum& h) {
  const auto dim = Eigen::Index{1} << h.num_qubits();
  Matrix m = h.identity_coefficient() * Matrix::Identity(dim, dim);
  for (const Term& t : h.terms()) m += t.coefficient * dense_pauli(t.string.to_string());
  return m;
}

Vector to_vector(const StateVector& v) {
  Vector out(static_cast<Eigen::Index>(v.dimension()));
  for (std::size_t i = 0; i < v.dimension(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

Eigenpair dense_ground(const ObservableSum& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(dense_observable(h));
  return {solver.eigenvalues()[0], solver.eigenvectors().col(0)};
}

std::complex<double> expect(const Vector& psi, const Matrix& m) { return psi.dot(m * psi); }

Moments shadow_moments(const ObservableSum& h, const Vector& psi, const BetaDistribution& beta) {
  const std::size_t n = h.num_qubits();
  const char labels[3] = {'X', 'Y', 'Z'};
  std::size_t bases = 1;
  for (std::size_t i = 0; i < n; ++i) bases *= 3;
  Moments m;
  for (std::size_t code = 0; code < bases; ++code) {
    std::string basis(n, 'Z');
    double prob = 1.0;
    std::size_t c = code;
    for (std::size_t q = 0; q < n; ++q, c /= 3) {
      basis[q] = labels[c % 3];
      prob *= beta_of(beta, q, basis[q]);
    }
    if (prob == 0.0) continue;
    const auto p = born(psi, basis);
    for (std::size_t b = 0; b < p.size(); ++b) {
      double nu = h.identity_coefficient();
      for (const Term& t : h.terms()) {
        const std::string q = t.string.to_string();
        double v = t.coefficient;
        for (std::size_t i = 0; i < n && v != 0.0; ++i) {
          if (q[i] == 'I') continue;
          v = q[i] == basis[i] ? v * outcome(b, i, n) / beta_of(beta, i, q[i]) : 0.0;
        }
        nu += v;
      }
      m.mean += prob * p[b] * nu;
      m.second += prob * p[b] * nu * nu;
    }
  }
  return m;
}

Moments l1_moments(const ObservableSum& h, const Vector& psi) {
  const std::size_t n = h.num_qubits();
  double norm = 0.0;
  for (const Term& t : h.terms()) norm += std::abs(t.coefficient);
  const auto dim = Eigen::Index{1} << n;
  Moments m;
  for (const Term& t : h.terms()) {
    const Matrix p = dense_pauli(t.string.to_string());
    const Matrix id = Matrix::Identity(dim, dim);
    const double sgn = t.coefficient > 0 ? 1.0 : -1.0;
    for (int mu : {1, -1}) {
      const double born_p = expect(psi, 0.5 * (id + double(mu) * p)).real();
      const double nu = h.identity_coefficient() + norm * sgn * mu;
      const double w = std::abs(t.coefficient) / norm * born_p;
      m.mean += w * nu;
      m.second += w * nu * nu;
    }
  }
  return m;
}

Moments grouping_moments(const ObservableSum& h, const GroupingScheme& scheme,
                         const Vector& psi) {
  const std::size_t n = h.num_qubits();
  Moments m;
  for (std::size_t k = 0; k < scheme.size(); ++k) {
    if (scheme.kappa[k] == 0.0) continue;
    const std::string basis = scheme.bases[k].to_string();
    const auto p = born(psi, basis);
    for (std::size_t b = 0; b < p.size(); ++b) {
      double sum = 0.0;
      for (const PauliString& qs : scheme.collections[k]) {
        double alpha = 0.0;
        for (const Term& t : h.terms()) {
          if (t.string == qs) alpha = t.coefficient;
        }
        const std::string q = qs.to_string();
        double v = alpha;
        for (std::size_t i = 0; i < n; ++i) {
          if (q[i] != 'I') v *= outcome(b, i, n);
        }
        sum += v;
      }
      const double nu = h.identity_coefficient() + sum / scheme.kappa[k];
      m.mean += scheme.kappa[k] * p[b] * nu;
      m.second += scheme.kappa[k] * p[b] * nu * nu;
    }
  }
  return m;
}

std::string random_label(std::size_t n, std::mt19937_64& rng, bool allow_identity) {
  std::uniform_int_distribution<int> pick(0, 3);
  for (;;) {
    std::string s(n, 'I');
    for (char& c : s) c = "IXYZ"[pick(rng)];
    if (allow_identity || s != std::string(n, 'I')) return s;
  }
}

ObservableSum random_observable(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Term> out;
  std::set<std::string> seen;
  while (out.size() < terms) {
    const std::string s = random_label(n, rng);
    if (!seen.insert(s).second) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= 4;
      if (seen.size() + 1 >= total) break;
      continue;
    }
    out.push_back({PauliString::parse(s), coef(rng)});
  }
  return ObservableSum(n, out, coef(rng));
}

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Amplitudes a(std::size_t{1} << n);
  for (auto& z : a) z = {g(rng), g(rng)};
  return StateVector::normalized(n, std::move(a));
}

BetaDistribution random_beta(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<BetaDistribution::Row> rows(n);
  for (auto& row : rows) {
    for (double& p : row) p = e(rng) + 1e-3;
  }
  return normalized_beta(std::move(rows));
}

SingleReference random_reference(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin;
  std::string bits(n, '0');
  for (char& c : bits) c = coin(rng) ? '1' : '0';
  return SingleReference::from_bits(bits);
}

MultiReference random_multireference(std::size_t n, std::size_t components,
                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
  std::normal_distribution<double> g;
  std::set<std::uint64_t> seen;
  std::vector<MultiReference::Component> comps;
  double norm = 0.0;
  while (comps.size() < std::min<std::size_t>(components, std::size_t{1} << n)) {
    const std::uint64_t b = pick(rng);
    if (!seen.insert(b).second) continue;
    comps.push_back({b, {g(rng), g(rng)}});
    norm += std::norm(comps.back().amplitude);
  }
  for (auto& c : comps) c.amplitude /= std::sqrt(norm);
  return MultiReference(n, std::move(comps));
}

}  // namespace lbcs::oracle
