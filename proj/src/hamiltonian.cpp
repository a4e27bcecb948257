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

#include "lbcs/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "lbcs/error.hpp"

namespace lbcs {

namespace {

bool canonical_less(const Term& a, const Term& b) {
  const double ma = std::abs(a.coefficient);
  const double mb = std::abs(b.coefficient);
  if (ma != mb) return ma > mb;
  return a.string < b.string;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ObservableSum::ObservableSum(std::size_t n, const std::vector<Term>& terms,
                             double identity_coefficient)
    : n_(n), identity_(identity_coefficient) {
  if (n == 0 || n > kMaxQubits) {
    throw InputError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (!std::isfinite(identity_coefficient)) throw InputError("non-finite identity coefficient");
  std::map<PauliString, double> merged;
  for (const Term& t : terms) {
    if (t.string.num_qubits() != n) throw DimensionMismatch(n, t.string.num_qubits());
    if (!std::isfinite(t.coefficient)) {
      throw InputError("non-finite coefficient for " + t.string.to_string());
    }
    if (t.string.is_identity()) {
      identity_ += t.coefficient;
    } else {
      merged[t.string] += t.coefficient;
    }
  }
  for (const auto& [s, c] : merged) {
    if (c != 0.0) terms_.push_back(Term{s, c});
  }
  std::sort(terms_.begin(), terms_.end(), canonical_less);
  strings_.reserve(terms_.size());
  for (const Term& t : terms_) strings_.push_back(t.string);
}

ObservableSum ObservableSum::traceless() const { return ObservableSum(n_, terms_, 0.0); }

ObservableSum parse_observable(std::string_view text, std::optional<std::size_t> qubits) {
  std::vector<Term> terms;
  std::optional<std::size_t> n = qubits;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError(line_no, "expected `<coefficient> <pauli-string>`");
    }
    const std::string_view coeff_text = line.substr(0, split);
    const std::string_view pauli_text = trim(line.substr(split));
    if (pauli_text.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(line_no, "unexpected extra field");
    }

    double coefficient = 0.0;
    const char* begin = coeff_text.data();
    const char* end = begin + coeff_text.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, coefficient);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(line_no, "invalid coefficient '" + std::string(coeff_text) + "'");
    }
    if (!std::isfinite(coefficient)) throw ParseError(line_no, "non-finite coefficient");

    std::string labels(pauli_text);
    if (!n) n = labels.size();
    if (labels.size() > *n || (!qubits && labels.size() != *n)) {
      throw ParseError(line_no, fmt::format("Pauli string has {} qubits, expected {}",
                                            labels.size(), *n));
    }
    labels.resize(*n, 'I');
    try {
      terms.push_back(Term{PauliString::parse(labels), coefficient});
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!n) throw InputError("observable has no terms");
  return ObservableSum(*n, terms);
}

ObservableSum read_observable_file(const std::string& path, std::optional<std::size_t> qubits) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_observable(buffer.str(), qubits);
}

std::string serialize_observable(const ObservableSum& h) {
  std::vector<Term> all = h.terms();
  if (h.identity_coefficient() != 0.0) {
    all.push_back(Term{PauliString(h.num_qubits()), h.identity_coefficient()});
    std::sort(all.begin(), all.end(), canonical_less);
  }
  std::string out;
  for (const Term& t : all) {
    out += fmt::format("{:.17g} {}\n", t.coefficient, t.string.to_string());
  }
  return out;
}

double l1_norm(const ObservableSum& h) {
  double sum = 0.0;
  for (const Term& t : h.terms()) sum += std::abs(t.coefficient);
  return sum;
}

std::vector<double> gamma_distribution(const ObservableSum& h) {
  const double norm = l1_norm(h);
  if (!(norm > 0.0)) throw InputError("observable has no traceless terms");
  std::vector<double> gamma;
  gamma.reserve(h.size());
  double total = 0.0;
  for (const Term& t : h.terms()) {
    gamma.push_back(std::abs(t.coefficient) / norm);
    total += gamma.back();
  }
  for (double& g : gamma) g /= total;
  return gamma;
}

}  // namespace lbcs
