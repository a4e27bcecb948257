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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbcs/pauli.hpp"

namespace lbcs {

struct Term {
  PauliString string;
  double coefficient = 0.0;
};

/// Pauli-sum observable H = a_I * I + sum_Q a_Q Q.
///
/// Terms are merged, zero coefficients dropped, and the all-identity string
/// kept apart in identity_coefficient(). terms() is in canonical order:
/// descending |a_Q|, ties broken by PauliString order.
class ObservableSum {
 public:
  ObservableSum() = default;
  ObservableSum(std::size_t n, const std::vector<Term>& terms, double identity_coefficient = 0.0);

  std::size_t num_qubits() const noexcept { return n_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// Strings of terms(), same order.
  const std::vector<PauliString>& strings() const noexcept { return strings_; }
  double identity_coefficient() const noexcept { return identity_; }
  /// Number of traceless terms.
  std::size_t size() const noexcept { return terms_.size(); }

  /// Traceless part: same terms, identity coefficient 0.
  ObservableSum traceless() const;

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
  std::vector<PauliString> strings_;
  double identity_ = 0.0;
};

/// Parses the text format: one `<coefficient> <pauli-string>` per line, `#`
/// comments, blank lines ignored. The qubit count comes from the first term
/// unless `qubits` is given, in which case shorter strings are right-padded
/// with I. Throws ParseError (with line number) or InputError.
ObservableSum parse_observable(std::string_view text,
                               std::optional<std::size_t> qubits = std::nullopt);
ObservableSum read_observable_file(const std::string& path,
                                   std::optional<std::size_t> qubits = std::nullopt);

/// Canonical text form, coefficients at 17 significant digits. The identity
/// term, if non-zero, is placed by the same |a| ordering as the others.
std::string serialize_observable(const ObservableSum& h);

/// Sum of |a_Q| over traceless terms.
double l1_norm(const ObservableSum& h);

/// |a_Q| / l1_norm for each traceless term, aligned with h.terms(). Throws
/// InputError if the observable has no traceless part.
std::vector<double> gamma_distribution(const ObservableSum& h);

}  // namespace lbcs
