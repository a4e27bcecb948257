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

#include "lbcs/pauli.hpp"

namespace lbcs {

/// Buckets a term list by its X/Y pattern (which qubits carry X or Y, and
/// which of those are Y) to enumerate term pairs without a full quadratic
/// label scan.
///
/// Two terms commute qubit-wise only if their buckets agree on shared X/Y
/// positions; two terms form an influential pair (labels equal everywhere
/// except I/Z swaps) exactly when they share a bucket.
class PairIndex {
 public:
  explicit PairIndex(std::span<const PauliString> terms);

  std::size_t size() const noexcept { return terms_.size(); }

  /// Calls fn(j) for every j such that terms[i] and terms[j] commute
  /// qubit-wise, including j == i. Order is deterministic.
  template <class Fn>
  void for_each_commuting_partner(std::size_t i, Fn&& fn) const {
    const PauliString& a = terms_[i];
    for (std::size_t c : compatible_[bucket_of_[i]]) {
      for (std::size_t j : buckets_[c].members) {
        if (qubitwise_commute_unchecked(a, terms_[j])) fn(j);
      }
    }
  }

  /// Calls fn(j) for every j forming an influential pair (i, j), j == i
  /// included.
  template <class Fn>
  void for_each_influential_partner(std::size_t i, Fn&& fn) const {
    for (std::size_t j : buckets_[bucket_of_[i]].members) fn(j);
  }

 private:
  static bool qubitwise_commute_unchecked(const PauliString& a, const PauliString& b) noexcept {
    const std::uint64_t differ = (a.x_mask() ^ b.x_mask()) | (a.z_mask() ^ b.z_mask());
    return (a.support_mask() & b.support_mask() & differ) == 0;
  }

  struct Bucket {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::vector<std::size_t> members;
  };

  std::span<const PauliString> terms_;
  std::vector<Bucket> buckets_;
  std::vector<std::size_t> bucket_of_;
  std::vector<std::vector<std::size_t>> compatible_;
};

}  // namespace lbcs
