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

#include "lbcs/pair_index.hpp"

#include <map>
#include <utility>

namespace lbcs {

PairIndex::PairIndex(std::span<const PauliString> terms) : terms_(terms) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> lookup;
  bucket_of_.resize(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::uint64_t x = terms[i].x_mask();
    const std::uint64_t y = terms[i].y_mask();
    auto [it, inserted] = lookup.try_emplace({x, y}, buckets_.size());
    if (inserted) buckets_.push_back(Bucket{x, y, {}});
    buckets_[it->second].members.push_back(i);
    bucket_of_[i] = it->second;
  }
  compatible_.resize(buckets_.size());
  for (std::size_t b = 0; b < buckets_.size(); ++b) {
    for (std::size_t c = 0; c < buckets_.size(); ++c) {
      const std::uint64_t shared = buckets_[b].x & buckets_[c].x;
      if ((shared & (buckets_[b].y ^ buckets_[c].y)) == 0) compatible_[b].push_back(c);
    }
  }
}

}  // namespace lbcs
