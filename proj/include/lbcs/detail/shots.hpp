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

#include <cstdint>
#include <vector>

#include "lbcs/error.hpp"
#include "lbcs/parallel.hpp"
#include "lbcs/rng.hpp"
#include "lbcs/shadows.hpp"

namespace lbcs::detail {

/// Welford accumulator; merge() is Chan's pairwise update.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) noexcept {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(o.count);
    const double delta = o.mean - mean;
    const double total = n1 + n2;
    mean += delta * n2 / total;
    m2 += o.m2 + delta * delta * n1 * n2 / total;
    count += o.count;
  }
};

inline constexpr std::uint64_t kShotChunk = std::uint64_t{1} << 16;

/// Runs `shots` independent shots. make_context() builds per-chunk scratch
/// state (caches); shot(context, rng) returns one estimate. Chunks are
/// merged in index order.
template <class MakeContext, class Shot>
EstimateReport run_shots(std::uint64_t shots, std::uint64_t seed, std::size_t threads,
                         MakeContext&& make_context, Shot&& shot) {
  if (shots == 0) throw InputError("shot count must be at least 1");
  const std::uint64_t chunks = (shots + kShotChunk - 1) / kShotChunk;
  std::vector<RunningStats> partial(chunks);
  parallel_chunks(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    auto context = make_context();
    const std::uint64_t begin = c * kShotChunk;
    const std::uint64_t end = std::min(shots, begin + kShotChunk);
    RunningStats stats;
    for (std::uint64_t s = begin; s < end; ++s) {
      CounterRng rng(seed, RngStream::kShots, s);
      stats.add(shot(context, rng));
    }
    partial[c] = stats;
  });
  RunningStats total;
  for (const RunningStats& p : partial) total.merge(p);
  EstimateReport report;
  report.mean = total.mean;
  report.variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  report.shots = shots;
  report.seed = seed;
  return report;
}

}  // namespace lbcs::detail
