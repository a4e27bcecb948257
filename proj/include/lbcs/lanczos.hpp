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

#include "lbcs/hamiltonian.hpp"
#include "lbcs/state.hpp"

namespace lbcs {

struct LanczosOptions {
  /// Target for ||H v - E v||.
  double tolerance = 1e-10;
  /// Krylov basis size per restart (capped by 2^n and by memory).
  std::size_t krylov_dimension = 200;
  /// Number of restarts before giving up.
  std::size_t max_iterations = 100;
  /// Start vector seed. Selects the vector returned for degenerate ground
  /// spaces.
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

struct GroundState {
  double energy = 0.0;
  StateVector state;
  double residual = 0.0;
  std::size_t restarts = 0;
  std::size_t matvecs = 0;
};

/// Lowest eigenpair of H by explicitly restarted Lanczos with full
/// reorthogonalization. Throws ConvergenceError carrying the best residual
/// if the tolerance is not met within max_iterations restarts.
GroundState lanczos_ground(const ObservableSum& h, const LanczosOptions& options = {});

}  // namespace lbcs
