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

// Command-line front end. run_cli is the whole program minus process setup
// so tests can drive it in-process.
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lbcs/hamiltonian.hpp"
#include "lbcs/json_io.hpp"
#include "lbcs/lanczos.hpp"

namespace lbcs::cli {

enum ExitCode : int { kSuccess = 0, kInputFailure = 1, kNumericalFailure = 2 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// One row of the estimator comparison table. `error` is set instead of
/// `variance` when that estimator failed.
struct CompareRow {
  std::string estimator;
  std::optional<double> variance;
  std::string error;
};

struct CompareOptions {
  LanczosOptions lanczos;
  OptimizerConfig optimizer;
  std::size_t threads = 0;
};

struct CompareReport {
  double energy = 0.0;
  std::vector<CompareRow> rows;
  OptimizeResult lbcs;  // reference-cost optimum
  OptimizeResult diag;
};

/// Ground state, LDF grouping, both optimizations and every exact variance
/// for one observable. Rows: l1, ldf, shadows, lbcs (reference cost, named
/// lbcs_multiref for a multi-component reference), lbcs_diag.
CompareReport run_compare(const ObservableSum& h, const Reference& ref,
                          const CompareOptions& options);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace lbcs::cli
