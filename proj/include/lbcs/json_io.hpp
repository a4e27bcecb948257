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

#include <string>
#include <variant>

#include "json.hpp"
#include "lbcs/baselines.hpp"
#include "lbcs/beta.hpp"
#include "lbcs/optimizer.hpp"
#include "lbcs/reference.hpp"
#include "lbcs/shadows.hpp"

namespace lbcs {

using Json = nlohmann::ordered_json;

/// Digits that round-trip every double.
inline constexpr int kFullDigits = 17;

/// Rounds to `digits` significant decimal digits (the value printed by %.*g).
double round_significant(double value, int digits);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_text_file(const std::string& path);
Json parse_json(const std::string& text);

/// {"n":N,"rows":[[pX,pY,pZ],...]}. Rows that sum to 1 within 1e-6 are
/// renormalized; larger deviations are rejected.
BetaDistribution beta_from_json(const Json& j);
Json beta_to_json(const BetaDistribution& beta, int digits = kFullDigits);
BetaDistribution read_beta_file(const std::string& path);

/// {"type":"single","bits":"0101"} or
/// {"type":"multi","components":[{"bits":"0101","amplitude":[re,im]},...]}.
using Reference = std::variant<SingleReference, MultiReference>;
Reference reference_from_json(const Json& j);
Reference read_reference_file(const std::string& path);
std::size_t num_qubits(const Reference& ref);

/// {"collections":[["ZZII",...],...],"bases":["ZZZZ",...],"kappa":[...]}.
GroupingScheme scheme_from_json(const Json& j);
Json scheme_to_json(const GroupingScheme& scheme, int digits = kFullDigits);
GroupingScheme read_scheme_file(const std::string& path);

Json report_to_json(const EstimateReport& report, int digits = kFullDigits);
Json optimize_result_to_json(const OptimizeResult& result, int digits = kFullDigits);

}  // namespace lbcs
