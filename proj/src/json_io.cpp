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

#include "lbcs/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "lbcs/error.hpp"

namespace lbcs {

namespace {

constexpr double kLenientRowTolerance = 1e-6;

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(fmt::format("missing JSON field \"{}\"", key));
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(fmt::format("JSON field \"{}\" has the wrong type", key));
  }
}

Json rounded(double v, int digits) { return round_significant(v, digits); }

}  // namespace

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || digits >= kFullDigits) return value;
  return std::stod(fmt::format("{:.{}g}", value, digits));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

BetaDistribution beta_from_json(const Json& j) {
  const auto n = get_field<std::size_t>(j, "n");
  const auto rows = get_field<std::vector<std::vector<double>>>(j, "rows");
  if (rows.size() != n) throw DimensionMismatch(n, rows.size());
  std::vector<BetaDistribution::Row> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != 3) throw InputError(fmt::format("beta row {} needs 3 entries", i + 1));
    const BetaDistribution::Row row{rows[i][0], rows[i][1], rows[i][2]};
    const double sum = row[0] + row[1] + row[2];
    if (!(std::abs(sum - 1.0) <= kLenientRowTolerance)) {
      throw InputError(fmt::format("beta row {} sums to {}", i + 1, sum));
    }
    out.push_back(row);
  }
  return normalized_beta(std::move(out));
}

Json beta_to_json(const BetaDistribution& beta, int digits) {
  Json rows = Json::array();
  for (const auto& row : beta.rows()) {
    rows.push_back({rounded(row[0], digits), rounded(row[1], digits), rounded(row[2], digits)});
  }
  Json j;
  j["n"] = beta.num_qubits();
  j["rows"] = std::move(rows);
  return j;
}

BetaDistribution read_beta_file(const std::string& path) {
  return beta_from_json(parse_json(read_text_file(path)));
}

Reference reference_from_json(const Json& j) {
  const auto type = get_field<std::string>(j, "type");
  if (type == "single") return SingleReference::from_bits(get_field<std::string>(j, "bits"));
  if (type != "multi") throw InputError("reference type must be \"single\" or \"multi\"");
  const Json& comps = j.contains("components") ? j.at("components") : Json();
  if (!comps.is_array() || comps.empty()) {
    throw InputError("multi reference needs a non-empty \"components\" array");
  }
  std::size_t n = 0;
  std::vector<MultiReference::Component> out;
  for (const Json& c : comps) {
    const auto bits = get_field<std::string>(c, "bits");
    const auto amp = get_field<std::vector<double>>(c, "amplitude");
    if (amp.size() != 2) throw InputError("amplitude must be [re, im]");
    if (n == 0) n = bits.size();
    if (bits.size() != n) throw DimensionMismatch(n, bits.size());
    out.push_back({parse_bits(bits), Complex(amp[0], amp[1])});
  }
  return MultiReference(n, std::move(out));
}

Reference read_reference_file(const std::string& path) {
  return reference_from_json(parse_json(read_text_file(path)));
}

std::size_t num_qubits(const Reference& ref) {
  return std::visit([](const auto& r) { return r.num_qubits(); }, ref);
}

GroupingScheme scheme_from_json(const Json& j) {
  GroupingScheme s;
  for (const auto& coll : get_field<std::vector<std::vector<std::string>>>(j, "collections")) {
    auto& out = s.collections.emplace_back();
    for (const auto& p : coll) out.push_back(PauliString::parse(p));
  }
  for (const auto& b : get_field<std::vector<std::string>>(j, "bases")) {
    s.bases.push_back(PauliString::parse(b));
  }
  s.kappa = get_field<std::vector<double>>(j, "kappa");
  if (s.bases.size() != s.collections.size() || s.kappa.size() != s.collections.size()) {
    throw InputError("grouping scheme needs one basis and one kappa per collection");
  }
  return s;
}

Json scheme_to_json(const GroupingScheme& scheme, int digits) {
  Json collections = Json::array();
  for (const auto& coll : scheme.collections) {
    Json c = Json::array();
    for (const auto& p : coll) c.push_back(p.to_string());
    collections.push_back(std::move(c));
  }
  Json bases = Json::array();
  for (const auto& b : scheme.bases) bases.push_back(b.to_string());
  Json kappa = Json::array();
  for (double k : scheme.kappa) kappa.push_back(rounded(k, digits));
  Json j;
  j["collections"] = std::move(collections);
  j["bases"] = std::move(bases);
  j["kappa"] = std::move(kappa);
  return j;
}

GroupingScheme read_scheme_file(const std::string& path) {
  return scheme_from_json(parse_json(read_text_file(path)));
}

Json report_to_json(const EstimateReport& report, int digits) {
  Json j;
  j["mean"] = rounded(report.mean, digits);
  j["variance"] = rounded(report.variance, digits);
  j["shots"] = report.shots;
  j["seed"] = report.seed;
  return j;
}

Json optimize_result_to_json(const OptimizeResult& result, int digits) {
  Json j;
  j["beta"] = beta_to_json(result.beta, digits);
  j["cost"] = rounded(result.cost, digits);
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["kkt_residual"] = rounded(result.kkt_residual, digits);
  j["floored_updates"] = result.floored_updates;
  Json untouched = Json::array();
  for (std::size_t q : result.untouched_qubits) untouched.push_back(q + 1);
  j["untouched_qubits"] = std::move(untouched);
  j["divergent"] = result.divergent;
  return j;
}

}  // namespace lbcs
