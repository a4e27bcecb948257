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

#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "lbcs/baselines.hpp"
#include "lbcs/error.hpp"
#include "lbcs/shadows.hpp"
#include "lbcs/version.hpp"

namespace lbcs::cli {

namespace {

constexpr int kDefaultDigits = 6;

struct Common {
  std::size_t threads = 0;
  bool full_precision = false;
  std::string output = "json";
  std::optional<std::size_t> qubits;

  int digits() const { return full_precision ? kFullDigits : kDefaultDigits; }
};

struct StateOptions {
  std::string kind = "ground";
  std::string file;
  std::string reference;
  double tol = 1e-10;
  std::size_t max_iter = 100;
  std::size_t krylov = 200;
};

// Provenance echoed with every result.
class Manifest {
 public:
  explicit Manifest(const std::string& command) {
    json_["command"] = command;
    json_["version"] = kVersion;
    json_["inputs"] = Json::object();
    json_["seeds"] = Json::object();
    json_["config"] = Json::object();
  }

  void input(const std::string& role, const std::string& path) {
    json_["inputs"][role] = {{"path", path}, {"sha256", sha256_file(path)}};
  }
  void seed(const std::string& name, std::uint64_t v) { json_["seeds"][name] = v; }
  template <class T>
  void config(const std::string& key, const T& v) {
    json_["config"][key] = v;
  }
  const Json& json() const { return json_; }

 private:
  Json json_;
};

// One result rendered as JSON or as CSV. Numbers are rounded once and the
// same doubles feed both encodings.
class Output {
 public:
  explicit Output(int digits) : digits_(digits) {}

  double round(double v) const { return round_significant(v, digits_); }
  std::string cell(double v) const { return fmt::format("{}", round(v)); }

  Json result = Json::object();
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void note(const std::string& key, double v) {
    result[key] = round(v);
    notes.emplace_back(key, cell(v));
  }
  void note(const std::string& key, const std::string& v) {
    result[key] = v;
    notes.emplace_back(key, v);
  }
  template <class Int>
    requires std::integral<Int>
  void note(const std::string& key, Int v) {
    if constexpr (std::is_same_v<Int, bool>) {
      result[key] = v;
      notes.emplace_back(key, v ? "true" : "false");
    } else {
      result[key] = v;
      notes.emplace_back(key, std::to_string(v));
    }
  }

  void write(std::ostream& out, const Common& c, const Manifest& m) const {
    if (c.output == "csv") {
      out << "# manifest: " << m.json().dump() << '\n';
      for (const auto& [k, v] : notes) out << "# " << k << ": " << v << '\n';
      write_row(out, header);
      for (const auto& r : rows) write_row(out, r);
    } else {
      Json j;
      j["manifest"] = m.json();
      j["result"] = result;
      out << j.dump(2) << '\n';
    }
  }

 private:
  static void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  }

  int digits_;
};

ObservableSum load_observable(const std::string& path, const Common& c, Manifest& m) {
  m.input("hamiltonian", path);
  if (c.qubits) m.config("qubits", *c.qubits);
  return read_observable_file(path, c.qubits);
}

bool is_bit_string(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch == '0' || ch == '1'; });
}

// A path to a reference JSON file, or a literal bit string.
Reference load_reference(const std::string& arg, Manifest& m) {
  if (std::filesystem::is_regular_file(arg)) {
    m.input("reference", arg);
    return read_reference_file(arg);
  }
  if (is_bit_string(arg)) {
    m.config("reference_bits", arg);
    return SingleReference::from_bits(arg);
  }
  throw InputError("reference '" + arg + "' is neither a file nor a bit string");
}

void check_qubits(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

StateVector resolve_state(const ObservableSum& h, const StateOptions& so, std::uint64_t seed,
                          const Common& c, Manifest& m, Output& o) {
  m.config("state", so.kind);
  if (so.kind == "ground") {
    m.seed("lanczos", seed);
    m.config("lanczos_tolerance", so.tol);
    m.config("lanczos_max_restarts", so.max_iter);
    m.config("lanczos_krylov", so.krylov);
    const auto g = lanczos_ground(h, {.tolerance = so.tol,
                                      .krylov_dimension = so.krylov,
                                      .max_iterations = so.max_iter,
                                      .seed = seed,
                                      .threads = c.threads});
    o.note("energy", g.energy);
    return g.state;
  }
  if (so.kind == "file") {
    if (so.file.empty()) throw InputError("--state file needs --state-file");
    m.input("state", so.file);
    auto v = read_state_file(so.file);
    check_qubits(h.num_qubits(), v.num_qubits());
    return v;
  }
  if (so.reference.empty()) throw InputError("--state reference needs --reference");
  const Reference ref = load_reference(so.reference, m);
  check_qubits(h.num_qubits(), num_qubits(ref));
  return std::visit([](const auto& r) { return to_state(r); }, ref);
}

void add_state_options(CLI::App* app, StateOptions& so) {
  app->add_option("--state", so.kind, "State to evaluate on")
      ->check(CLI::IsMember({"ground", "file", "reference"}));
  app->add_option("--state-file", so.file, "Binary amplitude dump for --state file");
  app->add_option("--reference", so.reference,
                  "Reference JSON file or bit string for --state reference");
  app->add_option("--tol", so.tol, "Lanczos residual tolerance");
  app->add_option("--max-iter", so.max_iter, "Lanczos restarts");
  app->add_option("--krylov", so.krylov, "Lanczos Krylov dimension");
}

// ---------------------------------------------------------------------------

int cmd_ground(const Common& c, const std::string& hpath, const StateOptions& so,
               std::uint64_t seed, const std::string& state_out, std::ostream& out) {
  Manifest m("ground");
  Output o(c.digits());
  const auto h = load_observable(hpath, c, m);
  m.seed("lanczos", seed);
  m.config("tolerance", so.tol);
  m.config("max_restarts", so.max_iter);
  m.config("krylov", so.krylov);
  const auto g = lanczos_ground(h, {.tolerance = so.tol,
                                    .krylov_dimension = so.krylov,
                                    .max_iterations = so.max_iter,
                                    .seed = seed,
                                    .threads = c.threads});
  if (!state_out.empty()) {
    write_state_file(state_out, g.state);
    o.note("state_file", state_out);
  }
  o.result["energy"] = o.round(g.energy);
  o.result["residual"] = o.round(g.residual);
  o.result["restarts"] = g.restarts;
  o.result["matvecs"] = g.matvecs;
  o.header = {"energy", "residual", "restarts", "matvecs"};
  o.rows.push_back({o.cell(g.energy), o.cell(g.residual), std::to_string(g.restarts),
                    std::to_string(g.matvecs)});
  o.write(out, c, m);
  return kSuccess;
}

struct OptimizeArgs {
  std::string hamiltonian;
  std::string cost = "diag";
  std::string reference;
  OptimizerConfig config;
  std::string init = "uniform";
  std::string beta_out;
  std::string result_out;
};

int cmd_optimize(const Common& c, OptimizeArgs a, std::ostream& out, std::ostream& err) {
  Manifest m("optimize");
  Output o(c.digits());
  const auto h = load_observable(a.hamiltonian, c, m);
  a.config.init =
      a.init == "random" ? OptimizerConfig::Init::kRandom : OptimizerConfig::Init::kUniform;
  validate(a.config);
  m.config("cost", a.cost);
  m.config("delta", a.config.step);
  m.config("tolerance", a.config.tolerance);
  m.config("max_iterations", a.config.max_iterations);
  m.config("floor", a.config.floor);
  m.config("init", a.init);
  if (a.config.init == OptimizerConfig::Init::kRandom) m.seed("optimizer_init", a.config.seed);

  CostKind kind = DiagonalCost{};
  if (a.cost != "diag") {
    if (a.reference.empty()) throw InputError("--cost " + a.cost + " needs --reference");
    const Reference ref = load_reference(a.reference, m);
    check_qubits(h.num_qubits(), num_qubits(ref));
    if (a.cost == "full") {
      if (!std::holds_alternative<SingleReference>(ref)) {
        throw InputError("--cost full needs a single-reference bit string");
      }
      kind = FullCost{std::get<SingleReference>(ref)};
    } else {
      kind = MultiReferenceCost{std::holds_alternative<SingleReference>(ref)
                                    ? MultiReference::from_single(std::get<SingleReference>(ref))
                                    : std::get<MultiReference>(ref)};
    }
  }

  const auto r = optimize(h, kind, a.config);
  if (!r.converged) {
    err << "warning: optimizer stopped after " << r.iterations
        << " iterations without meeting the tolerance\n";
  }
  if (r.divergent) err << "warning: final beta zeroes a needed probability; variance diverges\n";
  if (r.floored_updates > 0) {
    err << "warning: " << r.floored_updates << " update entries were floored\n";
  }
  if (!a.beta_out.empty()) {
    std::ofstream(a.beta_out) << beta_to_json(r.beta).dump(2) << '\n';
  }
  if (!a.result_out.empty()) {
    std::ofstream(a.result_out) << optimize_result_to_json(r).dump(2) << '\n';
  }

  o.result = optimize_result_to_json(r, c.digits());
  std::string untouched;
  for (std::size_t q : r.untouched_qubits) untouched += (untouched.empty() ? "" : " ") + std::to_string(q + 1);
  o.notes = {{"cost", o.cell(r.cost)},
             {"iterations", std::to_string(r.iterations)},
             {"converged", r.converged ? "true" : "false"},
             {"kkt_residual", o.cell(r.kkt_residual)},
             {"floored_updates", std::to_string(r.floored_updates)},
             {"untouched_qubits", untouched},
             {"divergent", r.divergent ? "true" : "false"}};
  o.header = {"qubit", "X", "Y", "Z"};
  for (std::size_t i = 0; i < r.beta.num_qubits(); ++i) {
    const auto& row = r.beta.row(i);
    o.rows.push_back({std::to_string(i + 1), o.cell(row[0]), o.cell(row[1]), o.cell(row[2])});
  }
  o.write(out, c, m);
  return kSuccess;
}

struct EstimatorArgs {
  std::string hamiltonian;
  std::vector<std::string> estimators;
  std::string beta;
  std::string scheme;
  StateOptions state;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
};

GroupingScheme load_scheme(const ObservableSum& h, const std::string& path, Manifest& m) {
  if (path.empty()) return ldf_grouping(h);
  m.input("scheme", path);
  auto s = read_scheme_file(path);
  validate_scheme(h, s);
  return s;
}

BetaDistribution load_beta(const ObservableSum& h, const std::string& path, Manifest& m) {
  if (path.empty()) throw InputError("estimator lbcs needs --beta");
  m.input("beta", path);
  auto b = read_beta_file(path);
  check_qubits(h.num_qubits(), b.num_qubits());
  return b;
}

int cmd_variance(const Common& c, EstimatorArgs a, std::ostream& out) {
  Manifest m("variance");
  Output o(c.digits());
  const auto h = load_observable(a.hamiltonian, c, m);
  if (a.estimators.empty()) {
    a.estimators = {"l1", "ldf", "shadows"};
    if (!a.beta.empty()) a.estimators.push_back("lbcs");
  }
  m.config("estimators", a.estimators);
  const auto v = resolve_state(h, a.state, a.seed, c, m, o);
  o.note("expectation", observable_expectation(h, v));

  o.header = {"estimator", "variance"};
  Json rows = Json::array();
  for (const auto& e : a.estimators) {
    double var = 0.0;
    Json row = {{"estimator", e}};
    if (e == "l1") {
      var = l1_exact_variance(h, v);
    } else if (e == "ldf") {
      const auto g = grouping_exact_variance(h, load_scheme(h, a.scheme, m), v);
      var = g.variance;
      o.notes.emplace_back("ldf_covariance_form", o.cell(g.covariance_form));
      row["covariance_form"] = o.round(g.covariance_form);
    } else if (e == "shadows") {
      var = exact_variance(h, v, uniform_beta(h.num_qubits()), c.threads);
    } else {
      var = exact_variance(h, v, load_beta(h, a.beta, m), c.threads);
    }
    row["variance"] = o.round(var);
    rows.push_back(std::move(row));
    o.rows.push_back({e, o.cell(var)});
  }
  o.result["rows"] = std::move(rows);
  o.write(out, c, m);
  return kSuccess;
}

int cmd_simulate(const Common& c, const EstimatorArgs& a, std::ostream& out) {
  Manifest m("simulate");
  Output o(c.digits());
  const auto h = load_observable(a.hamiltonian, c, m);
  const std::string& e = a.estimators.front();
  m.config("estimator", e);
  m.config("shots", a.shots);
  m.seed("shots", a.seed);
  if (a.shots == 0) throw InputError("--shots must be at least 1");
  const auto v = resolve_state(h, a.state, a.seed, c, m, o);

  EstimateReport r;
  if (e == "l1") {
    r = l1_protocol(h, v, a.shots, a.seed, c.threads);
  } else if (e == "ldf") {
    r = grouping_protocol(h, load_scheme(h, a.scheme, m), v, a.shots, a.seed, c.threads);
  } else if (e == "shadows") {
    r = run_protocol(h, v, uniform_beta(h.num_qubits()), a.shots, a.seed, c.threads);
  } else {
    r = run_protocol(h, v, load_beta(h, a.beta, m), a.shots, a.seed, c.threads);
  }
  o.result["estimator"] = e;
  const Json report = report_to_json(r, c.digits());
  for (const auto& [k, val] : report.items()) o.result[k] = val;
  o.header = {"estimator", "mean", "variance", "shots", "seed"};
  o.rows.push_back({e, o.cell(r.mean), o.cell(r.variance), std::to_string(r.shots),
                    std::to_string(r.seed)});
  o.write(out, c, m);
  return kSuccess;
}

int cmd_group(const Common& c, const std::string& hpath, const std::string& scheme_out,
              std::ostream& out) {
  Manifest m("group");
  Output o(c.digits());
  const auto h = load_observable(hpath, c, m);
  const auto graph = build_term_graph(h);
  const auto scheme = ldf_grouping(h);
  if (!scheme_out.empty()) std::ofstream(scheme_out) << scheme_to_json(scheme).dump(2) << '\n';

  const std::size_t k = scheme.size();
  o.note("K", k);
  o.note("max_degree", graph.max_degree());
  o.note("edges", graph.edge_count());
  o.note("bound_holds", k <= 1 + graph.max_degree());
  o.header = {"group", "size", "l1_norm", "kappa", "basis"};
  Json groups = Json::array();
  for (std::size_t g = 0; g < k; ++g) {
    double norm = 0.0;
    for (const auto& q : scheme.collections[g]) {
      for (const Term& t : h.terms()) {
        if (t.string == q) norm += std::abs(t.coefficient);
      }
    }
    const std::string basis = scheme.bases[g].to_string();
    groups.push_back({{"group", g + 1},
                      {"size", scheme.collections[g].size()},
                      {"l1_norm", o.round(norm)},
                      {"kappa", o.round(scheme.kappa[g])},
                      {"basis", basis}});
    o.rows.push_back({std::to_string(g + 1), std::to_string(scheme.collections[g].size()),
                      o.cell(norm), o.cell(scheme.kappa[g]), basis});
  }
  o.result["groups"] = std::move(groups);
  o.write(out, c, m);
  return kSuccess;
}

struct CompareArgs {
  std::string hamiltonian;
  std::string reference;
  StateOptions state;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
};

int cmd_compare(const Common& c, const CompareArgs& a, std::ostream& out, std::ostream& err) {
  Manifest m("compare");
  Output o(c.digits());
  const auto h = load_observable(a.hamiltonian, c, m);
  const Reference ref = load_reference(a.reference, m);
  check_qubits(h.num_qubits(), num_qubits(ref));
  validate(a.optimizer);
  m.seed("lanczos", a.seed);
  m.config("lanczos_tolerance", a.state.tol);
  m.config("lanczos_max_restarts", a.state.max_iter);
  m.config("delta", a.optimizer.step);
  m.config("optimizer_tolerance", a.optimizer.tolerance);
  m.config("optimizer_max_iterations", a.optimizer.max_iterations);

  CompareOptions opts;
  opts.lanczos = {.tolerance = a.state.tol,
                  .krylov_dimension = a.state.krylov,
                  .max_iterations = a.state.max_iter,
                  .seed = a.seed,
                  .threads = c.threads};
  opts.optimizer = a.optimizer;
  opts.threads = c.threads;
  const auto report = run_compare(h, ref, opts);

  o.note("energy", report.energy);
  o.note("lbcs_converged", report.lbcs.converged);
  o.note("lbcs_diag_converged", report.diag.converged);
  o.header = {"estimator", "variance"};
  Json rows = Json::array();
  bool failed = false;
  for (const auto& r : report.rows) {
    if (r.variance) {
      rows.push_back({{"estimator", r.estimator}, {"variance", o.round(*r.variance)}});
      o.rows.push_back({r.estimator, o.cell(*r.variance)});
    } else {
      failed = true;
      err << "error: " << r.estimator << ": " << r.error << '\n';
      rows.push_back({{"estimator", r.estimator}, {"variance", nullptr}, {"error", r.error}});
      o.rows.push_back({r.estimator, "nan"});
    }
  }
  o.result["rows"] = std::move(rows);
  o.write(out, c, m);
  return failed ? kNumericalFailure : kSuccess;
}

}  // namespace

CompareReport run_compare(const ObservableSum& h, const Reference& ref,
                          const CompareOptions& options) {
  const auto ground = lanczos_ground(h, options.lanczos);
  const StateVector& v = ground.state;
  CompareReport report;
  report.energy = ground.energy;

  auto row = [&](const std::string& name, auto&& compute) {
    CompareRow r{name, std::nullopt, {}};
    try {
      r.variance = compute();
    } catch (const NumericalError& e) {
      r.error = e.what();
    }
    report.rows.push_back(std::move(r));
  };
  row("l1", [&] { return l1_exact_variance(h, v); });
  row("ldf", [&] { return grouping_exact_variance(h, ldf_grouping(h), v).variance; });
  row("shadows", [&] { return exact_variance(h, v, uniform_beta(h.num_qubits()), options.threads); });

  const bool single = std::holds_alternative<SingleReference>(ref);
  const CostKind kind = single ? CostKind{FullCost{std::get<SingleReference>(ref)}}
                               : CostKind{MultiReferenceCost{std::get<MultiReference>(ref)}};
  row(single ? "lbcs" : "lbcs_multiref", [&] {
    report.lbcs = optimize(h, kind, options.optimizer);
    return exact_variance(h, v, report.lbcs.beta, options.threads);
  });
  row("lbcs_diag", [&] {
    report.diag = optimize(h, DiagonalCost{}, options.optimizer);
    return exact_variance(h, v, report.diag.beta, options.threads);
  });
  return report;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Locally-biased classical shadows: beta optimization and estimator variances",
               "lbcs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--threads", common.threads,
                 "Worker cap (0: LBCS_THREADS or hardware concurrency); never changes results");
  app.add_flag("--full-precision", common.full_precision, "Print 17 significant digits");
  app.add_option("--output", common.output, "Output encoding")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--qubits", common.qubits, "Pad Pauli strings with I up to this many qubits");

  // ground
  std::string ground_h, ground_out;
  StateOptions ground_so;
  std::uint64_t ground_seed = 0;
  auto* ground = app.add_subcommand("ground", "Lanczos ground state");
  ground->add_option("--hamiltonian", ground_h, "Observable file")->required();
  ground->add_option("--tol", ground_so.tol, "Residual tolerance");
  ground->add_option("--max-iter", ground_so.max_iter, "Maximum restarts");
  ground->add_option("--krylov", ground_so.krylov, "Krylov dimension");
  ground->add_option("--seed", ground_seed, "Start vector seed");
  ground->add_option("--state-out", ground_out, "Write the ground state amplitudes here");

  // optimize
  OptimizeArgs opt;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize the beta distribution");
  optimize_cmd->add_option("--hamiltonian", opt.hamiltonian, "Observable file")->required();
  optimize_cmd->add_option("--cost", opt.cost, "Cost function")
      ->check(CLI::IsMember({"diag", "full", "multiref"}));
  optimize_cmd->add_option("--reference", opt.reference, "Reference JSON file or bit string");
  optimize_cmd->add_option("--delta", opt.config.step, "Damping step in (0, 1)");
  optimize_cmd->add_option("--tol", opt.config.tolerance, "Max beta change at convergence");
  optimize_cmd->add_option("--max-iter", opt.config.max_iterations, "Iteration cap");
  optimize_cmd->add_option("--floor", opt.config.floor, "Probability floor");
  optimize_cmd->add_option("--init", opt.init, "Initial beta")
      ->check(CLI::IsMember({"uniform", "random"}));
  optimize_cmd->add_option("--seed", opt.config.seed, "Seed for --init random");
  optimize_cmd->add_option("--out", opt.beta_out, "Write the beta JSON here");
  optimize_cmd->add_option("--result", opt.result_out, "Write the full result JSON here");

  // variance / simulate
  EstimatorArgs var_args;
  auto* variance = app.add_subcommand("variance", "Exact single-shot variances");
  variance->add_option("--hamiltonian", var_args.hamiltonian, "Observable file")->required();
  variance->add_option("--estimator", var_args.estimators, "l1, ldf, shadows, lbcs")
      ->delimiter(',')
      ->check(CLI::IsMember({"l1", "ldf", "shadows", "lbcs"}));
  variance->add_option("--beta", var_args.beta, "Beta JSON for lbcs");
  variance->add_option("--scheme", var_args.scheme, "Grouping scheme JSON replacing LDF");
  variance->add_option("--seed", var_args.seed, "Run seed (Lanczos start vector)");
  add_state_options(variance, var_args.state);

  EstimatorArgs sim_args;
  std::string sim_estimator;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate");
  simulate->add_option("--hamiltonian", sim_args.hamiltonian, "Observable file")->required();
  simulate->add_option("--estimator", sim_estimator, "l1, ldf, shadows, lbcs")
      ->required()
      ->check(CLI::IsMember({"l1", "ldf", "shadows", "lbcs"}));
  simulate->add_option("--beta", sim_args.beta, "Beta JSON for lbcs");
  simulate->add_option("--scheme", sim_args.scheme, "Grouping scheme JSON replacing LDF");
  simulate->add_option("--shots", sim_args.shots, "Number of shots")->required();
  simulate->add_option("--seed", sim_args.seed, "Run seed");
  add_state_options(simulate, sim_args.state);

  // group
  std::string group_h, group_out;
  auto* group = app.add_subcommand("group", "LDF qubit-wise commuting grouping");
  group->add_option("--hamiltonian", group_h, "Observable file")->required();
  group->add_option("--out", group_out, "Write the grouping scheme JSON here");

  // compare
  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "All estimators on the ground state");
  compare->add_option("--hamiltonian", cmp.hamiltonian, "Observable file")->required();
  compare->add_option("--reference", cmp.reference, "Reference JSON file or bit string")
      ->required();
  compare->add_option("--seed", cmp.seed, "Run seed (Lanczos start vector)");
  compare->add_option("--tol", cmp.state.tol, "Lanczos residual tolerance");
  compare->add_option("--max-iter", cmp.state.max_iter, "Lanczos restarts");
  compare->add_option("--krylov", cmp.state.krylov, "Lanczos Krylov dimension");
  compare->add_option("--delta", cmp.optimizer.step, "Optimizer damping step");
  compare->add_option("--opt-tol", cmp.optimizer.tolerance, "Optimizer tolerance");
  compare->add_option("--opt-max-iter", cmp.optimizer.max_iterations, "Optimizer iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputFailure;
  }

  try {
    if (*ground) return cmd_ground(common, ground_h, ground_so, ground_seed, ground_out, out);
    if (*optimize_cmd) return cmd_optimize(common, opt, out, err);
    if (*variance) return cmd_variance(common, var_args, out);
    if (*simulate) {
      sim_args.estimators = {sim_estimator};
      return cmd_simulate(common, sim_args, out);
    }
    if (*group) return cmd_group(common, group_h, group_out, out);
    return cmd_compare(common, cmp, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace lbcs::cli
