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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "lbcs/error.hpp"
#include "lbcs/optimizer.hpp"
#include "lbcs/shadows.hpp"
#include "oracles.hpp"

namespace lbcs::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lbcs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_tmp(const std::string& name, const std::string& text) {
  fs::create_directories(LBCS_TEST_TMPDIR);
  const std::string path = std::string(LBCS_TEST_TMPDIR) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

Json result_of(const Run& r) {
  EXPECT_EQ(r.code, 0) << r.err;
  return parse_json(r.out)["result"];
}

TEST(Ground, SingleZ) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  EXPECT_NEAR(result_of(run({"ground", "--hamiltonian", h}))["energy"].get<double>(), -1.0, 1e-12);
}

TEST(Ground, XPlusZ) {
  const auto h = write_tmp("xz.txt", "1.0 X\n1.0 Z\n");
  const auto j = result_of(run({"--full-precision", "ground", "--hamiltonian", h}));
  EXPECT_NEAR(j["energy"].get<double>(), -std::sqrt(2.0), 1e-8);
}

TEST(Ground, RandomFourQubitMatchesDense) {
  std::mt19937_64 rng(11);
  const auto obs = oracle::random_observable(4, 10, rng);
  const auto h = write_tmp("rand4.txt", serialize_observable(obs));
  const auto state = std::string(LBCS_TEST_TMPDIR) + "/rand4.state";
  const auto j = result_of(
      run({"--full-precision", "ground", "--hamiltonian", h, "--state-out", state}));
  const auto dense = oracle::dense_ground(obs);
  EXPECT_NEAR(j["energy"].get<double>(), dense.energy, 1e-8);
  EXPECT_NEAR(observable_expectation(obs, read_state_file(state)), dense.energy, 1e-8);
}

TEST(Optimize, OneQubitAnalytic) {
  const auto h = write_tmp("h34.txt", "3.0 X\n4.0 Z\n");
  const auto j = result_of(run({"optimize", "--hamiltonian", h}));
  const auto row = j["beta"]["rows"][0];
  EXPECT_NEAR(row[0].get<double>(), 3.0 / 7.0, 1e-5);
  EXPECT_NEAR(row[1].get<double>(), 0.0, 1e-5);
  EXPECT_NEAR(row[2].get<double>(), 4.0 / 7.0, 1e-5);
  EXPECT_TRUE(j["converged"].get<bool>());
}

TEST(Optimize, ZZCsvRows) {
  const auto h = write_tmp("zz.txt", "1.0 ZZ\n");
  const auto r = run({"--output", "csv", "optimize", "--hamiltonian", h});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("qubit,X,Y,Z\n1,0,0,1\n2,0,0,1\n"), std::string::npos) << r.out;
}

TEST(Optimize, FullMatchesLibraryAndWritesFiles) {
  const auto h = write_tmp("zc.txt", "1.0 ZI\n1.0 ZZ\n");
  const auto beta_out = std::string(LBCS_TEST_TMPDIR) + "/zc_beta.json";
  const auto result_out = std::string(LBCS_TEST_TMPDIR) + "/zc_result.json";
  const auto r = run({"optimize", "--hamiltonian", h, "--cost", "full", "--reference", "00",
                      "--out", beta_out, "--result", result_out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lib = optimize(read_observable_file(h), FullCost{SingleReference::from_bits("00")}, {});
  EXPECT_EQ(read_beta_file(beta_out), lib.beta);
  const auto saved = parse_json(read_text_file(result_out));
  EXPECT_EQ(saved["cost"].get<double>(), lib.cost);
  EXPECT_EQ(saved["iterations"].get<std::size_t>(), lib.iterations);
}

TEST(Optimize, FullWithoutReferenceIsInputError) {
  const auto h = write_tmp("zc.txt", "1.0 ZI\n1.0 ZZ\n");
  EXPECT_EQ(run({"optimize", "--hamiltonian", h, "--cost", "full"}).code, kInputFailure);
}

TEST(Optimize, BadDeltaIsInputError) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  EXPECT_EQ(run({"optimize", "--hamiltonian", h, "--delta", "1.5"}).code, kInputFailure);
}

TEST(Optimize, NonConvergenceWarnsButSucceeds) {
  const auto h = write_tmp("h34.txt", "3.0 X\n4.0 Z\n");
  const auto r = run({"optimize", "--hamiltonian", h, "--max-iter", "2"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_FALSE(parse_json(r.out)["result"]["converged"].get<bool>());
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Variance, ShadowsOnZeroState) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  const auto j = result_of(run({"variance", "--hamiltonian", h, "--estimator", "shadows",
                                "--state", "reference", "--reference", "0"}));
  EXPECT_DOUBLE_EQ(j["rows"][0]["variance"].get<double>(), 2.0);
}

TEST(Variance, L1OnGroundState) {
  const auto h = write_tmp("xz.txt", "1.0 X\n1.0 Z\n");
  const auto j = result_of(run({"--full-precision", "variance", "--hamiltonian", h,
                                "--estimator", "l1", "--state", "ground"}));
  EXPECT_NEAR(j["rows"][0]["variance"].get<double>(), 2.0, 1e-9);
}

TEST(Variance, StateFileRoundTrip) {
  std::mt19937_64 rng(5);
  const auto obs = oracle::random_observable(3, 6, rng);
  const auto psi = oracle::random_state(3, rng);
  const auto h = write_tmp("rand3.txt", serialize_observable(obs));
  const auto state = std::string(LBCS_TEST_TMPDIR) + "/rand3.state";
  write_state_file(state, psi);
  const auto beta = oracle::random_beta(3, rng);
  const auto beta_path = write_tmp("rand3_beta.json", beta_to_json(beta).dump());
  const auto j = result_of(run({"--full-precision", "variance", "--hamiltonian", h, "--estimator",
                                "l1,ldf,shadows,lbcs", "--beta", beta_path, "--state", "file",
                                "--state-file", state}));
  const auto rows = j["rows"];
  ASSERT_EQ(rows.size(), 4u);
  const auto b = read_beta_file(beta_path);
  EXPECT_NEAR(rows[0]["variance"].get<double>(), oracle::l1_moments(obs, oracle::to_vector(psi)).variance(), 1e-9);
  EXPECT_NEAR(rows[2]["variance"].get<double>(),
              oracle::shadow_moments(obs, oracle::to_vector(psi), uniform_beta(3)).variance(), 1e-9);
  EXPECT_NEAR(rows[3]["variance"].get<double>(), oracle::shadow_moments(obs, oracle::to_vector(psi), b).variance(),
              1e-9);
}

TEST(Variance, LbcsWithoutBetaIsInputError) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  EXPECT_EQ(run({"variance", "--hamiltonian", h, "--estimator", "lbcs"}).code, kInputFailure);
}

TEST(Variance, DivergentBetaIsNumericalError) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  const auto b = write_tmp("bx.json", R"({"n":1,"rows":[[1,0,0]]})");
  const auto r = run({"variance", "--hamiltonian", h, "--estimator", "lbcs", "--beta", b});
  EXPECT_EQ(r.code, kNumericalFailure);
}

TEST(Simulate, DeterministicEstimateOfZ) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  const auto b = write_tmp("bz.json", R"({"n":1,"rows":[[0,0,1]]})");
  const auto j = result_of(run({"simulate", "--hamiltonian", h, "--estimator", "lbcs", "--beta", b,
                                "--state", "reference", "--reference", "0", "--shots", "37"}));
  EXPECT_EQ(j["mean"].get<double>(), 1.0);
  EXPECT_EQ(j["shots"].get<std::uint64_t>(), 37u);
}

TEST(Simulate, SameSeedIsByteIdentical) {
  const auto h = write_tmp("xz.txt", "1.0 X\n1.0 Z\n");
  const std::vector<std::string> args = {"simulate", "--hamiltonian", h, "--estimator", "shadows",
                                         "--shots", "20000", "--seed", "99"};
  auto a = args, b = args;
  b.insert(b.begin(), {"--threads", "1"});
  EXPECT_EQ(run(a).out, run(a).out);
  const auto ja = parse_json(run(a).out)["result"];
  const auto jb = parse_json(run(b).out)["result"];
  EXPECT_EQ(ja, jb);
}

TEST(Simulate, MeanWithinStatisticalBound) {
  const auto h = write_tmp("xz.txt", "1.0 X\n1.0 Z\n");
  const auto j = result_of(run({"--full-precision", "simulate", "--hamiltonian", h, "--estimator",
                                "shadows", "--shots", "1000000", "--seed", "3"}));
  // Uniform shadows on the ground state: variance 3 + 3 - 2 = 4.
  EXPECT_LE(std::abs(j["mean"].get<double>() + std::sqrt(2.0)), 5.0 * std::sqrt(4.0 / 1e6));
}

TEST(Simulate, ZeroShotsIsInputError) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  EXPECT_EQ(run({"simulate", "--hamiltonian", h, "--estimator", "l1", "--shots", "0"}).code,
            kInputFailure);
}

TEST(Group, SingleCollection) {
  const auto h = write_tmp("g1.txt", "1.0 XI\n1.0 IZ\n1.0 XZ\n");
  const auto j = result_of(run({"group", "--hamiltonian", h}));
  EXPECT_EQ(j["K"].get<std::size_t>(), 1u);
  EXPECT_TRUE(j["bound_holds"].get<bool>());
}

TEST(Group, TriangleNeedsThree) {
  const auto h = write_tmp("g3.txt", "1.0 XX\n1.0 ZZ\n1.0 XZ\n");
  const auto out = std::string(LBCS_TEST_TMPDIR) + "/g3_scheme.json";
  const auto j = result_of(run({"group", "--hamiltonian", h, "--out", out}));
  EXPECT_EQ(j["K"].get<std::size_t>(), 3u);
  EXPECT_EQ(j["max_degree"].get<std::size_t>(), 2u);
  EXPECT_TRUE(j["bound_holds"].get<bool>());
  EXPECT_EQ(read_scheme_file(out).size(), 3u);
}

TEST(Compare, RowsAndShadowsSpecialization) {
  const auto h = write_tmp("cmp.txt", "0.5 ZI\n0.3 IZ\n0.2 XX\n0.1 YY\n0.4 ZZ\n");
  const auto j = result_of(run({"--full-precision", "compare", "--hamiltonian", h, "--reference", "01"}));
  const auto rows = j["rows"];
  ASSERT_EQ(rows.size(), 5u);
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r["estimator"].get<std::string>());
  EXPECT_EQ(names, (std::vector<std::string>{"l1", "ldf", "shadows", "lbcs", "lbcs_diag"}));

  const auto obs = read_observable_file(h);
  const auto g = lanczos_ground(obs, {});
  EXPECT_NEAR(rows[2]["variance"].get<double>(), exact_variance(obs, g.state, uniform_beta(2)),
              1e-9);
  for (const auto& r : rows) EXPECT_LE(r["variance"].get<double>(), rows[2]["variance"].get<double>() + 1e-9);
}

TEST(Compare, MultiReferenceRow) {
  const auto h = write_tmp("cmp.txt", "0.5 ZI\n0.3 IZ\n0.2 XX\n0.1 YY\n0.4 ZZ\n");
  const auto ref = write_tmp(
      "mr.json", R"({"type":"multi","components":[{"bits":"01","amplitude":[0.8,0]},{"bits":"10","amplitude":[0.6,0]}]})");
  const auto j = result_of(run({"compare", "--hamiltonian", h, "--reference", ref}));
  EXPECT_EQ(j["rows"][3]["estimator"].get<std::string>(), "lbcs_multiref");
}

TEST(Encoding, CsvAndJsonCarryIdenticalNumbers) {
  const auto h = write_tmp("h34.txt", "3.0 X\n4.0 Z\n");
  for (const char* prec : {"--threads=0", "--full-precision"}) {
    const auto json = result_of(run({prec, "optimize", "--hamiltonian", h}));
    const auto csv = run({prec, "--output", "csv", "optimize", "--hamiltonian", h});
    std::istringstream in(csv.out);
    std::string line;
    while (std::getline(in, line) && line.rfind("1,", 0) != 0) {
    }
    std::vector<double> cells;
    std::stringstream ss(line.substr(2));
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(std::stod(cell));
    ASSERT_EQ(cells.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(cells[k], json["beta"]["rows"][0][k].get<double>());
  }
}

TEST(Manifest, EmbedsDigestSeedAndVersion) {
  const auto h = write_tmp("z.txt", "1.0 Z\n");
  const auto r = run({"simulate", "--hamiltonian", h, "--estimator", "shadows", "--shots", "10",
                      "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = parse_json(r.out)["manifest"];
  EXPECT_EQ(m["command"], "simulate");
  EXPECT_EQ(m["seeds"]["shots"], 42);
  EXPECT_EQ(m["inputs"]["hamiltonian"]["sha256"], sha256_file(h));
  EXPECT_FALSE(m["version"].get<std::string>().empty());
}

TEST(Sha256, KnownDigest) {
  const auto p = write_tmp("abc.txt", "abc");
  EXPECT_EQ(sha256_file(p), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ExitCodes, ParseAndInputFailures) {
  EXPECT_EQ(run({}).code, kInputFailure);
  EXPECT_EQ(run({"ground"}).code, kInputFailure);
  EXPECT_EQ(run({"ground", "--hamiltonian", "/nonexistent/h.txt"}).code, kInputFailure);
  const auto bad = write_tmp("bad.txt", "1.0 Q\n");
  EXPECT_EQ(run({"ground", "--hamiltonian", bad}).code, kInputFailure);
  EXPECT_EQ(run({"--output", "xml", "group", "--hamiltonian", bad}).code, kInputFailure);
  EXPECT_EQ(run({"--help"}).code, kSuccess);
}

TEST(ExitCodes, LanczosNonConvergenceIsNumerical) {
  std::mt19937_64 rng(2);
  const auto h = write_tmp("rand5.txt", serialize_observable(oracle::random_observable(5, 20, rng)));
  const auto r = run({"ground", "--hamiltonian", h, "--krylov", "2", "--max-iter", "1",
                      "--tol", "1e-14"});
  EXPECT_EQ(r.code, kNumericalFailure) << r.out;
}

}  // namespace
}  // namespace lbcs::cli
