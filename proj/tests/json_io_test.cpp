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

#include <gtest/gtest.h>

#include <cmath>

#include "lbcs/error.hpp"

namespace lbcs {
namespace {

TEST(RoundSignificant, Digits) {
  EXPECT_EQ(round_significant(0.428571428571, 6), 0.428571);
  EXPECT_EQ(round_significant(123456789.0, 3), 123000000.0);
  EXPECT_EQ(round_significant(0.1 + 0.2, kFullDigits), 0.1 + 0.2);
}

TEST(BetaJson, RoundTrip) {
  const BetaDistribution b({{0.1, 0.2, 0.7}, {0.0, 0.0, 1.0}});
  const auto j = beta_to_json(b);
  EXPECT_EQ(j.dump(), R"({"n":2,"rows":[[0.1,0.2,0.7],[0.0,0.0,1.0]]})");
  EXPECT_EQ(beta_from_json(j), b);
}

TEST(BetaJson, LenientRowsAreRenormalized) {
  const auto b = beta_from_json(parse_json(R"({"n":1,"rows":[[0.428571,0,0.571429]]})"));
  EXPECT_NEAR(b.row(0)[0] + b.row(0)[2], 1.0, 1e-15);
  EXPECT_THROW(beta_from_json(parse_json(R"({"n":1,"rows":[[0.5,0,0.6]]})")), InputError);
  EXPECT_THROW(beta_from_json(parse_json(R"({"n":2,"rows":[[0,0,1]]})")), InputError);
  EXPECT_THROW(beta_from_json(parse_json(R"({"n":1,"rows":[[0,1]]})")), InputError);
  EXPECT_THROW(beta_from_json(parse_json(R"({"rows":[[0,0,1]]})")), InputError);
  EXPECT_THROW(parse_json("{"), InputError);
}

TEST(ReferenceJson, SingleAndMulti) {
  const auto single = reference_from_json(parse_json(R"({"type":"single","bits":"0101"})"));
  ASSERT_TRUE(std::holds_alternative<SingleReference>(single));
  EXPECT_EQ(std::get<SingleReference>(single).signs(), (std::vector<int>{1, -1, 1, -1}));

  const double s = 1.0 / std::sqrt(2.0);
  Json j = {{"type", "multi"},
            {"components",
             {{{"bits", "00"}, {"amplitude", {s, 0.0}}}, {{"bits", "11"}, {"amplitude", {0.0, s}}}}}};
  const auto multi = reference_from_json(j);
  ASSERT_TRUE(std::holds_alternative<MultiReference>(multi));
  const auto& m = std::get<MultiReference>(multi);
  EXPECT_EQ(m.components().size(), 2u);
  EXPECT_EQ(m.components()[1].bits, 0b11u);
  EXPECT_EQ(m.components()[1].amplitude, Complex(0.0, s));
  EXPECT_EQ(num_qubits(multi), 2u);

  EXPECT_THROW(reference_from_json(parse_json(R"({"type":"other"})")), InputError);
  EXPECT_THROW(reference_from_json(parse_json(R"({"type":"multi","components":[]})")), InputError);
}

TEST(SchemeJson, RoundTrip) {
  GroupingScheme s{{{PauliString::parse("ZZII"), PauliString::parse("ZIII")},
                    {PauliString::parse("XIII")}},
                   {PauliString::parse("ZZZZ"), PauliString::parse("XZZZ")},
                   {0.75, 0.25}};
  const auto j = scheme_to_json(s);
  EXPECT_EQ(j.dump(),
            R"({"collections":[["ZZII","ZIII"],["XIII"]],"bases":["ZZZZ","XZZZ"],"kappa":[0.75,0.25]})");
  const auto back = scheme_from_json(j);
  EXPECT_EQ(back.collections, s.collections);
  EXPECT_EQ(back.bases, s.bases);
  EXPECT_EQ(back.kappa, s.kappa);
  EXPECT_THROW(scheme_from_json(parse_json(R"({"collections":[["Z"]],"bases":[],"kappa":[1]})")),
               InputError);
}

TEST(ReportJson, Fields) {
  const auto j = report_to_json({1.0 / 3.0, 2.0, 10, 42}, 6);
  EXPECT_EQ(j.dump(), R"({"mean":0.333333,"variance":2.0,"shots":10,"seed":42})");
}

TEST(OptimizeResultJson, Fields) {
  OptimizeResult r;
  r.beta = BetaDistribution({{3.0 / 7, 0.0, 4.0 / 7}});
  r.cost = 49.0;
  r.iterations = 12;
  r.converged = true;
  r.kkt_residual = 1e-12;
  const auto j = optimize_result_to_json(r, 6);
  EXPECT_EQ(j["beta"]["rows"][0][0].get<double>(), 0.428571);
  EXPECT_EQ(j["cost"].get<double>(), 49.0);
  EXPECT_EQ(j["iterations"].get<int>(), 12);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_EQ(j["floored_updates"].get<int>(), 0);
}

}  // namespace
}  // namespace lbcs
