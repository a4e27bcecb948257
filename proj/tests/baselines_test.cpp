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

#include "lbcs/baselines.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lbcs/error.hpp"
#include "oracles.hpp"

namespace lbcs {
namespace {

PauliString P(const char* s) { return PauliString::parse(s); }

StateVector plus(std::size_t n) {
  return StateVector::normalized(n, Amplitudes(std::size_t{1} << n, 1.0));
}

// Independent edge test on the text form.
bool conflicts(const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 'I' && b[i] != 'I' && a[i] != b[i]) return true;
  }
  return false;
}

void expect_proper(const TermGraph& g, const std::vector<std::vector<std::size_t>>& classes) {
  std::vector<int> color(g.vertices.size(), -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t v : classes[c]) {
      ASSERT_EQ(color[v], -1) << "vertex colored twice";
      color[v] = static_cast<int>(c);
    }
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    ASSERT_NE(color[v], -1) << "vertex left uncolored";
    for (std::size_t u = v + 1; u < g.vertices.size(); ++u) {
      if (conflicts(g.vertices[v].to_string(), g.vertices[u].to_string())) {
        EXPECT_NE(color[u], color[v]);
      }
    }
  }
}

TEST(L1Protocol, Examples) {
  const auto a = l1_protocol(parse_observable("5 I\n1 Z"), StateVector::from_bits("0"), 1000, 1);
  EXPECT_EQ(a.mean, 6.0);
  EXPECT_EQ(a.variance, 0.0);
  const auto b = l1_protocol(parse_observable("-1 Z"), StateVector::from_bits("0"), 1000, 1);
  EXPECT_EQ(b.mean, -1.0);
  const std::uint64_t shots = 1'000'000;
  const auto c = l1_protocol(parse_observable("1 X\n1 Z"), StateVector::from_bits("0"), shots, 2);
  EXPECT_NEAR(c.mean, 1.0, 5 * std::sqrt(3.0) / 1e3);
  EXPECT_NEAR(c.variance, 3.0, 0.05 * 3.0);
  EXPECT_THROW(l1_protocol(parse_observable("1 II"), plus(2), 10, 1), InputError);
}

TEST(L1ExactVariance, Examples) {
  EXPECT_NEAR(l1_exact_variance(parse_observable("1 X\n1 Z"), StateVector::from_bits("0")), 3.0,
              1e-14);
  EXPECT_NEAR(l1_exact_variance(parse_observable("1 Z"), StateVector::from_bits("0")), 0.0, 1e-14);
  EXPECT_NEAR(l1_exact_variance(parse_observable("5 I\n1 Z"), StateVector::from_bits("0")), 0.0,
              1e-14);
}

TEST(L1ExactVariance, MatchesEnumeration) {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto h = oracle::random_observable(n, 1 + trial % 10, rng);
    const auto v = oracle::random_state(n, rng);
    const auto m = oracle::l1_moments(h, oracle::to_vector(v));
    EXPECT_NEAR(l1_exact_variance(h, v), m.variance(), 1e-10);
  }
}

TEST(TermGraph, Examples) {
  const auto tri = build_term_graph(parse_observable("1 XX\n1 ZZ\n1 XZ"));
  EXPECT_EQ(tri.edge_count(), 3u);
  EXPECT_EQ(tri.max_degree(), 2u);
  EXPECT_EQ(build_term_graph(parse_observable("1 XI\n1 IZ\n1 XZ")).edge_count(), 0u);
  const auto single = build_term_graph(parse_observable("1 Z"));
  EXPECT_EQ(single.vertices.size(), 1u);
  EXPECT_EQ(single.edge_count(), 0u);
}

TEST(TermGraph, EdgesMatchBruteForce) {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_observable(4, 2 + trial % 20, rng);
    const auto g = build_term_graph(h);
    std::size_t edges = 0;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      EXPECT_EQ(g.vertices[v], h.strings()[v]);
      for (std::size_t u = 0; u < g.vertices.size(); ++u) {
        const bool want = conflicts(g.vertices[v].to_string(), g.vertices[u].to_string());
        const auto& adj = g.adjacency[v];
        EXPECT_EQ(std::find(adj.begin(), adj.end(), u) != adj.end(), want);
        if (want && u > v) ++edges;
      }
    }
    EXPECT_EQ(g.edge_count(), edges);
  }
}

TEST(LdfColoring, Examples) {
  const auto tri = build_term_graph(parse_observable("1 XX\n1 ZZ\n1 XZ"));
  EXPECT_EQ(ldf_coloring(tri).size(), 3u);
  const auto free = build_term_graph(parse_observable("1 XI\n1 IZ\n1 XZ"));
  EXPECT_EQ(ldf_coloring(free).size(), 1u);
}

TEST(LdfColoring, ProperAndWithinDegreeBound) {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = oracle::random_observable(4, 10, rng);
    const auto g = build_term_graph(h);
    const auto classes = ldf_coloring(g);
    expect_proper(g, classes);
    EXPECT_LE(classes.size(), 1 + g.max_degree());
  }
}

TEST(LdfColoring, DeterministicTieBreak) {
  // XI and ZI conflict and tie on degree, so XI is colored first; IY is
  // isolated and joins color 0.
  const auto g = build_term_graph(parse_observable("1 ZI\n1 XI\n1 IY"));
  const auto classes = ldf_coloring(g);
  ASSERT_EQ(classes.size(), 2u);
  std::vector<std::string> first;
  for (std::size_t v : classes[0]) first.push_back(g.vertices[v].to_string());
  EXPECT_EQ(first, (std::vector<std::string>{"IY", "XI"}));
}

TEST(RepresentativeBasis, Examples) {
  const std::vector<PauliString> a{P("XI"), P("IZ"), P("XZ")};
  EXPECT_EQ(representative_basis(a), P("XZ"));
  const std::vector<PauliString> b{P("ZI")};
  EXPECT_EQ(representative_basis(b), P("ZZ"));
  const std::vector<PauliString> c{P("XX"), P("XI")};
  EXPECT_EQ(representative_basis(c), P("XX"));
  const std::vector<PauliString> bad{P("XI"), P("ZI")};
  EXPECT_THROW(representative_basis(bad), InputError);
}

TEST(KappaWeights, Examples) {
  const auto h = parse_observable("3 Z\n1 X");
  EXPECT_EQ(kappa_weights(h, {{P("Z"), P("X")}}), std::vector<double>{1.0});
  const auto k = kappa_weights(h, {{P("Z")}, {P("X")}});
  EXPECT_DOUBLE_EQ(k[0], 0.75);
  EXPECT_DOUBLE_EQ(k[1], 0.25);
}

TEST(LdfGrouping, ValidSchemeOnRandomInstances) {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = oracle::random_observable(4, 2 + trial % 15, rng);
    const auto s = ldf_grouping(h);
    EXPECT_NO_THROW(validate_scheme(h, s));
    double total = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      total += s.kappa[k];
      for (const auto& q : s.collections[k]) EXPECT_TRUE(agrees_with_basis(q, s.bases[k]));
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ValidateScheme, RejectsBrokenSchemes) {
  const auto h = parse_observable("1 ZI\n1 XI\n1 IZ");
  auto s = ldf_grouping(h);
  auto missing = s;
  missing.collections.back().pop_back();
  EXPECT_THROW(validate_scheme(h, missing), InputError);
  auto zero = s;
  zero.kappa.assign(zero.kappa.size(), 0.0);
  zero.kappa[0] = 1.0;
  EXPECT_THROW(validate_scheme(h, zero), InputError);
  GroupingScheme clash{{{P("ZI"), P("XI"), P("IZ")}}, {P("ZZ")}, {1.0}};
  EXPECT_THROW(validate_scheme(h, clash), InputError);
}

TEST(GroupingProtocol, Examples) {
  const auto h = parse_observable("1 ZI\n1 IZ");
  const auto s = ldf_grouping(h);
  ASSERT_EQ(s.size(), 1u);
  const auto a = grouping_protocol(h, s, StateVector::from_bits("00"), 1000, 3);
  EXPECT_EQ(a.mean, 2.0);
  EXPECT_EQ(a.variance, 0.0);
  const auto z = parse_observable("1 Z");
  const auto b = grouping_protocol(z, ldf_grouping(z), plus(1), 1'000'000, 4);
  EXPECT_NEAR(b.mean, 0.0, 5.0 / 1e3);
}

TEST(GroupingProtocol, UnbiasedOnRandomInstances) {
  std::mt19937_64 rng(157);
  const std::uint64_t shots = 1'000'000;
  for (int trial = 0; trial < 3; ++trial) {
    const auto h = oracle::random_observable(3, 6, rng);
    const auto v = oracle::random_state(3, rng);
    const auto s = ldf_grouping(h);
    const double var = grouping_exact_variance(h, s, v).variance;
    const auto r = grouping_protocol(h, s, v, shots, 50 + trial);
    EXPECT_NEAR(r.mean, observable_expectation(h, v), 5 * std::sqrt(var / shots));
    if (var >= 0.1) EXPECT_NEAR(r.variance, var, 0.05 * var);
  }
}

TEST(GroupingExactVariance, Examples) {
  const auto h = parse_observable("1 ZI\n1 IZ");
  const auto s = ldf_grouping(h);
  EXPECT_NEAR(grouping_exact_variance(h, s, StateVector::from_bits("00")).variance, 0.0, 1e-14);
  EXPECT_NEAR(grouping_exact_variance(h, s, plus(2)).variance, 2.0, 1e-14);
}

TEST(GroupingExactVariance, FirstFormulaMatchesEnumeration) {
  std::mt19937_64 rng(163);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto h = oracle::random_observable(n, 1 + trial % 10, rng);
    const auto v = oracle::random_state(n, rng);
    const auto s = ldf_grouping(h);
    const auto m = oracle::grouping_moments(h, s, oracle::to_vector(v));
    EXPECT_NEAR(grouping_exact_variance(h, s, v).variance, m.variance(), 1e-10);
  }
}

// The covariance form drops the between-group spread of the shot mean:
// variance - covariance_form = sum_k <H_k>^2 / kappa_k - <H_0>^2, which is
// non-negative and vanishes for one group.
TEST(GroupingExactVariance, CovarianceFormGap) {
  std::mt19937_64 rng(167);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto h = oracle::random_observable(n, 1 + trial % 10, rng);
    const auto v = oracle::random_state(n, rng);
    const auto s = ldf_grouping(h);
    const auto g = grouping_exact_variance(h, s, v);
    double spread = 0.0, total = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      double hk = 0.0;
      for (const auto& q : s.collections[k]) {
        for (const Term& t : h.terms()) {
          if (t.string == q) hk += t.coefficient * expectation(v, q);
        }
      }
      spread += hk * hk / s.kappa[k];
      total += hk;
    }
    EXPECT_NEAR(g.variance - g.covariance_form, spread - total * total, 1e-10);
    EXPECT_GE(g.variance - g.covariance_form, -1e-10);
    if (s.size() == 1) EXPECT_NEAR(g.variance, g.covariance_form, 1e-10);
  }
}

}  // namespace
}  // namespace lbcs
