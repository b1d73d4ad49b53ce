// Copyright 2026 The btt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "suite.hpp"

using namespace btt;
using Q = Rational;

TEST(ExactBtt, FigureTwoIsFour) {
  auto g = gen_figure2<Q>();
  auto res = exact_btt(g);
  EXPECT_EQ(res.value, 4);
  EXPECT_TRUE(is_feasible_cover(g, *res.cover));
  EXPECT_EQ(*oracle::min_cover_weight(g), 4);
}

TEST(ExactBtt, IntegralityGapIsNMinusOne) {
  for (int n = 2; n <= 6; ++n) {
    auto g = gen_integrality_gap<Q>(n);
    EXPECT_EQ(exact_btt(g).value, n - 1);
    EXPECT_EQ(*oracle::min_cover_weight(g), n - 1);
  }
}

TEST(ExactBtt, MatchesSubsetEnumeration) {
  std::size_t checked = 0;
  for (const auto& inst : suite::random_suite(150, 61)) {
    auto brute = oracle::min_cover_weight(inst.graph, false, 20);
    if (!brute) continue;
    ++checked;
    auto res = exact_btt(inst.graph);
    EXPECT_EQ(res.value, *brute) << inst.id;
    EXPECT_EQ(res.cover->cost(), res.value);
    // LP bound disabled must agree
    ExactOptions opts;
    opts.use_lp_bound = false;
    EXPECT_EQ(exact_btt(inst.graph, opts).value, *brute) << inst.id;
  }
  EXPECT_GE(checked, 60u);
}

TEST(ExactBtt, FloatWeightsAgree) {
  for (const auto& inst : suite::random_suite(40, 67)) {
    auto gd = convert_graph<double>(inst.graph);
    EXPECT_NEAR(exact_btt(gd).value, exact_btt(inst.graph).value.get_d(), 1e-9) << inst.id;
  }
}

TEST(ExactBtt, EnumeratesAllOptima) {
  for (const auto& inst : suite::random_suite(60, 71)) {
    std::vector<std::vector<EdgeId>> brute_optima;
    auto brute = oracle::min_cover_weight(inst.graph, false, 16, &brute_optima);
    if (!brute) continue;
    ExactOptions opts;
    opts.enumerate_all = true;
    opts.max_optima = 100000;
    auto res = exact_btt(inst.graph, opts);
    // Search only considers edges inside bad triangles, as does the oracle.
    std::set<std::vector<EdgeId>> got;
    for (const auto& c : res.optima) got.insert(c.ids());
    std::set<std::vector<EdgeId>> want(brute_optima.begin(), brute_optima.end());
    EXPECT_EQ(got, want) << inst.id;
  }
}

TEST(ExactBtt, PositiveOnlyRestriction) {
  for (const auto& inst : suite::random_suite(60, 73)) {
    auto brute = oracle::min_cover_weight(inst.graph, true, 18);
    if (!brute) continue;
    auto res = exact_btt_positive_only(inst.graph);
    EXPECT_EQ(res.value, *brute) << inst.id;
    for (EdgeId e : res.cover->ids()) EXPECT_EQ(inst.graph.sign(e), Sign::positive);
  }
}

TEST(ExactBtt, BudgetExhaustedCarriesBounds) {
  RandomGraphSpec spec;
  spec.n = 12;
  spec.seed = 5;
  auto g = gen_random<Q>(spec);
  ExactOptions opts;
  opts.node_budget = 3;
  try {
    exact_btt(g, opts);
    FAIL() << "expected BudgetExhausted";
  } catch (const BudgetExhausted& e) {
    EXPECT_LE(e.lower(), e.upper());
    EXPECT_GT(e.upper(), 0);
  }
  opts.node_budget = 1'000'000;
  opts.max_triangles = 2;
  EXPECT_THROW(exact_btt(g, opts), CapacityError);
}

TEST(ExactBtt, TriangleFree) {
  auto g = suite::complete_from_mask(5, 0);
  auto res = exact_btt(g);
  EXPECT_EQ(res.value, 0);
  EXPECT_TRUE(res.cover->empty());
}

TEST(ExactCc, FigureTwoIsFour) {
  auto g = gen_figure2<Q>();
  auto res = exact_cc(g);
  EXPECT_EQ(res.value, 4);
  EXPECT_EQ(cc_cost(g, *res.clustering), 4);
  EXPECT_EQ(oracle::min_cc(g), 4);
}

TEST(ExactCc, MatchesPartitionEnumeration) {
  for (const auto& inst : suite::random_suite(90, 79)) {
    auto res = exact_cc(inst.graph);
    EXPECT_EQ(res.value, oracle::min_cc(inst.graph)) << inst.id;
    EXPECT_EQ(cc_cost(inst.graph, *res.clustering), res.value);
  }
}

TEST(ExactCc, CapacityGuard) {
  std::vector<std::pair<NodeId, NodeId>> none;
  auto g = SignedGraph<Q>::complete_from_positive(17, none);
  EXPECT_THROW(exact_cc(g), CapacityError);
}

TEST(Survey, RatiosWithinBoundsOnCompleteGraphs) {
  std::vector<SurveyInstance<Q>> inst;
  for (const auto& s : suite::random_suite(40, 83)) inst.push_back({s.id, s.seed, s.graph});
  auto rep = ratio_survey<Q>(inst);
  ASSERT_EQ(rep.rows.size(), inst.size());
  EXPECT_EQ(rep.errors, 0u);
  EXPECT_EQ(rep.violations, 0u);
  for (const auto& r : rep.rows) {
    ASSERT_TRUE(r.ratio);
    ASSERT_TRUE(r.opt_delta && r.opt_cc);
    EXPECT_LE(*r.opt_delta, *r.opt_cc) << r.id;
    if (*r.opt_delta == 0) continue;
    EXPECT_GE(*r.ratio, 1) << r.id;
  }
}

TEST(Survey, CapacityErrorsAreRecordedNotThrown) {
  std::vector<SurveyInstance<Q>> inst;
  inst.push_back({"big", 1, SignedGraph<Q>::complete_from_positive(20, {{0, 1}, {1, 2}})});
  auto rep = ratio_survey<Q>(inst);
  EXPECT_EQ(rep.errors, 1u);
  EXPECT_FALSE(rep.rows[0].error.empty());
}
