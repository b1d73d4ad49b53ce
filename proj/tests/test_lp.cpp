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

#include "oracles.hpp"
#include "suite.hpp"

using namespace btt;
using Q = Rational;

namespace {

std::string certificate_error(const SignedGraph<Q>& g, const LpSolution<Q>& sol) {
  if (!sol.dual) return "no dual";
  return oracle::lp_certificate_error(g, sol.primal.values, oracle::bad_triple_edges(g), sol.dual->values);
}

}  // namespace

TEST(ExactLp, FigureTwoValueIsFour) {
  auto g = gen_figure2<Q>();
  auto sol = solve_exact(g);
  EXPECT_EQ(sol.status, LpStatus::exact_optimal);
  EXPECT_EQ(sol.primal.objective, 4);
  EXPECT_EQ(sol.lower, 4);
  EXPECT_EQ(sol.upper, 4);
  EXPECT_EQ(certificate_error(g, sol), "");
}

TEST(ExactLp, IntegralityGapIsHalfN) {
  for (int n = 2; n <= 8; ++n) {
    auto g = gen_integrality_gap<Q>(n);
    auto sol = solve_exact(g);
    EXPECT_EQ(sol.primal.objective, frac(n, 2)) << n;
    EXPECT_EQ(certificate_error(g, sol), "") << n;
  }
}

TEST(ExactLp, TriangleFreeGivesZero) {
  auto g = suite::complete_from_mask(5, 0);
  auto sol = solve_exact(g);
  EXPECT_EQ(sol.primal.objective, 0);
  ASSERT_TRUE(sol.dual);
  EXPECT_TRUE(sol.dual->values.empty());
}

TEST(ExactLp, SingleBadTriangleWithWeights) {
  auto g = SignedGraph<Q>::from_edges(3, {{0, 1, Sign::positive, Q(5)}, {0, 2, Sign::positive, Q(2, 3)},
                                          {1, 2, Sign::negative, Q(7)}});
  auto sol = solve_exact(g);
  EXPECT_EQ(sol.primal.objective, Q(2, 3));
  EXPECT_EQ(sol.primal.values[1], 1);
  EXPECT_EQ(certificate_error(g, sol), "");
}

TEST(ExactLp, CertificateOnRandomSuite) {
  for (const auto& inst : suite::random_suite(120, 17)) {
    auto sol = solve_exact(inst.graph);
    EXPECT_EQ(certificate_error(inst.graph, sol), "") << inst.id;
    for (const auto& v : sol.primal.values) {
      EXPECT_GE(v, 0);
      EXPECT_LE(v, 1);
    }
  }
}

TEST(ExactLp, FloatGraphAgreesWithRational) {
  for (const auto& inst : suite::random_suite(30, 23)) {
    auto gd = convert_graph<double>(inst.graph);
    auto q = solve_exact(inst.graph);
    auto d = solve_exact(gd);
    EXPECT_NEAR(d.primal.objective, q.primal.objective.get_d(), 1e-12) << inst.id;
  }
}

TEST(ExactLp, CapacityGuard) {
  auto g = gen_figure2<Q>();
  ExactLpOptions opts;
  opts.max_constraints = 3;
  EXPECT_THROW(solve_exact(g, opts), CapacityError);
}

TEST(Feasibility, FractionalChecks) {
  auto g = gen_figure2<Q>();
  std::vector<Q> half(g.num_edges(), Q(1, 3));
  auto x = make_fractional_cover(g, half);
  EXPECT_TRUE(check_fractional_feasibility(g, x));
  EXPECT_EQ(x.objective, 5);
  std::vector<Q> low(g.num_edges(), Q(1, 4));
  EXPECT_FALSE(check_fractional_feasibility(g, make_fractional_cover(g, low)));
  std::vector<Q> big(g.num_edges(), Q(3));
  EXPECT_EQ(make_fractional_cover(g, big).values[0], 1);
  EXPECT_THROW(make_fractional_cover(g, std::vector<Q>(2)), InputError);
}

TEST(Packing, GreedyIsMaximalAndDisjoint) {
  for (const auto& inst : suite::random_suite(80, 31)) {
    const auto& g = inst.graph;
    auto tris = enumerate_bad_triangles(g);
    auto pack = greedy_maximal_packing(tris, g.num_edges());
    std::vector<int> used(g.num_edges(), 0);
    for (const auto& t : pack) {
      for (EdgeId e : t.edges) EXPECT_EQ(used[e]++, 0);
    }
    for (const auto& t : tris) {
      EXPECT_TRUE(used[t.edges[0]] || used[t.edges[1]] || used[t.edges[2]]) << "not maximal";
    }
  }
}

TEST(Packing, DualFeasibilityChecker) {
  auto g = gen_figure2<Q>();
  auto tris = enumerate_bad_triangles(g);
  FractionalPacking<Q> y;
  y.values.assign(tris.size(), Q(3, 4));
  EXPECT_FALSE(check_packing_feasibility(g, tris, y));
  // every edge lies in at most two of the eight triangles
  y.values.assign(tris.size(), Q(1, 2));
  EXPECT_TRUE(check_packing_feasibility(g, tris, y));
}

TEST(Mwu, WithinEpsOfExactRational) {
  for (const auto& inst : suite::random_suite(25, 41)) {
    const auto& g = inst.graph;
    auto exact = solve_exact(g).primal.objective;
    auto sol = solve_mwu(g, 0.1);
    EXPECT_EQ(sol.status, LpStatus::eps_approximate);
    EXPECT_TRUE(check_fractional_feasibility(g, sol.primal)) << inst.id;
    ASSERT_TRUE(sol.dual);
    auto tris = enumerate_bad_triangles(g);
    EXPECT_TRUE(check_packing_feasibility(g, tris, *sol.dual)) << inst.id;
    EXPECT_LE(sol.primal.objective, exact * Q(11, 10)) << inst.id;
    EXPECT_GE(sol.lower * Q(11, 10), exact) << inst.id;
    EXPECT_LE(sol.lower, exact);
    EXPECT_GE(sol.upper, exact);
  }
}

TEST(Mwu, FloatModeAndSmallEps) {
  auto g = convert_graph<double>(gen_integrality_gap<Q>(6));
  auto sol = solve_mwu(g, 0.02);
  EXPECT_LE(sol.primal.objective, 3.0 * 1.02 + 1e-9);
  EXPECT_GE(sol.lower * 1.02, 3.0 - 1e-9);
  EXPECT_TRUE(check_fractional_feasibility(g, sol.primal, 1e-9));
}

TEST(Mwu, RejectsBadEpsAndReportsNonConvergence) {
  auto g = gen_figure2<Q>();
  EXPECT_THROW(solve_mwu(g, 0.0), InputError);
  EXPECT_THROW(solve_mwu(g, 1.5), InputError);
  MwuOptions opts;
  opts.max_iterations = 1;
  try {
    solve_mwu(g, 0.01, opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_LE(e.lower(), 4.0 + 1e-9);
    EXPECT_GE(e.upper(), 4.0 - 1e-9);
  }
}

TEST(Mwu, ZeroWeightEdgesAreFree) {
  auto g = SignedGraph<Q>::from_edges(3, {{0, 1, Sign::positive, Q(0)}, {0, 2, Sign::positive, Q(1)},
                                          {1, 2, Sign::negative, Q(1)}});
  auto sol = solve_mwu(g, 0.1);
  EXPECT_EQ(sol.primal.objective, 0);
  EXPECT_TRUE(check_fractional_feasibility(g, sol.primal));
}
