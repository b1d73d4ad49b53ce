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

TEST(ThreeApprox, FigureTwo) {
  auto g = gen_figure2<Q>();
  auto out = standard_three_approx(g);
  auto tris = enumerate_bad_triangles(g);
  EXPECT_TRUE(is_feasible_cover<Q>(tris, out.cover, g.num_edges()));
  EXPECT_EQ(out.algorithm, "3approx");
  EXPECT_EQ(out.cover.size() % 3, 0u);
  EXPECT_LE(out.cover.cost(), 3 * out.lower_bound);
}

TEST(ThreeApprox, TriangleFreeIsEmpty) {
  auto g = suite::complete_from_mask(6, 0);
  auto out = standard_three_approx(g);
  EXPECT_TRUE(out.cover.empty());
  EXPECT_EQ(out.cover.cost(), 0);
  EXPECT_EQ(out.certified_ratio, 1.0);
}

TEST(ThreeApprox, SizeIsThreeTimesPacking) {
  for (const auto& inst : suite::random_suite(100, 3)) {
    const auto& g = inst.graph;
    auto tris = enumerate_bad_triangles(g);
    auto pack = greedy_maximal_packing(tris, g.num_edges());
    auto out = standard_three_approx(g);
    EXPECT_EQ(out.cover.size(), 3 * pack.size()) << inst.id;
    if (!inst.weighted) {
      EXPECT_EQ(out.cover.cost(), 3 * out.lower_bound) << inst.id;
    }
  }
}

TEST(MaxCut, LocalOptimumCutsHalf) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    SplitMix64 rng(s);
    std::vector<CutEdge<Q>> edges;
    for (NodeId u = 0; u < 7; ++u) {
      for (NodeId v = u + 1; v < 7; ++v) {
        if (rng.uniform01() < 0.5) edges.push_back({u, v, Q(1 + static_cast<long>(rng.bounded(3)))});
      }
    }
    auto res = local_search_max_cut<Q>(7, edges);
    EXPECT_GE(2 * res.cut_weight, res.total_weight);
    // no single flip improves
    for (NodeId v = 0; v < 7; ++v) {
      Q same(0), across(0);
      for (const auto& e : edges) {
        if (e.u != v && e.v != v) continue;
        NodeId o = e.u == v ? e.v : e.u;
        (res.side[o] == res.side[v] ? same : across) += e.weight;
      }
      EXPECT_LE(same, across);
    }
  }
}

TEST(Krivelevich, FeasibleWithinTwiceLp) {
  for (const auto& inst : suite::random_suite(80, 13)) {
    const auto& g = inst.graph;
    auto lp = solve_exact(g).primal.objective;
    auto out = krivelevich(g);
    EXPECT_TRUE(is_feasible_cover(g, out.cover)) << inst.id;
    EXPECT_LE(out.cover.cost(), 2 * lp) << inst.id;
    EXPECT_EQ(out.lower_bound, lp);
  }
}

TEST(Krivelevich, IntegralityGap) {
  for (int n = 3; n <= 7; ++n) {
    auto g = gen_integrality_gap<Q>(n);
    auto out = krivelevich(g);
    EXPECT_TRUE(is_feasible_cover(g, out.cover));
    EXPECT_LE(out.cover.cost(), Q(n));
  }
}

TEST(Deterministic, RuleAndBound) {
  for (const auto& inst : suite::random_suite(80, 19)) {
    const auto& g = inst.graph;
    auto tris = enumerate_bad_triangles(g);
    auto lp = solve_exact(g, std::span<const BadTriangle>(tris));
    auto out = round_deterministic(g, tris, lp.primal, lp.lower);
    EXPECT_EQ(out.algorithm, "det2");
    EXPECT_LE(out.cover.cost(), 2 * lp.lower) << inst.id;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      auto id = static_cast<EdgeId>(e);
      const Q& x = lp.primal.values[e];
      bool expect = g.sign(id) == Sign::negative ? x > 0 : 2 * x >= 1;
      EXPECT_EQ(out.cover.contains(id), expect);
    }
  }
}

TEST(Deterministic, FigureTwoAtMostEight) {
  auto g = gen_figure2<Q>();
  auto tris = enumerate_bad_triangles(g);
  auto lp = solve_exact(g);
  auto out = round_deterministic(g, tris, lp.primal, lp.lower);
  EXPECT_LE(out.cover.size(), 8u);
  EXPECT_LE(out.certified_ratio, 2.0);
}

TEST(Deterministic, RejectsInfeasibleInput) {
  auto g = gen_figure2<Q>();
  auto tris = enumerate_bad_triangles(g);
  auto x = make_fractional_cover(g, std::vector<Q>(g.num_edges(), Q(0)));
  EXPECT_THROW(round_deterministic(g, tris, x, Q(0)), InputError);
  EXPECT_THROW(derandomized_sweep(g, tris, x, Q(0)), InputError);
}

TEST(Threshold, FeasibleForEveryR) {
  for (const auto& inst : suite::random_suite(40, 29)) {
    const auto& g = inst.graph;
    auto tris = enumerate_bad_triangles(g);
    auto lp = solve_exact(g);
    for (int k = 0; k <= 20; ++k) {
      auto out = round_with_threshold(g, tris, lp.primal, frac(k, 20), lp.lower);
      EXPECT_TRUE(is_feasible_cover<Q>(tris, out.cover, g.num_edges()));
    }
  }
}

TEST(Threshold, FeasibleForArbitraryFractionalCovers) {
  // Non-vertex feasible points, e.g. uniform 1/3 plus noise.
  SplitMix64 rng(77);
  for (const auto& inst : suite::random_suite(40, 37)) {
    const auto& g = inst.graph;
    auto tris = enumerate_bad_triangles(g);
    std::vector<Q> v(g.num_edges());
    for (auto& q : v) q = Q(1, 3) + frac(static_cast<long>(rng.bounded(5)), 20);
    auto x = make_fractional_cover(g, v);
    for (int k = 0; k <= 10; ++k) {
      auto out = round_with_threshold(g, tris, x, frac(k, 10), Q(0));
      EXPECT_TRUE(is_feasible_cover<Q>(tris, out.cover, g.num_edges()));
    }
    auto det = round_deterministic(g, tris, x, Q(0));
    EXPECT_TRUE(is_feasible_cover<Q>(tris, det.cover, g.num_edges()));
  }
}

TEST(Threshold, FloatModeStaysFeasible) {
  for (const auto& inst : suite::random_suite(40, 43)) {
    auto g = convert_graph<double>(inst.graph);
    auto tris = enumerate_bad_triangles(g);
    auto lp = solve_exact(g);
    auto det = round_deterministic(g, tris, lp.primal, lp.lower);
    EXPECT_LE(det.cover.cost(), 2 * lp.lower + 1e-9);
    auto sw = derandomized_sweep(g, tris, lp.primal, lp.lower);
    EXPECT_LE(sw.cover.cost(), 2 * lp.lower + 1e-9);
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto r = round_randomized(g, tris, lp.primal, s, lp.lower);
      EXPECT_TRUE(is_feasible_cover<double>(tris, r.cover, g.num_edges()));
    }
  }
}

TEST(Randomized, SeedDeterminesOutcome) {
  auto g = gen_figure2<Q>();
  auto tris = enumerate_bad_triangles(g);
  auto lp = solve_exact(g);
  auto a = round_randomized(g, tris, lp.primal, 99, lp.lower);
  auto b = round_randomized(g, tris, lp.primal, 99, lp.lower);
  EXPECT_EQ(a.cover.ids(), b.cover.ids());
  EXPECT_EQ(*a.threshold, *b.threshold);
  EXPECT_EQ(*a.seed, 99u);
}

TEST(Sweep, MatchesBestThresholdByBruteForce) {
  for (const auto& inst : suite::random_suite(60, 47)) {
    const auto& g = inst.graph;
    auto tris = enumerate_bad_triangles(g);
    auto lp = solve_exact(g);
    auto sw = derandomized_sweep(g, tris, lp.primal, lp.lower);
    EXPECT_LE(sw.cover.cost(), 2 * lp.lower) << inst.id;
    // Cost only changes at 2x (positive) and 1-x (negative); scanning those
    // points and fine midpoints must not beat the sweep.
    std::vector<Q> rs{Q(0), Q(1)};
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const Q& x = lp.primal.values[e];
      for (Q r : {Q(2 * x), Q(1 - x)}) {
        if (r >= 0 && r <= 1) rs.push_back(r);
      }
    }
    for (int k = 0; k <= 64; ++k) rs.push_back(frac(k, 64));
    for (const auto& r : rs) {
      auto out = round_with_threshold(g, tris, lp.primal, r, lp.lower);
      EXPECT_GE(out.cover.cost(), sw.cover.cost()) << inst.id << " r=" << r;
    }
  }
}

TEST(Outcome, CertifiedRatioConventions) {
  auto g = suite::complete_from_mask(4, 0);
  auto tris = enumerate_bad_triangles(g);
  auto x = make_fractional_cover(g, std::vector<Q>(g.num_edges(), Q(0)));
  auto out = round_deterministic(g, tris, x, Q(0));
  EXPECT_EQ(out.certified_ratio, 1.0);
}
