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

std::string triple_name(const std::array<NodeId, 3>& t) {
  std::string s;
  for (NodeId v : t) s += static_cast<char>('a' + v);
  return s;
}

EdgeId fig2_edge(const SignedGraph<Q>& g, const char* pair) {
  return *g.find_edge(figure2_node(pair[0]), figure2_node(pair[1]));
}

}  // namespace

TEST(SignedGraph, RejectsSelfLoopsDuplicatesAndBadWeights) {
  EXPECT_THROW((SignedGraph<Q>::from_edges(3, {{1, 1, Sign::positive, Q(1)}})), InputError);
  EXPECT_THROW((SignedGraph<Q>::from_edges(3, {{0, 1, Sign::positive, Q(1)}, {1, 0, Sign::negative, Q(1)}})),
               InputError);
  EXPECT_THROW((SignedGraph<Q>::from_edges(3, {{0, 5, Sign::positive, Q(1)}})), InputError);
  EXPECT_THROW((SignedGraph<Q>::from_edges(3, {{0, 1, Sign::positive, Q(-1)}})), InputError);
}

TEST(SignedGraph, CanonicalEdgeOrderAndCompleteness) {
  auto g = SignedGraph<Q>::from_edges(3, {{2, 1, Sign::negative, Q(1)}, {1, 0, Sign::positive, Q(1)},
                                          {0, 2, Sign::positive, Q(1)}});
  ASSERT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.complete());
  EXPECT_EQ(g.edge(0).a, 0);
  EXPECT_EQ(g.edge(0).b, 1);
  EXPECT_EQ(g.edge(2).a, 1);
  EXPECT_EQ(g.edge(2).b, 2);
  EXPECT_EQ(*g.find_edge(2, 1), 2);
  auto sparse = SignedGraph<Q>::from_edges(4, {{0, 1, Sign::positive, Q(1)}});
  EXPECT_FALSE(sparse.complete());
  EXPECT_FALSE(sparse.find_edge(2, 3).has_value());
}

TEST(SignedGraph, PairIndexRoundTrip) {
  for (std::int64_t n : {2, 3, 7, 50}) {
    std::int64_t id = 0;
    for (std::int64_t u = 0; u < n; ++u) {
      for (std::int64_t v = u + 1; v < n; ++v, ++id) {
        EXPECT_EQ(pair_index(n, u, v), id);
        auto [a, b] = pair_from_index(n, id);
        EXPECT_EQ(a, u);
        EXPECT_EQ(b, v);
      }
    }
  }
}

TEST(BadTriangles, FigureTwoListMatchesBruteForce) {
  auto g = gen_figure2<Q>();
  auto tris = enumerate_bad_triangles(g);
  std::vector<std::string> names;
  for (const auto& t : tris) names.push_back(triple_name(t.nodes));
  std::vector<std::string> brute;
  for (const auto& t : oracle::bad_triples(g)) brute.push_back(triple_name(t));
  EXPECT_EQ(names, brute);
  EXPECT_EQ(names.size(), 8u);
  EXPECT_EQ(names.front(), "abc");
  // ace is all-positive here; ade is the triangle closed by the negative edge de.
  EXPECT_EQ(names, (std::vector<std::string>{"abc", "abe", "acd", "ade", "bcf", "bef", "cdf", "def"}));
}

TEST(BadTriangles, AllPositiveCompleteGraphHasNone) {
  auto g = suite::complete_from_mask(4, 0x3F);
  EXPECT_TRUE(enumerate_bad_triangles(g).empty());
}

TEST(BadTriangles, IntegralityGapThreeHasOnePerNegativeEdge) {
  auto g = gen_integrality_gap<Q>(3);
  auto tris = enumerate_bad_triangles(g);
  ASSERT_EQ(tris.size(), 3u);
  std::set<EdgeId> negs;
  for (const auto& t : tris) {
    EXPECT_EQ(t.nodes[2], 3);
    negs.insert(t.negative);
  }
  EXPECT_EQ(negs.size(), 3u);
}

TEST(BadTriangles, TriangleInvariants) {
  for (const auto& inst : suite::random_suite(60, 11)) {
    for (const auto& t : enumerate_bad_triangles(inst.graph)) {
      EXPECT_LT(t.nodes[0], t.nodes[1]);
      EXPECT_LT(t.nodes[1], t.nodes[2]);
      int neg = 0;
      for (EdgeId e : t.edges) neg += inst.graph.sign(e) == Sign::negative;
      EXPECT_EQ(neg, 1);
      EXPECT_EQ(inst.graph.sign(t.negative), Sign::negative);
      EXPECT_TRUE(t.contains(t.negative));
      EXPECT_EQ(t.edges[0], *inst.graph.find_edge(t.nodes[0], t.nodes[1]));
      EXPECT_EQ(t.edges[1], *inst.graph.find_edge(t.nodes[0], t.nodes[2]));
      EXPECT_EQ(t.edges[2], *inst.graph.find_edge(t.nodes[1], t.nodes[2]));
    }
  }
}

TEST(BadTriangles, EnumerationMatchesBruteForceUpToEightNodes) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    RandomGraphSpec spec;
    spec.seed = s;
    spec.n = 2 + static_cast<int>(s % 7);
    spec.complete = s % 3 != 0;
    spec.density = 0.6;
    spec.p_positive = 0.3 + 0.1 * static_cast<double>(s % 5);
    auto g = gen_random<Q>(spec);
    std::vector<std::array<NodeId, 3>> got;
    for (const auto& t : enumerate_bad_triangles(g)) got.push_back(t.nodes);
    EXPECT_EQ(got, oracle::bad_triples(g)) << "seed " << s;
  }
}

TEST(BadTriangles, ImplicitLayoutMatchesExplicit) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    RandomGraphSpec spec;
    spec.seed = s;
    spec.n = 9;
    spec.p_positive = 0.5;
    auto g = gen_random<Q>(spec);
    std::vector<std::pair<NodeId, NodeId>> pos;
    for (const auto& e : g.edges()) {
      if (e.positive()) pos.emplace_back(e.a, e.b);
    }
    auto imp = SignedGraph<Q>::complete_from_positive(9, pos, 0);
    ASSERT_TRUE(imp.implicit());
    auto a = enumerate_bad_triangles(g);
    auto b = enumerate_bad_triangles(imp);
    EXPECT_EQ(a, b);
    Clustering p({0, 1, 0, 2, 1, 0, 2, 2, 1});
    EXPECT_EQ(cc_cost(g, p), cc_cost(imp, p));
  }
}

TEST(Cover, FigureTwoCovers) {
  auto g = gen_figure2<Q>();
  EdgeCover<Q> c(g, {fig2_edge(g, "ac"), fig2_edge(g, "ae"), fig2_edge(g, "bf"), fig2_edge(g, "df")});
  EXPECT_TRUE(is_feasible_cover(g, c));
  EXPECT_FALSE(is_feasible_cover(g, EdgeCover<Q>(g, {})));
  std::vector<EdgeId> all(g.num_edges());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<EdgeId>(i);
  EXPECT_TRUE(is_feasible_cover(g, EdgeCover<Q>(g, all)));
}

TEST(Cover, RejectsInvalidIdsAndMergesDuplicates) {
  auto g = gen_figure2<Q>();
  EXPECT_THROW(EdgeCover<Q>(g, {99}), InputError);
  EdgeCover<Q> c(g, {3, 1, 3});
  EXPECT_EQ(c.ids(), (std::vector<EdgeId>{1, 3}));
  EXPECT_EQ(c.cost(), 2);
}

TEST(Cover, CostIsSumOfWeights) {
  auto g = SignedGraph<Q>::from_edges(3, {{0, 1, Sign::positive, Q(3, 2)}, {0, 2, Sign::positive, Q(2)},
                                          {1, 2, Sign::negative, Q(1, 3)}});
  EdgeCover<Q> c(g, {0, 2});
  EXPECT_EQ(c.cost(), Q(11, 6));
}

TEST(Cover, Monotone) {
  for (const auto& inst : suite::random_suite(40, 5)) {
    const auto& g = inst.graph;
    auto ex = exact_btt(g);
    ASSERT_TRUE(is_feasible_cover(g, *ex.cover));
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      auto ids = ex.cover->ids();
      ids.push_back(static_cast<EdgeId>(e));
      EXPECT_TRUE(is_feasible_cover(g, EdgeCover<Q>(g, ids)));
    }
  }
}

TEST(Clustering, RelabelsByFirstAppearance) {
  Clustering p({7, 7, 3, 9, 3});
  EXPECT_EQ(p.labels(), (std::vector<int>{0, 0, 1, 2, 1}));
  EXPECT_EQ(p.num_clusters(), 3u);
  EXPECT_EQ(p, Clustering({1, 1, 0, 5, 0}));
}

TEST(CcCost, FigureTwoAndTrivialCases) {
  auto g = gen_figure2<Q>();
  // bc and de inside, seven positives across
  EXPECT_EQ(cc_cost(g, Clustering({0, 0, 0, 1, 1, 1})), 9);
  EXPECT_EQ(cc_cost(g, Clustering::single_cluster(6)), 4);
  auto neg = suite::complete_from_mask(5, 0);
  EXPECT_EQ(cc_cost(neg, Clustering::singletons(5)), 0);
  auto pos = suite::complete_from_mask(5, 0x3FF);
  EXPECT_EQ(cc_cost(pos, Clustering::single_cluster(5)), 0);
}

TEST(CcCost, MatchesOracleAndIgnoresLabelNames) {
  SplitMix64 rng(3);
  for (const auto& inst : suite::random_suite(40, 9)) {
    std::vector<int> labels(inst.graph.num_nodes());
    for (auto& l : labels) l = static_cast<int>(rng.bounded(3));
    auto base = cc_cost(inst.graph, Clustering(labels));
    EXPECT_EQ(base, oracle::clustering_cost(inst.graph, labels));
    std::vector<int> renamed(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) renamed[i] = 10 - 3 * labels[i];
    EXPECT_EQ(base, cc_cost(inst.graph, Clustering(renamed)));
  }
}

TEST(Flip, IdentityAndInvolution) {
  for (const auto& inst : suite::random_suite(30, 21)) {
    const auto& g = inst.graph;
    EXPECT_EQ(flip_edges(g, std::span<const EdgeId>()), g);
    std::vector<EdgeId> ids;
    for (std::size_t e = 0; e < g.num_edges(); e += 2) ids.push_back(static_cast<EdgeId>(e));
    auto once = flip_edges(g, std::span<const EdgeId>(ids));
    if (!ids.empty()) {
      EXPECT_FALSE(once == g);
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      EXPECT_EQ(once.weight(static_cast<EdgeId>(e)), g.weight(static_cast<EdgeId>(e)));
    }
    EXPECT_EQ(flip_edges(once, std::span<const EdgeId>(ids)), g);
  }
}

TEST(Flip, FigureTwoFlipBc) {
  auto g = gen_figure2<Q>();
  EdgeId bc = fig2_edge(g, "bc");
  std::vector<EdgeId> ids{bc};
  auto h = flip_edges(g, std::span<const EdgeId>(ids));
  EXPECT_EQ(h.sign(bc), Sign::positive);
  EXPECT_EQ(enumerate_bad_triangles(h).size(), oracle::bad_triples(h).size());
  EXPECT_THROW(flip_edges(g, std::span<const EdgeId>(std::vector<EdgeId>{-1})), InputError);
}

TEST(Flip, ImplicitGraph) {
  std::vector<std::pair<NodeId, NodeId>> pos{{0, 1}, {1, 2}};
  auto g = SignedGraph<Q>::complete_from_positive(4, pos, 0);
  std::vector<EdgeId> ids{*g.find_edge(0, 2), *g.find_edge(0, 1)};
  auto h = flip_edges(g, std::span<const EdgeId>(ids));
  EXPECT_EQ(h.sign(*h.find_edge(0, 2)), Sign::positive);
  EXPECT_EQ(h.sign(*h.find_edge(0, 1)), Sign::negative);
  EXPECT_EQ(flip_edges(h, std::span<const EdgeId>(ids)), g);
}
