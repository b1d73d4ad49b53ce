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

#include <sstream>

#include "oracles.hpp"
#include "suite.hpp"

using namespace btt;
using Q = Rational;

namespace {

template <class W>
SignedGraph<W> parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list<W>(in);
}

}  // namespace

TEST(EdgeList, CompleteHeaderFillsNegatives) {
  auto g = parse<Q>("# figure\nn 4 complete\n0 1 +1\n1 2 +1  # trailing comment\n");
  EXPECT_TRUE(g.complete());
  EXPECT_EQ(g.num_edges(), 6u);
  EXPECT_EQ(g.num_positive_edges(), 2u);
  EXPECT_EQ(g.sign(*g.find_edge(0, 2)), Sign::negative);
}

TEST(EdgeList, WeightsAndSignSpellings) {
  auto g = parse<Q>("n 3\n0 1 + 3/2\n2 1 -1 0.25\n0 2 1\n");
  EXPECT_EQ(g.weight(*g.find_edge(0, 1)), Q(3, 2));
  EXPECT_EQ(g.weight(*g.find_edge(1, 2)), Q(1, 4));
  EXPECT_EQ(g.sign(*g.find_edge(1, 2)), Sign::negative);
  EXPECT_EQ(g.sign(*g.find_edge(0, 2)), Sign::positive);
  auto d = parse<double>("n 2\n0 1 -1 1/3\n");
  EXPECT_DOUBLE_EQ(d.weight(0), 1.0 / 3.0);
}

TEST(EdgeList, Errors) {
  EXPECT_THROW(parse<Q>("0 1 +1\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3\n0 1 +2\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3\n0 3 +1\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3\n0 0 +1\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3\n0 1 +1\n1 0 -1\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3\n0 1 +1 -2\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3\n0 x +1\n"), InputError);
  EXPECT_THROW(parse<Q>("n 3 sparse\n"), InputError);
  EXPECT_THROW(parse<Q>(""), InputError);
  try {
    parse<Q>("n 3\n0 1 +1\n\n1 2 7\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(EdgeList, RoundTrip) {
  for (const auto& inst : suite::random_suite(40, 97)) {
    std::ostringstream out;
    write_edge_list(out, inst.graph);
    EXPECT_EQ(parse<Q>(out.str()), inst.graph) << inst.id << "\n" << out.str();
  }
  std::vector<std::pair<NodeId, NodeId>> pos{{0, 3}, {1, 2}};
  auto imp = SignedGraph<Q>::complete_from_positive(5, pos, 0);
  std::ostringstream out;
  write_edge_list(out, imp);
  auto back = parse<Q>(out.str());
  EXPECT_EQ(enumerate_bad_triangles(back), enumerate_bad_triangles(imp));
}

TEST(Json, DocumentsCarrySchemaVersion) {
  auto doc = document("test");
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["tool_version"], kToolVersion);
}

TEST(Json, CoverRoundTrip) {
  auto g = gen_figure2<Q>();
  auto c = *exact_btt(g).cover;
  Json j = document("cover");
  j["cover"] = cover_to_json(g, c, true);
  auto back = cover_from_json(g, Json::parse(j.dump()));
  EXPECT_EQ(back.ids(), c.ids());
  EXPECT_EQ(j["cover"]["cost"], "4");
  EXPECT_THROW(cover_from_json(g, Json::parse(R"({"edges": [[0, 9]]})")), InputError);
  EXPECT_THROW(cover_from_json(g, Json::parse(R"({"edges": [[0]]})")), InputError);
  EXPECT_THROW(cover_from_json(g, Json::parse(R"({"nothing": 1})")), InputError);
}

TEST(Json, LpUsesFractionStringsInRationalMode) {
  auto g = gen_integrality_gap<Q>(3);
  auto tris = enumerate_bad_triangles(g);
  auto sol = solve_exact(g);
  auto j = lp_to_json(g, std::span<const BadTriangle>(tris), sol);
  EXPECT_EQ(j["objective"], "3/2");
  EXPECT_EQ(j["status"], "exact-optimal");
  for (const auto& row : j["x"]) EXPECT_TRUE(row[2].is_string());
}

TEST(Json, GraphAndClustering) {
  auto g = gen_figure2<Q>();
  auto j = graph_to_json(g);
  EXPECT_EQ(j["n"], 6);
  EXPECT_EQ(j["edges"].size(), 15u);
  auto c = clustering_to_json(Clustering({0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(c["num_clusters"], 2);
  EXPECT_EQ(c["clusters"][1], Json::parse("[3,4,5]"));
}

TEST(Json, ChargingReport) {
  auto j = charging_to_json(verify_charging_tables());
  EXPECT_EQ(j["matched_cells"], 31);
  EXPECT_EQ(j["max_ratio"], "3/2");
  EXPECT_EQ(j["cells"].size(), 32u);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Csv, SurveyColumns) {
  std::vector<SurveyInstance<Q>> inst{{"fig2", 0, gen_figure2<Q>()}};
  auto rep = ratio_survey<Q>(inst);
  std::ostringstream out;
  write_survey_csv(out, rep, false);
  EXPECT_EQ(out.str(), "id,seed,n,complete,opt_delta,opt_cc,ratio,violation,runtime_ms,error\nfig2,0,6,1,4,4,1,0,,\n");
}
