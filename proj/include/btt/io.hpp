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

#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "btt/approx.hpp"
#include "btt/error.hpp"
#include "btt/exact.hpp"
#include "btt/lp.hpp"
#include "btt/number.hpp"
#include "btt/pivot.hpp"
#include "btt/signed_graph.hpp"

namespace btt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

// Edge-list text format:
//   n <count> [complete]
//   u v s [w]        s in {+1, -1, +, -}
// With `complete`, pairs not listed are negative with weight 1.
template <class W>
SignedGraph<W> read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool complete = false;
  long n = 0;
  std::vector<Edge<W>> edges;
  auto fail = [&](const std::string& msg) {
    throw InputError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (!have_header) {
      if (first != "n") fail("expected header 'n <count> [complete]'");
      if (!(ss >> n) || n < 0) fail("bad node count");
      std::string flag;
      if (ss >> flag) {
        if (flag != "complete") fail("unknown header flag '" + flag + "'");
        complete = true;
      }
      if (ss >> flag) fail("trailing tokens in header");
      have_header = true;
      continue;
    }
    std::string vs, ss_sign, ws;
    if (!(ss >> vs >> ss_sign)) fail("expected 'u v s [w]'");
    Edge<W> e;
    try {
      std::size_t pos = 0;
      long u = std::stol(first, &pos);
      if (pos != first.size()) fail("bad node id '" + first + "'");
      long v = std::stol(vs, &pos);
      if (pos != vs.size()) fail("bad node id '" + vs + "'");
      if (u < 0 || v < 0 || u >= n || v >= n) fail("node id out of range");
      e.a = static_cast<NodeId>(u);
      e.b = static_cast<NodeId>(v);
    } catch (const std::logic_error& ex) {
      if (dynamic_cast<const InputError*>(&ex)) throw;
      fail("bad node id");
    }
    if (ss_sign == "+1" || ss_sign == "+" || ss_sign == "1") {
      e.sign = Sign::positive;
    } else if (ss_sign == "-1" || ss_sign == "-") {
      e.sign = Sign::negative;
    } else {
      fail("sign must be +1 or -1, got '" + ss_sign + "'");
    }
    if (ss >> ws) {
      try {
        e.weight = NumTraits<W>::parse(ws);
      } catch (const InputError& ex) {
        fail(ex.what());
      }
      if (e.weight < W(0)) fail("negative weight");
    }
    std::string extra;
    if (ss >> extra) fail("trailing tokens");
    edges.push_back(e);
  }
  if (!have_header) throw InputError("missing header 'n <count> [complete]'");
  if (complete) {
    std::vector<std::vector<char>> seen(n);
    for (auto& e : edges) {
      if (e.a > e.b) std::swap(e.a, e.b);
      if (e.a == e.b) continue;  // from_edges reports it
      if (seen[e.a].empty()) seen[e.a].assign(n, 0);
      seen[e.a][e.b] = 1;
    }
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (seen[u].empty() || !seen[u][v]) edges.push_back({u, v, Sign::negative, W(1)});
      }
    }
  }
  return SignedGraph<W>::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

template <class W>
SignedGraph<W> read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_edge_list<W>(in);
}

/// Complete unweighted graphs are written compactly: header flag plus positive edges.
template <class W>
void write_edge_list(std::ostream& out, const SignedGraph<W>& g) {
  const bool compact = g.complete() && g.unweighted();
  out << "n " << g.num_nodes() << (compact ? " complete" : "") << "\n";
  auto line = [&](const Edge<W>& e) {
    out << e.a << " " << e.b << " " << (e.positive() ? "+1" : "-1");
    if (!g.unweighted()) out << " " << num_to_string(e.weight);
    out << "\n";
  };
  if (g.implicit()) {
    for (NodeId u = 0; u < static_cast<NodeId>(g.num_nodes()); ++u) {
      for (const auto& nb : g.positive_neighbors(u)) {
        if (nb.node > u) out << u << " " << nb.node << " +1\n";
      }
    }
    return;
  }
  for (const auto& e : g.edges()) {
    if (compact && e.negative()) continue;
    line(e);
  }
}

template <class W>
Json num_json(const W& v) {
  if constexpr (NumTraits<W>::exact) {
    return NumTraits<W>::to_string(v);
  } else {
    return v;
  }
}

inline Json finite_or_null(double d) {
  if (std::isfinite(d)) return d;
  return nullptr;
}

inline Json document(const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["kind"] = kind;
  return j;
}

template <class W>
Json graph_to_json(const SignedGraph<W>& g) {
  Json j;
  j["n"] = g.num_nodes();
  j["num_edges"] = g.num_edges();
  j["complete"] = g.complete();
  j["weighted"] = !g.unweighted();
  Json edges = Json::array();
  if (g.implicit()) {
    j["implicit_negative"] = true;
    for (NodeId u = 0; u < static_cast<NodeId>(g.num_nodes()); ++u) {
      for (const auto& nb : g.positive_neighbors(u)) {
        if (nb.node > u) edges.push_back(Json::array({u, nb.node, 1}));
      }
    }
  } else {
    for (const auto& e : g.edges()) {
      Json row = Json::array({e.a, e.b, sign_value(e.sign)});
      if (!g.unweighted()) row.push_back(num_json(e.weight));
      edges.push_back(std::move(row));
    }
  }
  j["edges"] = std::move(edges);
  return j;
}

template <class W>
Json cover_to_json(const SignedGraph<W>& g, const EdgeCover<W>& c, std::optional<bool> feasible = std::nullopt) {
  Json j;
  Json pairs = Json::array();
  for (EdgeId id : c.ids()) {
    auto e = g.edge(id);
    pairs.push_back(Json::array({e.a, e.b}));
  }
  j["edges"] = std::move(pairs);
  j["ids"] = c.ids();
  j["size"] = c.size();
  j["cost"] = num_json(c.cost());
  if (feasible) j["feasible"] = *feasible;
  return j;
}

/// Reads {"edges": [[u, v], ...]} (or a document whose "cover" holds that).
template <class W>
EdgeCover<W> cover_from_json(const SignedGraph<W>& g, const Json& j) {
  const Json* node = &j;
  if (j.contains("cover")) node = &j.at("cover");
  if (!node->is_object() || !node->contains("edges")) throw InputError("cover JSON lacks an 'edges' array");
  std::vector<EdgeId> ids;
  for (const auto& p : node->at("edges")) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw InputError("cover edges must be [u, v] pairs");
    }
    auto id = g.find_edge(p[0].get<NodeId>(), p[1].get<NodeId>());
    if (!id) throw InputError("cover edge not in graph: " + p.dump());
    ids.push_back(*id);
  }
  return EdgeCover<W>(g, std::move(ids));
}

inline Json clustering_to_json(const Clustering& p) {
  Json j;
  j["num_clusters"] = p.num_clusters();
  j["labels"] = p.labels();
  j["clusters"] = p.members();
  return j;
}

template <class W>
Json lp_to_json(const SignedGraph<W>& g, std::span<const BadTriangle> tris, const LpSolution<W>& sol) {
  Json j;
  j["status"] = to_string(sol.status);
  if (sol.status == LpStatus::eps_approximate) j["eps"] = sol.eps;
  j["objective"] = num_json(sol.primal.objective);
  j["lower"] = num_json(sol.lower);
  j["upper"] = num_json(sol.upper);
  j["iterations"] = sol.iterations;
  Json x = Json::array();
  for (std::size_t e = 0; e < sol.primal.values.size(); ++e) {
    if (sol.primal.values[e] == W(0)) continue;
    auto ed = g.edge(static_cast<EdgeId>(e));
    x.push_back(Json::array({ed.a, ed.b, num_json(sol.primal.values[e])}));
  }
  j["x"] = std::move(x);
  if (sol.dual) {
    Json y = Json::array();
    for (std::size_t t = 0; t < sol.dual->values.size(); ++t) {
      if (sol.dual->values[t] == W(0)) continue;
      const auto& nd = tris[t].nodes;
      y.push_back(Json::array({nd[0], nd[1], nd[2], num_json(sol.dual->values[t])}));
    }
    j["y"] = std::move(y);
  }
  return j;
}

template <class W>
Json outcome_to_json(const SignedGraph<W>& g, std::span<const BadTriangle> tris, const RoundingOutcome<W>& o) {
  Json j;
  j["algorithm"] = o.algorithm;
  j["cover"] = cover_to_json(g, o.cover, is_feasible_cover<W>(tris, o.cover, g.num_edges()));
  j["lower_bound"] = num_json(o.lower_bound);
  j["certified_ratio"] = finite_or_null(o.certified_ratio);
  if (o.threshold) j["threshold"] = num_json(*o.threshold);
  if (o.seed) j["seed"] = *o.seed;
  return j;
}

inline Json charging_to_json(const ChargingReport& rep) {
  Json j;
  j["defined_cells"] = rep.defined_cells;
  j["matched_cells"] = rep.matched_cells;
  j["excluded_cells"] = rep.excluded_cells;
  j["max_ratio"] = rep.max_ratio.get_str();
  j["endpoint_lemma_holds"] = rep.endpoint_lemma_holds;
  Json cells = Json::array();
  for (const auto& row : rep.cells) {
    for (const auto& c : row) {
      Json cj;
      cj["signs"] = c.signs;
      cj["cover"] = c.cover;
      if (c.excluded) {
        cj["excluded"] = true;
      } else {
        cj["d"] = c.sums.d_sum.get_str();
        cj["b"] = c.sums.b_sum.get_str();
        cj["ratio"] = c.sums.ratio ? Json(c.sums.ratio->get_str()) : Json("0/0");
        cj["matches"] = c.matches;
      }
      cells.push_back(std::move(cj));
    }
  }
  j["cells"] = std::move(cells);
  j["failures"] = rep.failures;
  j["pass"] = rep.ok();
  return j;
}

/// Columns: id, seed, n, OPT_delta, OPT_CC, ratio, runtime_ms. Runtime is omitted
/// (written as empty) when `with_runtime` is false so outputs stay reproducible.
template <class W>
void write_survey_csv(std::ostream& out, const SurveyReport<W>& rep, bool with_runtime) {
  out << "id,seed,n,complete,opt_delta,opt_cc,ratio,violation,runtime_ms,error\n";
  for (const auto& r : rep.rows) {
    out << r.id << "," << r.seed << "," << r.n << "," << (r.complete ? 1 : 0) << ",";
    out << (r.opt_delta ? num_to_string(*r.opt_delta) : "") << ",";
    out << (r.opt_cc ? num_to_string(*r.opt_cc) : "") << ",";
    if (r.ratio) out << (*r.ratio < 0 ? std::string("inf") : r.ratio->get_str());
    out << "," << (r.violation ? 1 : 0) << ",";
    if (with_runtime) out << r.runtime_ms;
    std::string err = r.error;
    for (auto& ch : err) {
      if (ch == ',' || ch == '\n') ch = ' ';
    }
    out << "," << err << "\n";
  }
}

}  // namespace btt
