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

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "btt/error.hpp"
#include "btt/number.hpp"
#include "btt/random.hpp"
#include "btt/signed_graph.hpp"

namespace btt {

/// Clique of n negative edges plus an apex joined positively to every clique
/// node. Nodes 0..n-1 form the clique, node n is the apex.
template <class W>
SignedGraph<W> gen_integrality_gap(int n) {
  if (n < 2) throw InputError("integrality-gap instance needs n >= 2");
  std::vector<std::pair<NodeId, NodeId>> pos;
  for (NodeId v = 0; v < n; ++v) pos.emplace_back(v, n);
  return SignedGraph<W>::complete_from_positive(static_cast<std::size_t>(n) + 1, std::move(pos));
}

/// Six nodes a..f (ids 0..5); negative edges form the 4-cycle b-c-d-e-b and
/// every other pair is positive.
template <class W>
SignedGraph<W> gen_figure2() {
  std::set<std::pair<NodeId, NodeId>> negative{{1, 2}, {2, 3}, {3, 4}, {1, 4}};
  std::vector<std::pair<NodeId, NodeId>> pos;
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = u + 1; v < 6; ++v) {
      if (!negative.count({u, v})) pos.emplace_back(u, v);
    }
  }
  return SignedGraph<W>::complete_from_positive(6, std::move(pos));
}

inline NodeId figure2_node(char c) {
  if (c < 'a' || c > 'f') throw InputError(std::string("figure-2 node label out of range: ") + c);
  return c - 'a';
}

/// Vertex-cover reduction: the edges of the unsigned graph become negative
/// and a new node n is joined positively to every original node. The result
/// is not complete.
template <class W>
SignedGraph<W> gen_vc_reduction(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  if (n < 0) throw InputError("node count must be non-negative");
  std::vector<Edge<W>> out;
  for (auto [u, v] : edges) out.push_back({u, v, Sign::negative, W(1)});
  for (NodeId v = 0; v < n; ++v) out.push_back({v, static_cast<NodeId>(n), Sign::positive, W(1)});
  return SignedGraph<W>::from_edges(static_cast<std::size_t>(n) + 1, std::move(out));
}

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct TwoCnfFormula {
  int num_vars = 0;
  std::vector<std::array<Literal, 2>> clauses;
};

enum class FormulaMode { theorem, relaxed };

/// Empty string if `f` satisfies the hardness-instance conditions (no
/// repeated clauses, every variable occurs exactly 4 times and exactly once
/// negated, 2n clauses); otherwise the first violated condition.
inline std::string theorem_violation(const TwoCnfFormula& f) {
  if (static_cast<int>(f.clauses.size()) != 2 * f.num_vars) {
    return "clause count " + std::to_string(f.clauses.size()) + " != 2n = " + std::to_string(2 * f.num_vars);
  }
  std::set<std::array<Literal, 2>> seen;
  std::vector<int> occ(f.num_vars, 0);
  std::vector<int> neg(f.num_vars, 0);
  for (const auto& c : f.clauses) {
    auto key = c;
    if (key[1] < key[0]) std::swap(key[0], key[1]);
    if (!seen.insert(key).second) return "repeated clause";
    for (const auto& l : c) {
      ++occ[l.var];
      neg[l.var] += l.negated;
    }
  }
  for (int v = 0; v < f.num_vars; ++v) {
    if (occ[v] != 4) return "variable " + std::to_string(v + 1) + " occurs " + std::to_string(occ[v]) + " times";
    if (neg[v] != 1) {
      return "variable " + std::to_string(v + 1) + " appears negated " + std::to_string(neg[v]) + " times";
    }
  }
  return {};
}

inline void check_formula_shape(const TwoCnfFormula& f) {
  if (f.num_vars < 0) throw InputError("negative variable count");
  for (const auto& c : f.clauses) {
    for (const auto& l : c) {
      if (l.var < 0 || l.var >= f.num_vars) throw InputError("literal variable out of range");
    }
  }
}

/// DIMACS-style 2CNF: `p cnf <vars> <clauses>`, `c` comment lines, each
/// clause two non-zero literals terminated by 0.
inline TwoCnfFormula parse_dimacs_2cnf(std::istream& in) {
  TwoCnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::string line;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c" || tok[0] == 'c' || tok[0] == '%') continue;
    if (tok == "p") {
      std::string kind;
      if (!(ss >> kind >> f.num_vars >> declared) || kind != "cnf") throw InputError("bad DIMACS header");
      header = true;
      continue;
    }
    if (!header) throw InputError("clause before DIMACS header");
    ss.clear();
    ss.str(line);
    long lit;
    while (ss >> lit) {
      if (lit == 0) {
        if (pending.size() != 2) throw InputError("2CNF clause must have exactly two literals");
        std::array<Literal, 2> c;
        for (int i = 0; i < 2; ++i) {
          int v = std::abs(pending[i]);
          if (v > f.num_vars) throw InputError("literal variable out of range");
          c[i] = {v - 1, pending[i] < 0};
        }
        f.clauses.push_back(c);
        pending.clear();
      } else {
        pending.push_back(static_cast<int>(lit));
      }
    }
    if (!ss.eof()) throw InputError("malformed DIMACS line: " + line);
  }
  if (!header) throw InputError("missing DIMACS header");
  if (!pending.empty()) throw InputError("unterminated clause");
  if (f.clauses.size() != declared) throw InputError("clause count does not match DIMACS header");
  return f;
}

/// Node ids of one hexagram: inner 6-cycle c_1..c_6 and crowns z_1..z_6
/// (index i stored at position i-1). Tooth i is the triangle
/// (c_i, c_{i+1}, z_i), indices mod 6; it is even/odd with i.
struct HexagramNodes {
  std::array<NodeId, 6> inner{};
  std::array<NodeId, 6> crowns{};
};

struct ClauseGadget {
  NodeId node = 0;
  std::array<NodeId, 2> crowns{};  // crown joined for literal 0 / literal 1
};

struct GadgetMap {
  std::vector<HexagramNodes> hexagrams;
  std::vector<ClauseGadget> clauses;
  bool theorem_mode = false;

  /// Positive edges of the hexagram's even (parity 0) or odd (parity 1) teeth.
  template <class W>
  std::vector<EdgeId> teeth_edges(const SignedGraph<W>& g, std::size_t var, int parity) const {
    std::vector<EdgeId> out;
    const auto& h = hexagrams.at(var);
    for (int i = 1; i <= 6; ++i) {
      if (i % 2 != (parity == 0 ? 0 : 1)) continue;
      NodeId a = h.inner[i - 1];
      NodeId b = h.inner[i % 6];
      NodeId z = h.crowns[i - 1];
      for (auto [x, y] : {std::pair{a, b}, std::pair{a, z}, std::pair{b, z}}) out.push_back(*g.find_edge(x, y));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline void append_hexagram(std::vector<std::pair<NodeId, NodeId>>& pos, HexagramNodes& h, NodeId base) {
  for (int i = 0; i < 6; ++i) {
    h.inner[i] = base + i;
    h.crowns[i] = base + 6 + i;
  }
  for (int i = 0; i < 6; ++i) {
    NodeId a = h.inner[i];
    NodeId b = h.inner[(i + 1) % 6];
    pos.emplace_back(a, b);
    pos.emplace_back(a, h.crowns[i]);
    pos.emplace_back(b, h.crowns[i]);
  }
}

}  // namespace detail

/// Complete signed graph on 12 nodes whose 18 positive edges form one
/// hexagram (6 inner-cycle edges and 12 tooth spokes).
template <class W>
std::pair<SignedGraph<W>, GadgetMap> gen_hexagram() {
  std::vector<std::pair<NodeId, NodeId>> pos;
  GadgetMap map;
  map.hexagrams.resize(1);
  detail::append_hexagram(pos, map.hexagrams[0], 0);
  return {SignedGraph<W>::complete_from_positive(12, std::move(pos)), std::move(map)};
}

/// Hexagram per variable plus a clause node per clause joined to one crown
/// of each literal's hexagram: lowest unused odd crown for a negated
/// literal, lowest unused even crown otherwise. All remaining pairs are
/// negative.
template <class W>
std::pair<SignedGraph<W>, GadgetMap> gen_hardness_reduction(const TwoCnfFormula& f,
                                                            FormulaMode mode = FormulaMode::theorem) {
  check_formula_shape(f);
  if (mode == FormulaMode::theorem) {
    auto why = theorem_violation(f);
    if (!why.empty()) throw InputError("formula is not a valid hardness instance: " + why);
  }
  std::vector<std::pair<NodeId, NodeId>> pos;
  GadgetMap map;
  map.theorem_mode = mode == FormulaMode::theorem;
  map.hexagrams.resize(f.num_vars);
  for (int v = 0; v < f.num_vars; ++v) detail::append_hexagram(pos, map.hexagrams[v], 12 * v);
  std::vector<std::array<char, 6>> used(f.num_vars, std::array<char, 6>{});
  const NodeId clause_base = 12 * f.num_vars;
  for (std::size_t l = 0; l < f.clauses.size(); ++l) {
    ClauseGadget cg;
    cg.node = clause_base + static_cast<NodeId>(l);
    for (int j = 0; j < 2; ++j) {
      const auto& lit = f.clauses[l][j];
      int first = lit.negated ? 0 : 1;  // crown index 0-based: z_1 is odd
      int slot = -1;
      for (int i = first; i < 6; i += 2) {
        if (!used[lit.var][i]) {
          slot = i;
          break;
        }
      }
      if (slot < 0) {
        std::string msg = "no unused " + std::string(lit.negated ? "odd" : "even") + " crown left for variable " +
                          std::to_string(lit.var + 1);
        if (mode == FormulaMode::theorem) throw InternalError(msg);
        throw InputError(msg);
      }
      used[lit.var][slot] = 1;
      cg.crowns[j] = map.hexagrams[lit.var].crowns[slot];
      pos.emplace_back(cg.crowns[j], cg.node);
    }
    map.clauses.push_back(cg);
  }
  std::size_t n = 12 * static_cast<std::size_t>(f.num_vars) + f.clauses.size();
  return {SignedGraph<W>::complete_from_positive(n, std::move(pos)), std::move(map)};
}

inline bool literal_true(const Literal& l, std::uint32_t assignment) {
  bool v = assignment >> l.var & 1U;
  return l.negated ? !v : v;
}

inline int count_unsatisfied(const TwoCnfFormula& f, std::uint32_t assignment) {
  int unsat = 0;
  for (const auto& c : f.clauses) unsat += !(literal_true(c[0], assignment) || literal_true(c[1], assignment));
  return unsat;
}

/// Cover from an assignment: even teeth for true variables, odd teeth for
/// false ones, the clause edge of every false literal's crown, and the first
/// clause edge when both literals are true.
template <class W>
EdgeCover<W> consistent_cover(const SignedGraph<W>& g, const GadgetMap& map, const TwoCnfFormula& f,
                              std::uint32_t assignment) {
  std::vector<EdgeId> ids;
  for (int v = 0; v < f.num_vars; ++v) {
    auto teeth = map.teeth_edges(g, v, (assignment >> v & 1U) ? 0 : 1);
    ids.insert(ids.end(), teeth.begin(), teeth.end());
  }
  for (std::size_t l = 0; l < f.clauses.size(); ++l) {
    const auto& cg = map.clauses[l];
    bool t0 = literal_true(f.clauses[l][0], assignment);
    bool t1 = literal_true(f.clauses[l][1], assignment);
    if (!t0 || (t0 && t1)) ids.push_back(*g.find_edge(cg.crowns[0], cg.node));
    if (!t1) ids.push_back(*g.find_edge(cg.crowns[1], cg.node));
  }
  return EdgeCover<W>(g, std::move(ids));
}

struct RandomGraphSpec {
  int n = 8;
  double p_positive = 0.5;
  /// When set, exactly this many present pairs are positive.
  std::optional<std::size_t> positive_count;
  bool complete = true;
  /// Pair presence probability for non-complete graphs.
  double density = 0.5;
  /// Weights are uniform integers in [1, weight_max] divided by weight_den.
  int weight_max = 1;
  int weight_den = 1;
  std::uint64_t seed = 0;
};

/// Seeded random signed graph; identical specs give identical graphs.
template <class W>
SignedGraph<W> gen_random(const RandomGraphSpec& spec) {
  if (spec.n < 0) throw InputError("n must be non-negative");
  if (!(spec.p_positive >= 0.0 && spec.p_positive <= 1.0)) throw InputError("p_positive must lie in [0, 1]");
  if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw InputError("density must lie in [0, 1]");
  if (spec.weight_max < 1 || spec.weight_den < 1) throw InputError("weight parameters must be positive");
  SplitMix64 rng(spec.seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < spec.n; ++u) {
    for (NodeId v = u + 1; v < spec.n; ++v) {
      if (spec.complete || rng.uniform01() < spec.density) pairs.emplace_back(u, v);
    }
  }
  std::vector<char> positive(pairs.size(), 0);
  if (spec.positive_count) {
    if (*spec.positive_count > pairs.size()) throw InputError("positive_count exceeds the number of pairs");
    std::vector<std::size_t> idx(pairs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.bounded(i)]);
    for (std::size_t i = 0; i < *spec.positive_count; ++i) positive[idx[i]] = 1;
  } else {
    for (auto& p : positive) p = rng.uniform01() < spec.p_positive;
  }
  std::vector<Edge<W>> edges;
  edges.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    W w(1);
    if (spec.weight_max > 1 || spec.weight_den > 1) {
      long num = 1 + static_cast<long>(rng.bounded(static_cast<std::uint64_t>(spec.weight_max)));
      w = NumTraits<W>::from_rational(frac(num, spec.weight_den));
    }
    edges.push_back({pairs[i].first, pairs[i].second, positive[i] ? Sign::positive : Sign::negative, w});
  }
  return SignedGraph<W>::from_edges(static_cast<std::size_t>(spec.n), std::move(edges));
}

/// Exhaustive minimum number of unsatisfied clauses (at most 20 variables).
inline std::pair<int, std::uint32_t> brute_force_md2cnf(const TwoCnfFormula& f) {
  if (f.num_vars > 20) throw CapacityError("assignment enumeration limited to 20 variables");
  int best = static_cast<int>(f.clauses.size()) + 1;
  std::uint32_t arg = 0;
  for (std::uint32_t a = 0; a < (1U << f.num_vars); ++a) {
    int u = count_unsatisfied(f, a);
    if (u < best) {
      best = u;
      arg = a;
    }
  }
  return {best, arg};
}

}  // namespace btt
