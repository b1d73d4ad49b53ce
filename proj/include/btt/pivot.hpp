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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btt/error.hpp"
#include "btt/number.hpp"
#include "btt/random.hpp"
#include "btt/signed_graph.hpp"

namespace btt {

/// Probability that a candidate joins the pivot's cluster, given the sign of
/// the candidate-pivot edge and whether that edge is in the cover.
inline Rational inclusion_probability(Sign sign, bool in_cover) {
  if (sign == Sign::positive) return in_cover ? Rational(1, 4) : Rational(1);
  return in_cover ? Rational(3, 4) : Rational(0);
}

/// Signs and cover membership of the edges (uv, uw, vw) of a node triple.
struct TripletConfig {
  std::array<Sign, 3> signs{Sign::positive, Sign::positive, Sign::positive};
  std::array<bool, 3> in_cover{false, false, false};

  bool is_bad() const {
    int neg = 0;
    for (Sign s : signs) neg += s == Sign::negative;
    return neg == 1;
  }
  bool is_uncovered_bad() const { return is_bad() && !in_cover[0] && !in_cover[1] && !in_cover[2]; }
};

struct TripletSums {
  Rational d_sum;  // expected disagreements over the three pivot choices
  Rational b_sum;  // expected cover budget removed over the three pivot choices
  std::optional<Rational> ratio;  // unset when b_sum == 0
};

/// Exact d(u,v|w) + d(u,w|v) + d(v,w|u) and the matching b sums.
inline TripletSums triplet_sums(const TripletConfig& c) {
  std::array<Rational, 3> p;
  for (int i = 0; i < 3; ++i) p[i] = inclusion_probability(c.signs[i], c.in_cover[i]);
  TripletSums s;
  // (pair edge, edge to pivot from first endpoint, edge to pivot from second)
  constexpr std::array<std::array<int, 3>, 3> kPivots{{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}}};
  for (const auto& [pair, e1, e2] : kPivots) {
    const Rational& p1 = p[e1];
    const Rational& p2 = p[e2];
    if (c.signs[pair] == Sign::positive) {
      s.d_sum += p1 + p2 - 2 * p1 * p2;
    } else {
      s.d_sum += p1 * p2;
    }
    if (c.in_cover[pair]) s.b_sum += p1 + p2 - p1 * p2;
  }
  if (s.b_sum != 0) s.ratio = Rational(s.d_sum / s.b_sum);
  return s;
}

/// d(u,v|v) and b(u,v|v): pair with one endpoint as the pivot.
inline std::pair<Rational, Rational> pivot_endpoint_sums(Sign sign, bool in_cover) {
  Rational p = inclusion_probability(sign, in_cover);
  Rational d = sign == Sign::positive ? Rational(1 - p) : p;
  Rational b = in_cover ? Rational(1) : Rational(0);
  return {d, b};
}

/// Row and column labels of the charging tables: rows are edge-sign
/// patterns, columns are cover-membership patterns ('+' = in the cover),
/// position i refers to edge i of (uv, uw, vw).
inline constexpr std::array<const char*, 4> kSignRows{"---", "--+", "-++", "+++"};
inline constexpr std::array<const char*, 8> kCoverColumns{"---", "--+", "-+-", "+--",
                                                          "-++", "++-", "+-+", "+++"};

/// Reference cell values, four significant figures; "--" marks the excluded
/// uncovered bad triangle and "0/0" an undefined ratio.
inline constexpr std::array<std::array<const char*, 8>, 4> kReferenceD{{
    {"0", "0", "0", "0", "0.5625", "0.5625", "0.5625", "1.688"},
    {"0", "0", "1.5", "1.5", "0.9375", "1.875", "0.9375", "0.75"},
    {"--", "1.5", "1.5", "1.5", "0.5625", "1.125", "1.125", "1.312"},
    {"0", "1.5", "1.5", "1.5", "1.875", "1.875", "1.875", "1.125"},
}};
inline constexpr std::array<std::array<const char*, 8>, 4> kReferenceB{{
    {"0", "0", "0", "0", "1.5", "1.5", "1.5", "2.812"},
    {"0", "0", "1", "1", "1", "2", "1", "2.562"},
    {"--", "1", "1", "1", "0.5", "2", "2", "2.062"},
    {"0", "1", "1", "1", "2", "2", "2", "1.312"},
}};
inline constexpr std::array<std::array<const char*, 8>, 4> kReferenceRatio{{
    {"0/0", "0/0", "0/0", "0/0", "0.375", "0.375", "0.375", "0.6"},
    {"0/0", "0/0", "1.5", "1.5", "0.9375", "0.9375", "0.9375", "0.2927"},
    {"--", "1.5", "1.5", "1.5", "1.125", "0.5625", "0.5625", "0.6364"},
    {"0/0", "1.5", "1.5", "1.5", "0.9375", "0.9375", "0.9375", "0.8571"},
}};

inline TripletConfig triplet_from_labels(const char* signs, const char* cover) {
  TripletConfig c;
  for (int i = 0; i < 3; ++i) {
    c.signs[i] = signs[i] == '+' ? Sign::positive : Sign::negative;
    c.in_cover[i] = cover[i] == '+';
  }
  return c;
}

/// True iff `printed` is `value` rounded to four significant figures.
inline bool matches_printed(const Rational& value, const std::string& printed) {
  double p = std::stod(printed);
  double v = value.get_d();
  if (p == 0.0) return value == 0;
  double unit = std::pow(10.0, std::floor(std::log10(std::abs(p))) - 3);
  return std::abs(v - p) <= 0.5 * unit + 1e-12;
}

struct ChargingCell {
  std::string signs;
  std::string cover;
  bool excluded = false;  // the uncovered bad triangle
  TripletSums sums;
  bool matches = false;
};

struct ChargingReport {
  std::array<std::array<ChargingCell, 8>, 4> cells;
  std::size_t defined_cells = 0;
  std::size_t matched_cells = 0;
  std::size_t excluded_cells = 0;
  Rational max_ratio;
  bool endpoint_lemma_holds = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Recomputes all 32 charging cells exactly and compares them with the
/// reference values. Never throws; failures are listed in the report.
inline ChargingReport recompute_charging_tables() {
  ChargingReport rep;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      ChargingCell& cell = rep.cells[r][c];
      cell.signs = kSignRows[r];
      cell.cover = kCoverColumns[c];
      auto cfg = triplet_from_labels(kSignRows[r], kCoverColumns[c]);
      std::string where = std::string("cell (") + kSignRows[r] + ", " + kCoverColumns[c] + ")";
      cell.excluded = cfg.is_uncovered_bad();
      std::string ref_d = kReferenceD[r][c];
      std::string ref_b = kReferenceB[r][c];
      std::string ref_q = kReferenceRatio[r][c];
      bool ref_excluded = ref_d == "--";
      if (cell.excluded != ref_excluded || (ref_d == "--") != (ref_b == "--") || (ref_b == "--") != (ref_q == "--")) {
        rep.failures.push_back(where + ": excluded-cell mismatch");
        continue;
      }
      if (cell.excluded) {
        ++rep.excluded_cells;
        continue;
      }
      ++rep.defined_cells;
      cell.sums = triplet_sums(cfg);
      bool ok = matches_printed(cell.sums.d_sum, ref_d) && matches_printed(cell.sums.b_sum, ref_b);
      if (cell.sums.ratio) {
        ok = ok && ref_q != "0/0" && matches_printed(*cell.sums.ratio, ref_q);
        if (*cell.sums.ratio > rep.max_ratio) rep.max_ratio = *cell.sums.ratio;
        if (*cell.sums.ratio > Rational(3, 2)) rep.failures.push_back(where + ": ratio exceeds 3/2");
      } else {
        ok = ok && ref_q == "0/0" && cell.sums.d_sum == 0;
      }
      cell.matches = ok;
      if (ok) {
        ++rep.matched_cells;
      } else {
        rep.failures.push_back(where + ": value mismatch (d=" + cell.sums.d_sum.get_str() +
                               ", b=" + cell.sums.b_sum.get_str() + ")");
      }
    }
  }
  if (rep.excluded_cells != 1) rep.failures.push_back("expected exactly one excluded cell");

  rep.endpoint_lemma_holds = true;
  for (Sign s : {Sign::positive, Sign::negative}) {
    for (bool in : {false, true}) {
      auto [d, b] = pivot_endpoint_sums(s, in);
      if (d > b || (!in && d != 0)) {
        rep.endpoint_lemma_holds = false;
        rep.failures.push_back(std::string("endpoint lemma fails for ") +
                               (s == Sign::positive ? "+" : "-") + (in ? " in cover" : " not in cover"));
      }
    }
  }
  return rep;
}

/// As recompute_charging_tables(), but throws VerificationError naming the
/// first failing cell.
inline ChargingReport verify_charging_tables() {
  auto rep = recompute_charging_tables();
  if (!rep.ok()) throw VerificationError(rep.failures.front());
  return rep;
}

template <class W>
struct PivotTrace {
  std::vector<NodeId> pivot_order;
  Clustering clustering;
  W disagreements = W(0);
  std::vector<std::size_t> cover_removed;  // per round
};

namespace detail {

/// Pivot skeleton. `prob(sign, in_cover)` gives the join probability for an
/// existing edge; absent pairs never join. Coins are drawn in node-id order,
/// only for probabilities strictly between 0 and 1.
template <class W, class Prob>
PivotTrace<W> run_pivot(const SignedGraph<W>& g, const std::vector<char>& in_cover, std::uint64_t seed,
                        Prob prob) {
  const std::size_t n = g.num_nodes();
  SplitMix64 rng(seed);
  std::vector<std::vector<NodeId>> cover_adj(n);
  for (std::size_t e = 0; e < in_cover.size(); ++e) {
    if (!in_cover[e]) continue;
    auto ed = g.edge(static_cast<EdgeId>(e));
    cover_adj[ed.a].push_back(ed.b);
    cover_adj[ed.b].push_back(ed.a);
  }

  std::vector<NodeId> open(n);
  for (std::size_t v = 0; v < n; ++v) open[v] = static_cast<NodeId>(v);
  std::vector<int> label(n, -1);
  std::vector<char> is_open(n, 1);
  PivotTrace<W> trace;
  int round = 0;
  std::vector<NodeId> members;
  while (!open.empty()) {
    NodeId u = open[rng.bounded(open.size())];
    trace.pivot_order.push_back(u);
    members.assign(1, u);
    label[u] = round;
    for (NodeId v : open) {
      if (v == u) continue;
      auto eid = g.find_edge(u, v);
      if (!eid) continue;
      double p = prob(g.sign(*eid), in_cover.empty() ? false : static_cast<bool>(in_cover[*eid]));
      bool join = p >= 1.0 || (p > 0.0 && rng.uniform01() < p);
      if (join) {
        label[v] = round;
        members.push_back(v);
      }
    }
    std::size_t removed = 0;
    for (NodeId x : members) {
      for (NodeId y : cover_adj[x]) {
        if (!is_open[y]) continue;
        if (label[y] == round && y < x) continue;  // pair inside the cluster counted once
        ++removed;
      }
    }
    for (NodeId x : members) is_open[x] = 0;
    std::erase_if(open, [&](NodeId v) { return !is_open[v]; });
    trace.cover_removed.push_back(removed);
    ++round;
  }
  trace.clustering = Clustering(label);
  trace.disagreements = cc_cost(g, trace.clustering);
  return trace;
}

template <class W>
void require_feasible_cover(const SignedGraph<W>& g, const EdgeCover<W>& f) {
  if (!is_feasible_cover(g, f)) throw InputError("supplied cover does not intersect every bad triangle");
}

}  // namespace detail

/// Cover-aware pivot: edges in the cover join with probability 1/4
/// (positive) or 3/4 (negative); all other edges follow the sign.
template <class W>
PivotTrace<W> cover_pivot(const SignedGraph<W>& g, const EdgeCover<W>& f, std::uint64_t seed) {
  detail::require_feasible_cover(g, f);
  return detail::run_pivot(g, f.mask(g.num_edges()), seed,
                           [](Sign s, bool in) { return inclusion_probability(s, in).get_d(); });
}

/// Classical pivot: join exactly along positive edges.
template <class W>
PivotTrace<W> standard_pivot(const SignedGraph<W>& g, std::uint64_t seed) {
  return detail::run_pivot(g, {}, seed, [](Sign s, bool) { return s == Sign::positive ? 1.0 : 0.0; });
}

/// Flip the cover's signs, pivot on the flipped graph, score on the original.
template <class W>
PivotTrace<W> match_flip_pivot(const SignedGraph<W>& g, const EdgeCover<W>& f, std::uint64_t seed) {
  detail::require_feasible_cover(g, f);
  auto flipped = flip_edges(g, f);
  auto trace = detail::run_pivot(flipped, f.mask(g.num_edges()), seed,
                                 [](Sign s, bool) { return s == Sign::positive ? 1.0 : 0.0; });
  trace.disagreements = cc_cost(g, trace.clustering);
  return trace;
}

/// Exact expected disagreements of cover_pivot (or standard_pivot when the
/// cover is empty and feasible) by recursion over the unclustered set,
/// memoized on that set. Exponential; limited to 12 nodes.
template <class W>
Rational exact_expected_disagreements(const SignedGraph<W>& g, const EdgeCover<W>& f) {
  const std::size_t n = g.num_nodes();
  if (n > 12) throw CapacityError("exhaustive pivot expectation limited to 12 nodes");
  detail::require_feasible_cover(g, f);
  // 0 = no edge, +1 / -1 sign; weights as rationals.
  std::vector<int> sign(n * n, 0);
  std::vector<Rational> weight(n * n, Rational(0));
  std::vector<Rational> prob(n * n, Rational(0));
  for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
      if (u == v) continue;
      auto e = g.find_edge(u, v);
      if (!e) continue;
      sign[u * n + v] = sign_value(g.sign(*e));
      weight[u * n + v] = NumTraits<W>::to_rational(g.weight(*e));
      prob[u * n + v] = inclusion_probability(g.sign(*e), f.contains(*e));
    }
  }
  std::vector<std::optional<Rational>> memo(std::size_t{1} << n);
  memo[0] = Rational(0);

  auto expect = [&](auto&& self, std::uint32_t set) -> Rational {
    if (memo[set]) return *memo[set];
    Rational total(0);
    int k = std::popcount(set);
    for (std::size_t u = 0; u < n; ++u) {
      if (!(set >> u & 1U)) continue;
      std::uint32_t fixed = 1U << u;
      std::vector<std::size_t> random;
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || !(set >> v & 1U)) continue;
        const Rational& p = prob[u * n + v];
        if (p == 1) {
          fixed |= 1U << v;
        } else if (p != 0) {
          random.push_back(v);
        }
      }
      for (std::uint32_t pick = 0; pick < (1U << random.size()); ++pick) {
        Rational pr(1);
        std::uint32_t cluster = fixed;
        for (std::size_t i = 0; i < random.size(); ++i) {
          const Rational& p = prob[u * n + random[i]];
          if (pick >> i & 1U) {
            pr *= p;
            cluster |= 1U << random[i];
          } else {
            pr *= 1 - p;
          }
        }
        Rational cost(0);
        for (std::size_t x = 0; x < n; ++x) {
          if (!(cluster >> x & 1U)) continue;
          for (std::size_t y = 0; y < n; ++y) {
            if (!(set >> y & 1U) || y == x) continue;
            int s = sign[x * n + y];
            if (s == 0) continue;
            bool inside = cluster >> y & 1U;
            if (inside && y < x) continue;
            if ((inside && s < 0) || (!inside && s > 0)) cost += weight[x * n + y];
          }
        }
        total += pr * (cost + self(self, set & ~cluster));
      }
    }
    Rational result = total / k;
    memo[set] = result;
    return result;
  };
  return expect(expect, static_cast<std::uint32_t>((std::size_t{1} << n) - 1));
}

}  // namespace btt
