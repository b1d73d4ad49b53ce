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
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "btt/error.hpp"
#include "btt/lp.hpp"
#include "btt/number.hpp"
#include "btt/random.hpp"
#include "btt/signed_graph.hpp"

namespace btt {

/// Integral cover produced by one of the rounding algorithms, with the lower
/// bound it is certified against.
template <class W>
struct RoundingOutcome {
  EdgeCover<W> cover;
  std::string algorithm;
  std::optional<W> threshold;  // r, randomized and sweep only
  std::optional<std::uint64_t> seed;
  W lower_bound = W(0);
  /// cost / lower_bound; 1 when both are zero, +inf when only the bound is.
  double certified_ratio = 1.0;
};

namespace detail {

template <class W>
RoundingOutcome<W> make_outcome(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                                std::vector<EdgeId> ids, std::string tag, const W& lower) {
  RoundingOutcome<W> out;
  out.cover = EdgeCover<W>(g, std::move(ids));
  if (!is_feasible_cover<W>(tris, out.cover, g.num_edges())) {
    throw InternalError(tag + " produced an infeasible cover");
  }
  out.algorithm = std::move(tag);
  out.lower_bound = lower;
  if (lower > W(0)) {
    out.certified_ratio = to_double(out.cover.cost()) / to_double(lower);
  } else {
    out.certified_ratio = out.cover.cost() == W(0) ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return out;
}

template <class W>
W feasibility_tolerance() {
  if constexpr (NumTraits<W>::exact) {
    return W(0);
  } else {
    return W(1e-9);
  }
}

template <class W>
void require_feasible(std::span<const BadTriangle> tris, const FractionalCover<W>& x, std::size_t num_edges) {
  if (!check_fractional_feasibility<W>(tris, x, num_edges, feasibility_tolerance<W>())) {
    throw InputError("fractional cover is infeasible");
  }
}

}  // namespace detail

/// Union of the edges of a greedy maximal edge-disjoint packing. The bound
/// is the packing value sum_t min_{e in t} w_e (the packing size when
/// unweighted).
template <class W>
RoundingOutcome<W> standard_three_approx(const SignedGraph<W>& g, std::span<const BadTriangle> tris) {
  auto packing = greedy_maximal_packing(tris, g.num_edges());
  std::vector<EdgeId> ids;
  W lower(0);
  for (const auto& t : packing) {
    ids.insert(ids.end(), t.edges.begin(), t.edges.end());
    lower += std::min({g.weight(t.edges[0]), g.weight(t.edges[1]), g.weight(t.edges[2])});
  }
  return detail::make_outcome(g, tris, std::move(ids), "3approx", lower);
}

template <class W>
RoundingOutcome<W> standard_three_approx(const SignedGraph<W>& g) {
  auto tris = enumerate_bad_triangles(g);
  return standard_three_approx(g, std::span<const BadTriangle>(tris));
}

template <class W>
struct CutEdge {
  NodeId u;
  NodeId v;
  W weight;
};

template <class W>
struct MaxCutResult {
  std::vector<char> side;  // 0 or 1 per node
  W cut_weight = W(0);
  W total_weight = W(0);

  std::vector<NodeId> part(char s) const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < side.size(); ++v) {
      if (side[v] == s) out.push_back(static_cast<NodeId>(v));
    }
    return out;
  }
};

/// Single-vertex-move local search, first improvement in node-id order,
/// starting from everything on side 0. At the fixed point every vertex has
/// at least half of its incident weight cut, so the cut is at least half of
/// the total weight.
template <class W>
MaxCutResult<W> local_search_max_cut(std::size_t n, std::span<const CutEdge<W>> edges) {
  std::vector<std::vector<std::pair<NodeId, W>>> adj(n);
  MaxCutResult<W> res;
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
    res.total_weight += e.weight;
  }
  res.side.assign(n, 0);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t v = 0; v < n; ++v) {
      W same(0);
      W across(0);
      for (const auto& [u, w] : adj[v]) {
        if (res.side[u] == res.side[v]) {
          same += w;
        } else {
          across += w;
        }
      }
      bool gain;
      if constexpr (NumTraits<W>::exact) {
        gain = same > across;
      } else {
        gain = same > across + 1e-12 * (same + across);
      }
      if (gain) {
        res.side[v] ^= 1;
        improved = true;
      }
    }
  }
  for (const auto& e : edges) {
    if (res.side[e.u] != res.side[e.v]) res.cut_weight += e.weight;
  }
  return res;
}

/// Max cut of the subgraph formed by `edge_ids` (all signs).
template <class W>
MaxCutResult<W> local_search_max_cut(const SignedGraph<W>& g, std::span<const EdgeId> edge_ids) {
  std::vector<CutEdge<W>> edges;
  edges.reserve(edge_ids.size());
  for (EdgeId id : edge_ids) {
    auto e = g.edge(id);
    edges.push_back({e.a, e.b, e.weight});
  }
  return local_search_max_cut<W>(g.num_nodes(), edges);
}

/// Iterated LP rounding followed by a max-cut finish.
///
/// Each pass harvests the edges with x_e >= 1/2 into the cover, deletes every
/// edge with x_e = 0 or x_e >= 1/2, and re-solves the LP on the bad
/// triangles that survive. The loop runs while some remaining edge has
/// x_e = 0. The remaining edges are then split by a local-search max cut and
/// every edge inside a part joins the cover.
template <class W>
RoundingOutcome<W> krivelevich(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                               const ExactLpOptions& lp_opts = {}) {
  const std::size_t num_edges = g.num_edges();
  std::vector<char> alive(num_edges, 1);
  std::vector<EdgeId> cover;
  std::vector<BadTriangle> current(tris.begin(), tris.end());

  auto sol = solve_exact(g, std::span<const BadTriangle>(current), lp_opts);
  const W lower = sol.primal.objective;
  const W half = W(1) / W(2);

  auto has_zero = [&] {
    for (std::size_t e = 0; e < num_edges; ++e) {
      if (alive[e] && sol.primal.values[e] == W(0)) return true;
    }
    return false;
  };

  while (has_zero()) {
    for (std::size_t e = 0; e < num_edges; ++e) {
      if (!alive[e]) continue;
      const W& xe = sol.primal.values[e];
      if (xe >= half) cover.push_back(static_cast<EdgeId>(e));
      if (xe == W(0) || xe >= half) alive[e] = 0;
    }
    std::erase_if(current, [&](const BadTriangle& t) {
      return !alive[t.edges[0]] || !alive[t.edges[1]] || !alive[t.edges[2]];
    });
    sol = solve_exact(g, std::span<const BadTriangle>(current), lp_opts);
  }

  std::vector<EdgeId> remaining;
  for (std::size_t e = 0; e < num_edges; ++e) {
    if (alive[e]) remaining.push_back(static_cast<EdgeId>(e));
  }
  auto cut = local_search_max_cut(g, std::span<const EdgeId>(remaining));
  for (EdgeId id : remaining) {
    auto e = g.edge(id);
    if (cut.side[e.a] == cut.side[e.b]) cover.push_back(id);
  }
  return detail::make_outcome(g, tris, std::move(cover), "kriv", lower);
}

template <class W>
RoundingOutcome<W> krivelevich(const SignedGraph<W>& g, const ExactLpOptions& lp_opts = {}) {
  auto tris = enumerate_bad_triangles(g);
  return krivelevich(g, std::span<const BadTriangle>(tris), lp_opts);
}

/// Negative edges with x_e > tau plus positive edges with x_e >= (1 - tau)/2.
/// The factor-2 bound needs x to be an exact optimum; feasibility of the
/// output only needs feasibility of x.
template <class W>
RoundingOutcome<W> round_deterministic(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                                       const FractionalCover<W>& x, const W& lower) {
  detail::require_feasible(tris, x, g.num_edges());
  const W tau = NumTraits<W>::tau();
  const W pos_threshold = (W(1) - tau) / W(2);
  // Half the slack on negatives absorbs the feasibility tolerance in float mode.
  const W half_tau = tau / W(2);
  std::vector<EdgeId> ids;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto id = static_cast<EdgeId>(e);
    const W& xe = x.values[e];
    if (g.sign(id) == Sign::negative ? xe > half_tau : xe >= pos_threshold) ids.push_back(id);
  }
  return detail::make_outcome(g, tris, std::move(ids), "det2", lower);
}

namespace detail {

// Shared by threshold rounding and the sweep so both compare identical values.
template <class W>
W positive_key(const W& x) {
  return W(2) * x + NumTraits<W>::tau();
}

template <class W>
W negative_key(const W& x) {
  return W(1) - x + NumTraits<W>::tau() / W(2);
}

}  // namespace detail

/// Threshold rounding at a fixed r in [0, 1]: positive e joins iff
/// 2 x_e + tau >= r, negative e joins iff 1 - x_e + tau/2 < r.
template <class W>
RoundingOutcome<W> round_with_threshold(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                                        const FractionalCover<W>& x, const W& r, const W& lower,
                                        std::string tag = "rand2") {
  detail::require_feasible(tris, x, g.num_edges());
  if (r < W(0) || r > W(1)) throw InputError("threshold r must lie in [0, 1]");
  std::vector<EdgeId> ids;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto id = static_cast<EdgeId>(e);
    const W& xe = x.values[e];
    if (g.sign(id) == Sign::negative ? detail::negative_key(xe) < r : detail::positive_key(xe) >= r) {
      ids.push_back(id);
    }
  }
  auto out = detail::make_outcome(g, tris, std::move(ids), std::move(tag), lower);
  out.threshold = r;
  return out;
}

template <class W>
W draw_threshold(SplitMix64& rng) {
  if constexpr (NumTraits<W>::exact) {
    return rng.uniform01_rational();
  } else {
    return rng.uniform01();
  }
}

/// Draws r uniformly from [0, 1) with the seeded generator and rounds at r.
template <class W>
RoundingOutcome<W> round_randomized(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                                    const FractionalCover<W>& x, std::uint64_t seed, const W& lower) {
  SplitMix64 rng(seed);
  W r = draw_threshold<W>(rng);
  auto out = round_with_threshold(g, tris, x, r, lower, "rand2");
  out.seed = seed;
  return out;
}

/// Every combinatorially distinct threshold rounding, keeping the cheapest.
///
/// A positive edge is selected for r <= 2 x_e + tau and a negative edge for
/// r > 1 - x_e + tau, so the outcome only changes at these breakpoints. The
/// candidates are 0, 1, every breakpoint in [0, 1] and the midpoint between
/// consecutive candidates (the right-hand limit at a negative breakpoint).
/// Costs come from prefix sums over the two sorted breakpoint lists. Ties keep
/// the largest r, so r = 1 (the deterministic rounding) wins ties.
template <class W>
RoundingOutcome<W> derandomized_sweep(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                                      const FractionalCover<W>& x, const W& lower) {
  detail::require_feasible(tris, x, g.num_edges());
  std::vector<std::pair<W, W>> pos;  // (breakpoint, weight)
  std::vector<std::pair<W, W>> neg;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto id = static_cast<EdgeId>(e);
    if (g.sign(id) == Sign::positive) {
      pos.emplace_back(detail::positive_key(x.values[e]), g.weight(id));
    } else {
      neg.emplace_back(detail::negative_key(x.values[e]), g.weight(id));
    }
  }
  auto by_first = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(pos.begin(), pos.end(), by_first);
  std::sort(neg.begin(), neg.end(), by_first);
  // pos_suffix[i] = weight of pos[i..]; neg_prefix[i] = weight of neg[..i).
  std::vector<W> pos_suffix(pos.size() + 1, W(0));
  for (std::size_t i = pos.size(); i-- > 0;) pos_suffix[i] = pos_suffix[i + 1] + pos[i].second;
  std::vector<W> neg_prefix(neg.size() + 1, W(0));
  for (std::size_t i = 0; i < neg.size(); ++i) neg_prefix[i + 1] = neg_prefix[i] + neg[i].second;

  std::vector<W> points{W(0), W(1)};
  for (const auto& p : pos) {
    if (p.first >= W(0) && p.first <= W(1)) points.push_back(p.first);
  }
  for (const auto& p : neg) {
    if (p.first >= W(0) && p.first <= W(1)) points.push_back(p.first);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t distinct = points.size();
  for (std::size_t i = 0; i + 1 < distinct; ++i) points.push_back((points[i] + points[i + 1]) / W(2));
  std::sort(points.begin(), points.end());

  auto cost_at = [&](const W& r) {
    // Positive: breakpoint >= r. Negative: breakpoint < r.
    auto pit = std::lower_bound(pos.begin(), pos.end(), r, [](const auto& p, const W& v) { return p.first < v; });
    auto nit = std::lower_bound(neg.begin(), neg.end(), r, [](const auto& p, const W& v) { return p.first < v; });
    return pos_suffix[pit - pos.begin()] + neg_prefix[nit - neg.begin()];
  };

  W best_r = points.back();
  W best_cost = cost_at(best_r);
  for (std::size_t i = points.size() - 1; i-- > 0;) {
    W c = cost_at(points[i]);
    if (c < best_cost) {
      best_cost = c;
      best_r = points[i];
    }
  }
  auto out = round_with_threshold(g, tris, x, best_r, lower, "sweep2");
  bool same;
  if constexpr (NumTraits<W>::exact) {
    same = out.cover.cost() == best_cost;
  } else {
    same = std::abs(out.cover.cost() - best_cost) <= 1e-9 * (1.0 + std::abs(best_cost));
  }
  if (!same) throw InternalError("sweep cost bookkeeping mismatch");
  return out;
}

}  // namespace btt
