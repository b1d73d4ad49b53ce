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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btt/error.hpp"
#include "btt/lp.hpp"
#include "btt/number.hpp"
#include "btt/signed_graph.hpp"
#include "btt/simplex.hpp"

namespace btt {

struct ExactOptions {
  std::size_t node_budget = 2'000'000;
  /// Restrict covers to positive edges.
  bool positive_only = false;
  /// LP relaxation bound at every search node (double simplex).
  bool use_lp_bound = true;
  /// Collect every optimal cover, up to `max_optima`.
  bool enumerate_all = false;
  std::size_t max_optima = 64;
  std::size_t max_triangles = 50000;
};

template <class W>
struct ExactResult {
  W value = W(0);
  std::optional<EdgeCover<W>> cover;
  std::optional<Clustering> clustering;
  std::vector<EdgeCover<W>> optima;  // enumerate_all only
  bool optima_truncated = false;
  std::size_t nodes_explored = 0;
  std::size_t nodes_pruned = 0;
  /// Lower bound proven at the root before branching.
  double root_lower_bound = 0.0;
};

namespace detail {

template <class W>
bool all_integral_weights(const SignedGraph<W>& g, std::span<const EdgeId> ids) {
  for (EdgeId e : ids) {
    W w = g.weight(e);
    if constexpr (NumTraits<W>::exact) {
      if (w.get_den() != 1) return false;
    } else {
      if (w != std::floor(w)) return false;
    }
  }
  return true;
}

/// Branch and bound for minimum-weight bad-triangle covers.
template <class W>
class BttSearch {
 public:
  BttSearch(const SignedGraph<W>& g, std::span<const BadTriangle> tris, const ExactOptions& opts)
      : g_(g), tris_(tris.begin(), tris.end()), opts_(opts) {
    const std::size_t m = g.num_edges();
    status_.assign(m, kUndecided);
    hits_.assign(tris_.size(), 0);
    edge_tris_.assign(m, {});
    options_.resize(tris_.size());
    std::vector<EdgeId> candidates;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      for (EdgeId e : tris_[t].edges) {
        if (opts.positive_only && g.sign(e) != Sign::positive) continue;
        options_[t].push_back(e);
        edge_tris_[e].push_back(static_cast<int>(t));
        candidates.push_back(e);
      }
      std::sort(options_[t].begin(), options_[t].end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    integral_ = all_integral_weights(g, candidates);
  }

  ExactResult<W> run() {
    seed_with_greedy();
    root_bound_ = bound(current_uncovered());
    dfs();
    ExactResult<W> res;
    res.value = best_cost_;
    res.cover = EdgeCover<W>(g_, best_ids_);
    res.optima = std::move(optima_);
    res.optima_truncated = truncated_;
    res.nodes_explored = nodes_;
    res.nodes_pruned = pruned_;
    res.root_lower_bound = root_bound_;
    if (res.cover->cost() != res.value || !is_feasible_cover<W>(tris_, *res.cover, g_.num_edges())) {
      throw InternalError("exact search returned an invalid witness");
    }
    return res;
  }

 private:
  static constexpr char kUndecided = 0;
  static constexpr char kIncluded = 1;
  static constexpr char kExcluded = 2;

  std::vector<int> current_uncovered() const {
    std::vector<int> out;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (hits_[t] == 0) out.push_back(static_cast<int>(t));
    }
    return out;
  }

  std::vector<EdgeId> available(int t) const {
    std::vector<EdgeId> out;
    for (EdgeId e : options_[t]) {
      if (status_[e] == kUndecided) out.push_back(e);
    }
    return out;
  }

  void seed_with_greedy() {
    // Weighted greedy set cover over the allowed options.
    std::vector<char> covered(tris_.size(), 0);
    std::size_t left = tris_.size();
    std::vector<EdgeId> ids;
    W cost(0);
    while (left > 0) {
      EdgeId pick = -1;
      double best_score = -1.0;
      for (std::size_t t = 0; t < tris_.size(); ++t) {
        if (covered[t]) continue;
        for (EdgeId e : options_[t]) {
          std::size_t gain = 0;
          for (int s : edge_tris_[e]) gain += !covered[s];
          double w = to_double(g_.weight(e));
          double score = w > 0 ? static_cast<double>(gain) / w : std::numeric_limits<double>::infinity();
          if (score > best_score || (score == best_score && e < pick)) {
            best_score = score;
            pick = e;
          }
        }
      }
      if (pick < 0) throw InternalError("triangle without cover options");
      ids.push_back(pick);
      cost += g_.weight(pick);
      for (int s : edge_tris_[pick]) {
        if (!covered[s]) {
          covered[s] = 1;
          --left;
        }
      }
    }
    best_cost_ = EdgeCover<W>(g_, ids).cost();
    best_ids_ = ids;
  }

  /// max(greedy disjoint packing, LP relaxation) over the uncovered triangles
  /// restricted to undecided options.
  double bound(const std::vector<int>& uncovered) {
    std::vector<char> used(g_.num_edges(), 0);
    double packing = 0.0;
    for (int t : uncovered) {
      auto av = available(t);
      if (av.empty()) return std::numeric_limits<double>::infinity();
      bool free = true;
      for (EdgeId e : av) free = free && !used[e];
      if (!free) continue;
      double mn = std::numeric_limits<double>::infinity();
      for (EdgeId e : av) {
        used[e] = 1;
        mn = std::min(mn, to_double(g_.weight(e)));
      }
      packing += mn;
    }
    if (!opts_.use_lp_bound || uncovered.empty()) return packing;
    std::vector<int> row_of(g_.num_edges(), -1);
    std::vector<double> caps;
    std::vector<std::vector<int>> sets;
    sets.reserve(uncovered.size());
    for (int t : uncovered) {
      std::vector<int> s;
      for (EdgeId e : available(t)) {
        if (row_of[e] < 0) {
          row_of[e] = static_cast<int>(caps.size());
          caps.push_back(to_double(g_.weight(e)));
        }
        s.push_back(row_of[e]);
      }
      sets.push_back(std::move(s));
    }
    auto lp = solve_packing_simplex<double>(sets, caps, 1e-9);
    // A float optimum can overshoot slightly; back off before using it.
    double lp_bound = lp.value - 1e-7 * (1.0 + std::abs(lp.value));
    return std::max(packing, lp_bound);
  }

  bool prune(const W& cost, double extra) const {
    double lb = to_double(cost) + extra;
    double best = to_double(best_cost_);
    if (integral_) {
      double need = std::ceil(lb - 1e-6);
      return opts_.enumerate_all ? need > best : need >= best;
    }
    double slack = 1e-9 * (1.0 + std::abs(best));
    return opts_.enumerate_all ? lb > best + slack : lb >= best - slack;
  }

  void leaf() {
    std::vector<EdgeId> ids;
    for (std::size_t e = 0; e < status_.size(); ++e) {
      if (status_[e] == kIncluded) ids.push_back(static_cast<EdgeId>(e));
    }
    // Summed in id order so equal sets give bit-identical float costs.
    const W cost = EdgeCover<W>(g_, ids).cost();
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_ids_ = ids;
      optima_.clear();
      truncated_ = false;
    }
    if (opts_.enumerate_all && cost == best_cost_) {
      if (optima_.size() < opts_.max_optima) {
        optima_.emplace_back(g_, ids);
      } else {
        truncated_ = true;
      }
    }
  }

  void set_included(EdgeId e, bool on) {
    status_[e] = on ? kIncluded : kUndecided;
    for (int t : edge_tris_[e]) hits_[t] += on ? 1 : -1;
    if (on) {
      cost_ += g_.weight(e);
    } else {
      cost_ -= g_.weight(e);
    }
  }

  void dfs() {
    if (++nodes_ > opts_.node_budget) {
      throw BudgetExhausted("exact cover search exceeded its node budget", root_bound_, to_double(best_cost_));
    }
    auto uncovered = current_uncovered();
    if (uncovered.empty()) {
      leaf();
      return;
    }
    int branch_t = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (int t : uncovered) {
      std::size_t cnt = 0;
      for (EdgeId e : options_[t]) cnt += status_[e] == kUndecided;
      if (cnt == 0) return;
      if (cnt < fewest) {
        fewest = cnt;
        branch_t = t;
      }
    }
    if (prune(cost_, bound(uncovered))) {
      ++pruned_;
      return;
    }
    auto opts = available(branch_t);
    std::vector<EdgeId> excluded;
    for (EdgeId e : opts) {
      set_included(e, true);
      dfs();
      set_included(e, false);
      status_[e] = kExcluded;
      excluded.push_back(e);
    }
    for (EdgeId e : excluded) status_[e] = kUndecided;
  }

  const SignedGraph<W>& g_;
  std::vector<BadTriangle> tris_;
  ExactOptions opts_;
  std::vector<char> status_;
  std::vector<int> hits_;
  std::vector<std::vector<int>> edge_tris_;
  std::vector<std::vector<EdgeId>> options_;
  bool integral_ = false;
  W cost_ = W(0);
  W best_cost_ = W(0);
  std::vector<EdgeId> best_ids_;
  std::vector<EdgeCover<W>> optima_;
  bool truncated_ = false;
  std::size_t nodes_ = 0;
  std::size_t pruned_ = 0;
  double root_bound_ = 0.0;
};

}  // namespace detail

/// Minimum-weight bad-triangle cover by branch and bound. Branches on the
/// uncovered triangle with the fewest remaining options (ties: lowest
/// triangle index, options in edge-id order): include the first option, or
/// exclude it and continue with the next.
template <class W>
ExactResult<W> exact_btt(const SignedGraph<W>& g, std::span<const BadTriangle> tris, ExactOptions opts = {}) {
  if (tris.size() > opts.max_triangles) {
    throw CapacityError("exact cover search: too many bad triangles (" + std::to_string(tris.size()) + ")");
  }
  if (tris.empty()) {
    ExactResult<W> res;
    res.cover = EdgeCover<W>(g, {});
    if (opts.enumerate_all) res.optima.push_back(*res.cover);
    return res;
  }
  detail::BttSearch<W> search(g, tris, opts);
  return search.run();
}

template <class W>
ExactResult<W> exact_btt(const SignedGraph<W>& g, ExactOptions opts = {}) {
  auto tris = enumerate_bad_triangles(g);
  return exact_btt(g, std::span<const BadTriangle>(tris), opts);
}

/// Minimum cover restricted to positive edges. With `enumerate_all` set,
/// `optima` lists every optimal cover (up to `max_optima`).
template <class W>
ExactResult<W> exact_btt_positive_only(const SignedGraph<W>& g, ExactOptions opts = {}) {
  opts.positive_only = true;
  return exact_btt(g, opts);
}

struct ExactCcOptions {
  std::size_t node_budget = 50'000'000;
  std::size_t max_nodes = 16;
};

/// Minimum-disagreement clustering: restricted-growth-string enumeration with
/// incremental cost, pruned by the partial cost plus an edge-disjoint packing
/// of bad triangles that have at least two still-unassigned nodes.
template <class W>
ExactResult<W> exact_cc(const SignedGraph<W>& g, const ExactCcOptions& opts = {}) {
  const std::size_t n = g.num_nodes();
  if (n > opts.max_nodes) {
    throw CapacityError("exact clustering limited to " + std::to_string(opts.max_nodes) + " nodes");
  }
  ExactResult<W> res;
  if (n == 0) {
    res.clustering = Clustering();
    return res;
  }
  // Signed weight matrix: >0 positive edge, <0 negative edge, 0 absent.
  std::vector<W> pos(n * n, W(0));
  std::vector<W> neg(n * n, W(0));
  for (const auto& e : g.edges()) {
    auto& target = e.positive() ? pos : neg;
    target[e.a * n + e.b] = e.weight;
    target[e.b * n + e.a] = e.weight;
  }
  auto tris = enumerate_bad_triangles(g);
  std::vector<W> suffix_bound(n + 1, W(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> used(g.num_edges(), 0);
    W sum(0);
    for (const auto& t : tris) {
      int open = (static_cast<std::size_t>(t.nodes[0]) >= i) + (static_cast<std::size_t>(t.nodes[1]) >= i) +
                 (static_cast<std::size_t>(t.nodes[2]) >= i);
      if (open < 2) continue;
      if (used[t.edges[0]] || used[t.edges[1]] || used[t.edges[2]]) continue;
      for (EdgeId e : t.edges) used[e] = 1;
      sum += std::min({g.weight(t.edges[0]), g.weight(t.edges[1]), g.weight(t.edges[2])});
    }
    suffix_bound[i] = sum;
  }

  std::vector<int> best_labels(n);
  W best = cc_cost(g, Clustering::singletons(n));
  for (std::size_t v = 0; v < n; ++v) best_labels[v] = static_cast<int>(v);
  W single = cc_cost(g, Clustering::single_cluster(n));
  if (single < best) {
    best = single;
    std::fill(best_labels.begin(), best_labels.end(), 0);
  }

  std::vector<int> labels(n, 0);
  std::size_t nodes = 0;
  auto dfs = [&](auto&& self, std::size_t i, int k, const W& cost) -> void {
    if (++nodes > opts.node_budget) {
      throw BudgetExhausted("exact clustering exceeded its node budget", to_double(suffix_bound[0]),
                            to_double(best));
    }
    if (!(cost + suffix_bound[i] < best)) {
      ++res.nodes_pruned;
      return;
    }
    if (i == n) {
      best = cost;
      best_labels = labels;
      return;
    }
    for (int c = 0; c <= k; ++c) {
      W delta(0);
      for (std::size_t j = 0; j < i; ++j) {
        if (labels[j] == c) {
          delta += neg[i * n + j];
        } else {
          delta += pos[i * n + j];
        }
      }
      labels[i] = c;
      self(self, i + 1, std::max(k, c + 1), cost + delta);
    }
  };
  labels[0] = 0;
  dfs(dfs, 1, 1, W(0));

  res.value = best;
  res.clustering = Clustering(best_labels);
  res.nodes_explored = nodes;
  res.root_lower_bound = to_double(suffix_bound[0]);
  if (cc_cost(g, *res.clustering) != res.value) throw InternalError("exact clustering witness mismatch");
  return res;
}

template <class W>
struct SurveyInstance {
  std::string id;
  std::uint64_t seed = 0;
  SignedGraph<W> graph;
};

template <class W>
struct SurveyRow {
  std::string id;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  bool complete = false;
  std::optional<W> opt_delta;
  std::optional<W> opt_cc;
  /// OPT_CC / OPT_Δ, 1 by convention when both are zero.
  std::optional<Rational> ratio;
  double runtime_ms = 0.0;
  std::string error;
  bool violation = false;       // ratio below 1, or above 3/2 on a complete unweighted graph
  bool counterexample = false;  // ratio > 1 on a complete graph
};

template <class W>
struct SurveyReport {
  std::vector<SurveyRow<W>> rows;
  std::size_t violations = 0;
  std::size_t counterexamples = 0;
  std::size_t errors = 0;
  std::vector<std::size_t> counterexample_rows;
};

/// OPT_Δ, OPT_CC and their ratio on every instance. Oracle budget errors are
/// recorded per row and the survey continues.
template <class W>
SurveyReport<W> ratio_survey(std::span<const SurveyInstance<W>> instances, const ExactOptions& btt_opts = {},
                             const ExactCcOptions& cc_opts = {}) {
  SurveyReport<W> rep;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    SurveyRow<W> row;
    row.id = inst.id;
    row.seed = inst.seed;
    row.n = inst.graph.num_nodes();
    row.complete = inst.graph.complete();
    auto start = std::chrono::steady_clock::now();
    try {
      auto d = exact_btt(inst.graph, btt_opts);
      auto c = exact_cc(inst.graph, cc_opts);
      row.opt_delta = d.value;
      row.opt_cc = c.value;
      Rational qd = NumTraits<W>::to_rational(d.value);
      Rational qc = NumTraits<W>::to_rational(c.value);
      if (qd == 0) {
        row.ratio = qc == 0 ? Rational(1) : Rational(-1);  // -1 marks an unbounded ratio
      } else {
        row.ratio = Rational(qc / qd);
      }
      bool below = qc < qd;
      bool above = qd == 0 ? qc > 0 : *row.ratio > Rational(3, 2);
      row.violation = below || (row.complete && inst.graph.unweighted() && above);
      row.counterexample = row.complete && qc > qd;
    } catch (const CapacityError& e) {
      row.error = e.what();
      ++rep.errors;
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.violations += row.violation;
    if (row.counterexample) {
      ++rep.counterexamples;
      rep.counterexample_rows.push_back(i);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace btt
