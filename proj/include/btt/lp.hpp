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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btt/error.hpp"
#include "btt/number.hpp"
#include "btt/signed_graph.hpp"
#include "btt/simplex.hpp"

namespace btt {

/// Per-edge x_e of the covering relaxation, with sum_e w_e x_e.
template <class W>
struct FractionalCover {
  std::vector<W> values;
  W objective = W(0);
};

/// Per-triangle y_t of the packing dual (indexed like the triangle list).
template <class W>
struct FractionalPacking {
  std::vector<W> values;
  W objective = W(0);
};

enum class LpStatus { exact_optimal, eps_approximate, feasible_only };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::exact_optimal:
      return "exact-optimal";
    case LpStatus::eps_approximate:
      return "eps-approximate";
    case LpStatus::feasible_only:
      return "feasible-only";
  }
  return "unknown";
}

template <class W>
struct LpSolution {
  FractionalCover<W> primal;
  std::optional<FractionalPacking<W>> dual;
  LpStatus status = LpStatus::feasible_only;
  double eps = 0.0;
  W lower = W(0);
  W upper = W(0);
  std::size_t iterations = 0;
};

/// Clamps values into [0, 1] and recomputes the objective.
template <class W>
FractionalCover<W> make_fractional_cover(const SignedGraph<W>& g, std::vector<W> values) {
  if (values.size() != g.num_edges()) throw InputError("fractional cover size mismatch");
  FractionalCover<W> x;
  x.values = std::move(values);
  for (std::size_t e = 0; e < x.values.size(); ++e) {
    auto& v = x.values[e];
    if (v < W(0)) v = W(0);
    if (v > W(1)) v = W(1);
    x.objective += g.weight(static_cast<EdgeId>(e)) * v;
  }
  return x;
}

template <class W>
bool check_fractional_feasibility(std::span<const BadTriangle> tris, const FractionalCover<W>& x,
                                  std::size_t num_edges, const W& tol) {
  if (x.values.size() != num_edges) throw InputError("fractional cover size mismatch");
  for (const auto& v : x.values) {
    if (v < -tol) return false;
  }
  for (const auto& t : tris) {
    W sum = x.values[t.edges[0]] + x.values[t.edges[1]] + x.values[t.edges[2]];
    if (sum < W(1) - tol) return false;
  }
  return true;
}

/// True iff every bad triangle sums to at least 1 - tol and every value is
/// at least -tol.
template <class W>
bool check_fractional_feasibility(const SignedGraph<W>& g, const FractionalCover<W>& x,
                                  const W& tol = W(0)) {
  auto tris = enumerate_bad_triangles(g);
  return check_fractional_feasibility<W>(tris, x, g.num_edges(), tol);
}

/// Packing feasibility: every edge load sum_{t∋e} y_t <= w_e + tol.
template <class W>
bool check_packing_feasibility(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                               const FractionalPacking<W>& y, const W& tol = W(0)) {
  if (y.values.size() != tris.size()) throw InputError("fractional packing size mismatch");
  std::vector<W> load(g.num_edges(), W(0));
  for (std::size_t t = 0; t < tris.size(); ++t) {
    if (y.values[t] < -tol) return false;
    for (EdgeId e : tris[t].edges) load[e] += y.values[t];
  }
  for (std::size_t e = 0; e < load.size(); ++e) {
    if (load[e] > g.weight(static_cast<EdgeId>(e)) + tol) return false;
  }
  return true;
}

/// Greedy in triangle order: keep a triangle if none of its edges is used yet.
/// The result is maximal and edge-disjoint.
inline std::vector<BadTriangle> greedy_maximal_packing(std::span<const BadTriangle> tris,
                                                       std::size_t num_edges) {
  std::vector<char> used(num_edges, 0);
  std::vector<BadTriangle> out;
  for (const auto& t : tris) {
    if (used[t.edges[0]] || used[t.edges[1]] || used[t.edges[2]]) continue;
    for (EdgeId e : t.edges) used[e] = 1;
    out.push_back(t);
  }
  return out;
}

template <class W>
std::vector<BadTriangle> greedy_maximal_packing(const SignedGraph<W>& g) {
  auto tris = enumerate_bad_triangles(g);
  return greedy_maximal_packing(tris, g.num_edges());
}

struct ExactLpOptions {
  std::size_t max_constraints = 50000;
};

/// Exact optimum of the covering LP via rational simplex on the packing dual.
/// Returns both sides; the solution is re-certified (primal feasibility, dual
/// feasibility, equal objectives) before being returned.
template <class W>
LpSolution<W> solve_exact(const SignedGraph<W>& g, std::span<const BadTriangle> tris,
                          const ExactLpOptions& opts = {}) {
  if (tris.size() > opts.max_constraints) {
    throw CapacityError("exact LP: " + std::to_string(tris.size()) + " bad triangles exceed the bound of " +
                        std::to_string(opts.max_constraints) + "; use the MWU solver");
  }
  const std::size_t num_edges = g.num_edges();
  std::vector<int> row_of(num_edges, -1);
  std::vector<EdgeId> edge_of_row;
  std::vector<std::vector<int>> sets;
  sets.reserve(tris.size());
  for (const auto& t : tris) {
    std::vector<int> s;
    for (EdgeId e : t.edges) {
      if (row_of[e] < 0) {
        row_of[e] = static_cast<int>(edge_of_row.size());
        edge_of_row.push_back(e);
      }
      s.push_back(row_of[e]);
    }
    sets.push_back(std::move(s));
  }
  std::vector<Rational> caps;
  caps.reserve(edge_of_row.size());
  for (EdgeId e : edge_of_row) caps.push_back(NumTraits<W>::to_rational(g.weight(e)));

  auto res = solve_packing_simplex<Rational>(sets, caps, 0.0);

  std::vector<Rational> xq(num_edges, Rational(0));
  for (std::size_t r = 0; r < edge_of_row.size(); ++r) {
    xq[edge_of_row[r]] = res.covering[r] > 1 ? Rational(1) : res.covering[r];
  }
  // Certificate in exact arithmetic.
  Rational primal_obj(0);
  for (std::size_t r = 0; r < edge_of_row.size(); ++r) primal_obj += caps[r] * xq[edge_of_row[r]];
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& e = tris[t].edges;
    if (xq[e[0]] + xq[e[1]] + xq[e[2]] < 1) throw InternalError("exact LP: primal infeasible");
  }
  std::vector<Rational> load(edge_of_row.size(), Rational(0));
  Rational dual_obj(0);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    if (res.packing[t] < 0) throw InternalError("exact LP: negative dual");
    for (int r : sets[t]) load[r] += res.packing[t];
    dual_obj += res.packing[t];
  }
  for (std::size_t r = 0; r < load.size(); ++r) {
    if (load[r] > caps[r]) throw InternalError("exact LP: dual infeasible");
  }
  if (primal_obj != dual_obj || dual_obj != res.value) throw InternalError("exact LP: duality gap");

  LpSolution<W> sol;
  std::vector<W> xv(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) xv[e] = NumTraits<W>::from_rational(xq[e]);
  sol.primal = make_fractional_cover(g, std::move(xv));
  FractionalPacking<W> y;
  y.values.reserve(tris.size());
  for (const auto& v : res.packing) {
    y.values.push_back(NumTraits<W>::from_rational(v));
    y.objective += y.values.back();
  }
  sol.dual = std::move(y);
  sol.status = LpStatus::exact_optimal;
  sol.lower = NumTraits<W>::from_rational(res.value);
  sol.upper = sol.lower;
  sol.iterations = res.pivots;
  return sol;
}

template <class W>
LpSolution<W> solve_exact(const SignedGraph<W>& g, const ExactLpOptions& opts = {}) {
  auto tris = enumerate_bad_triangles(g);
  return solve_exact(g, std::span<const BadTriangle>(tris), opts);
}

struct MwuOptions {
  /// 0 selects the default cap.
  std::size_t max_iterations = 0;
};

/// (1 + eps)-approximate covering LP by multiplicative weights.
///
/// Garg-Koenemann primal-dual scheme: lengths live on edges (the packing
/// constraints), the oracle returns the bad triangle of minimum length, and
/// the routed amount is the triangle's minimum weight. Each iterate gives a
/// feasible cover (lengths divided by the minimum triangle length) and a
/// feasible packing (flow divided by the maximum relative edge load). The
/// loop stops once the best cover is within 1 + eps of the packing value.
template <class W>
LpSolution<W> solve_mwu(const SignedGraph<W>& g, std::span<const BadTriangle> tris, double eps,
                        const MwuOptions& opts = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  const std::size_t num_edges = g.num_edges();
  LpSolution<W> sol;
  sol.status = LpStatus::eps_approximate;
  sol.eps = eps;

  std::vector<W> xw(num_edges, W(0));
  FractionalPacking<W> packing;
  packing.values.assign(tris.size(), W(0));

  // Triangles touching a zero-weight edge are covered for free.
  std::vector<std::size_t> active;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    bool free_cover = false;
    for (EdgeId e : tris[t].edges) {
      if (g.weight(e) == W(0)) {
        xw[e] = W(1);
        free_cover = true;
      }
    }
    if (!free_cover) active.push_back(t);
  }
  if (active.empty()) {
    sol.primal = make_fractional_cover(g, std::move(xw));
    sol.dual = std::move(packing);
    sol.lower = W(0);
    sol.upper = sol.primal.objective;
    return sol;
  }

  std::vector<int> row_of(num_edges, -1);
  std::vector<EdgeId> edge_of_row;
  for (std::size_t t : active) {
    for (EdgeId e : tris[t].edges) {
      if (row_of[e] < 0) {
        row_of[e] = static_cast<int>(edge_of_row.size());
        edge_of_row.push_back(e);
      }
    }
  }
  const std::size_t m = edge_of_row.size();
  std::vector<double> w(m);
  for (std::size_t r = 0; r < m; ++r) w[r] = to_double(g.weight(edge_of_row[r]));
  std::vector<std::array<int, 3>> rows(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (int j = 0; j < 3; ++j) rows[i][j] = row_of[tris[active[i]].edges[j]];
  }

  const double eta = eps / 4.0;
  std::size_t cap = opts.max_iterations;
  if (cap == 0) {
    double base = static_cast<double>(m) * std::log(static_cast<double>(m) + 1.0) / (eta * eta);
    cap = static_cast<std::size_t>(10.0 * std::ceil(base)) + 1000;
  }

  std::vector<double> len(m);
  for (std::size_t r = 0; r < m; ++r) len[r] = 1.0 / w[r];
  std::vector<double> flow(active.size(), 0.0);
  std::vector<double> load(m, 0.0);
  double total_flow = 0.0;
  double max_rel_load = 0.0;
  double best_primal = std::numeric_limits<double>::infinity();
  std::vector<double> best_len;

  auto certify = [&]() -> bool {
    // Exact (or float) re-evaluation in W of the best iterate.
    std::vector<W> x = xw;
    for (std::size_t r = 0; r < m; ++r) x[edge_of_row[r]] = NumTraits<W>::from_double(best_len[r]);
    W min_sum(0);
    bool first = true;
    for (const auto& rw : rows) {
      W s = x[edge_of_row[rw[0]]] + x[edge_of_row[rw[1]]] + x[edge_of_row[rw[2]]];
      if (first || s < min_sum) {
        min_sum = s;
        first = false;
      }
    }
    if (!(min_sum > W(0))) return false;
    for (std::size_t r = 0; r < m; ++r) x[edge_of_row[r]] /= min_sum;
    auto cover = make_fractional_cover(g, std::move(x));

    FractionalPacking<W> y;
    y.values.assign(tris.size(), W(0));
    std::vector<W> ld(m, W(0));
    for (std::size_t i = 0; i < active.size(); ++i) {
      W f = NumTraits<W>::from_double(flow[i]);
      y.values[active[i]] = f;
      for (int r : rows[i]) ld[r] += f;
    }
    W scale(0);
    for (std::size_t r = 0; r < m; ++r) {
      W rel = ld[r] / g.weight(edge_of_row[r]);
      if (rel > scale) scale = rel;
    }
    if (!(scale > W(0))) return false;
    for (auto& v : y.values) {
      v /= scale;
      y.objective += v;
    }
    if (cover.objective > y.objective * NumTraits<W>::from_double(1.0 + eps)) return false;
    sol.primal = std::move(cover);
    sol.lower = y.objective;
    sol.upper = sol.primal.objective;
    sol.dual = std::move(y);
    return true;
  };

  for (std::size_t iter = 1; iter <= cap; ++iter) {
    std::size_t best_t = 0;
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double l = len[rows[i][0]] + len[rows[i][1]] + len[rows[i][2]];
      if (l < alpha) {
        alpha = l;
        best_t = i;
      }
    }
    double d = 0.0;
    for (std::size_t r = 0; r < m; ++r) d += w[r] * len[r];
    if (d / alpha < best_primal) {
      best_primal = d / alpha;
      best_len.resize(m);
      for (std::size_t r = 0; r < m; ++r) best_len[r] = len[r] / alpha;
    }

    const auto& rt = rows[best_t];
    double inc = std::min({w[rt[0]], w[rt[1]], w[rt[2]]});
    flow[best_t] += inc;
    total_flow += inc;
    for (int r : rt) {
      load[r] += inc;
      max_rel_load = std::max(max_rel_load, load[r] / w[r]);
      len[r] *= 1.0 + eta * inc / w[r];
    }
    double dual = total_flow / max_rel_load;
    if (best_primal <= (1.0 + eps) * (1.0 - 1e-9) * dual && certify()) {
      sol.iterations = iter;
      return sol;
    }
    double lmax = *std::max_element(len.begin(), len.end());
    if (lmax > 1e200) {
      for (auto& l : len) l /= lmax;
    }
  }
  throw ConvergenceError("MWU did not reach the (1+eps) certificate within " + std::to_string(cap) +
                             " iterations",
                         total_flow / std::max(max_rel_load, 1e-300), best_primal);
}

template <class W>
LpSolution<W> solve_mwu(const SignedGraph<W>& g, double eps, const MwuOptions& opts = {}) {
  auto tris = enumerate_bad_triangles(g);
  return solve_mwu(g, std::span<const BadTriangle>(tris), eps, opts);
}

}  // namespace btt
