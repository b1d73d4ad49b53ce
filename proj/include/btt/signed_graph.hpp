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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "btt/error.hpp"
#include "btt/number.hpp"

namespace btt {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

inline Sign flipped(Sign s) { return s == Sign::positive ? Sign::negative : Sign::positive; }
inline int sign_value(Sign s) { return static_cast<int>(s); }

template <class W>
struct Edge {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  Sign sign = Sign::positive;
  W weight = W(1);

  bool positive() const { return sign == Sign::positive; }
  bool negative() const { return sign == Sign::negative; }
  NodeId other(NodeId u) const { return u == a ? b : a; }
};

struct Neighbor {
  NodeId node;
  EdgeId edge;
  friend bool operator<(const Neighbor& x, const Neighbor& y) { return x.node < y.node; }
};

/// Index of the unordered pair {u, v} (u < v) in lexicographic pair order.
inline std::int64_t pair_index(std::int64_t n, std::int64_t u, std::int64_t v) {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline std::pair<NodeId, NodeId> pair_from_index(std::int64_t n, std::int64_t id) {
  // Largest u with pair_index(n, u, u + 1) <= id.
  std::int64_t lo = 0;
  std::int64_t hi = n - 2;
  while (lo < hi) {
    std::int64_t mid = (lo + hi + 1) / 2;
    if (pair_index(n, mid, mid + 1) <= id) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::int64_t v = id - pair_index(n, lo, lo + 1) + lo + 1;
  return {static_cast<NodeId>(lo), static_cast<NodeId>(v)};
}

/// Signed, optionally weighted, simple undirected graph. Immutable after
/// construction.
///
/// Edge ids are dense and follow lexicographic (a, b) order of the canonical
/// endpoint pairs, so every algorithm iterates edges deterministically. For a
/// complete graph the id of {u, v} is `pair_index(n, u, v)`.
///
/// Complete graphs above `explicit_bound` nodes use an implicit layout: only
/// positive adjacency is stored and every other pair is a negative edge of
/// weight 1.
template <class W>
class SignedGraph {
 public:
  using weight_type = W;
  static constexpr std::size_t kDefaultExplicitBound = 2000;
  static constexpr std::size_t kMaxImplicitNodes = 46000;

  SignedGraph() = default;

  static SignedGraph from_edges(std::size_t n, std::vector<Edge<W>> edges) {
    if (n > static_cast<std::size_t>(kMaxImplicitNodes)) throw CapacityError("node count too large");
    for (auto& e : edges) {
      if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= n ||
          static_cast<std::size_t>(e.b) >= n) {
        throw InputError("edge endpoint out of range: " + std::to_string(e.a) + " " +
                         std::to_string(e.b));
      }
      if (e.a == e.b) throw InputError("self-loop at node " + std::to_string(e.a));
      if (e.a > e.b) std::swap(e.a, e.b);
      if (!(e.weight >= W(0))) throw InputError("negative or invalid edge weight");
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge<W>& x, const Edge<W>& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].a == edges[i - 1].a && edges[i].b == edges[i - 1].b) {
        throw InputError("duplicate edge " + std::to_string(edges[i].a) + " " +
                         std::to_string(edges[i].b));
      }
    }
    SignedGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.complete_ = g.edges_.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
    g.build_adjacency();
    return g;
  }

  /// Complete graph whose positive pairs are `positives`; all other pairs
  /// are negative with weight 1.
  static SignedGraph complete_from_positive(std::size_t n,
                                            std::vector<std::pair<NodeId, NodeId>> positives,
                                            std::size_t explicit_bound = kDefaultExplicitBound) {
    for (auto& [u, v] : positives) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
        throw InputError("positive pair out of range");
      }
      if (u == v) throw InputError("self-loop in positive pair list");
      if (u > v) std::swap(u, v);
    }
    std::sort(positives.begin(), positives.end());
    if (std::adjacent_find(positives.begin(), positives.end()) != positives.end()) {
      throw InputError("duplicate positive pair");
    }
    if (n <= explicit_bound) {
      std::vector<Edge<W>> edges;
      edges.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
      auto it = positives.begin();
      for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
        for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v) {
          bool pos = it != positives.end() && it->first == u && it->second == v;
          if (pos) ++it;
          edges.push_back({u, v, pos ? Sign::positive : Sign::negative, W(1)});
        }
      }
      return from_edges(n, std::move(edges));
    }
    if (n > kMaxImplicitNodes) throw CapacityError("node count too large for implicit layout");
    SignedGraph g;
    g.n_ = n;
    g.complete_ = true;
    g.implicit_ = true;
    g.positive_adj_.assign(n, {});
    for (auto [u, v] : positives) {
      auto id = static_cast<EdgeId>(pair_index(static_cast<std::int64_t>(n), u, v));
      g.positive_adj_[u].push_back({v, id});
      g.positive_adj_[v].push_back({u, id});
    }
    for (auto& list : g.positive_adj_) std::sort(list.begin(), list.end());
    return g;
  }

  std::size_t num_nodes() const { return n_; }

  std::size_t num_edges() const {
    return implicit_ ? n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2 : edges_.size();
  }

  bool complete() const { return complete_; }
  bool implicit() const { return implicit_; }

  bool unweighted() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge<W>& e) { return e.weight == W(1); });
  }

  Edge<W> edge(EdgeId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= num_edges()) {
      throw InputError("edge id out of range: " + std::to_string(id));
    }
    if (!implicit_) return edges_[id];
    auto [a, b] = pair_from_index(static_cast<std::int64_t>(n_), id);
    const auto& list = positive_adj_[a];
    bool pos = std::binary_search(list.begin(), list.end(), Neighbor{b, 0});
    return {a, b, pos ? Sign::positive : Sign::negative, W(1)};
  }

  Sign sign(EdgeId id) const { return implicit_ ? edge(id).sign : edges_[id].sign; }

  W weight(EdgeId id) const { return implicit_ ? W(1) : edges_[id].weight; }

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const {
    if (u == v || u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_) {
      return std::nullopt;
    }
    if (u > v) std::swap(u, v);
    if (complete_) return static_cast<EdgeId>(pair_index(static_cast<std::int64_t>(n_), u, v));
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), Neighbor{v, 0});
    if (it == list.end() || it->node != v) return std::nullopt;
    return it->edge;
  }

  /// Explicit layout only.
  const std::vector<Edge<W>>& edges() const {
    if (implicit_) throw CapacityError("edge list not materialized for implicit complete graph");
    return edges_;
  }

  /// All neighbors sorted by node id. Explicit layout only.
  std::span<const Neighbor> neighbors(NodeId u) const {
    if (implicit_) throw CapacityError("adjacency not materialized for implicit complete graph");
    return adj_[u];
  }

  /// Positive neighbors sorted by node id.
  std::span<const Neighbor> positive_neighbors(NodeId u) const { return positive_adj_[u]; }

  std::size_t num_positive_edges() const {
    std::size_t twice = 0;
    for (const auto& list : positive_adj_) twice += list.size();
    return twice / 2;
  }

  W total_weight() const {
    if (implicit_) return W(static_cast<long>(num_edges()));
    W sum(0);
    for (const auto& e : edges_) sum += e.weight;
    return sum;
  }

  friend bool operator==(const SignedGraph& x, const SignedGraph& y) {
    if (x.n_ != y.n_ || x.implicit_ != y.implicit_ || x.num_edges() != y.num_edges()) return false;
    if (x.implicit_) {
      for (std::size_t u = 0; u < x.n_; ++u) {
        const auto& p = x.positive_adj_[u];
        const auto& q = y.positive_adj_[u];
        if (p.size() != q.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (p[i].node != q[i].node) return false;
        }
      }
      return true;
    }
    for (std::size_t i = 0; i < x.edges_.size(); ++i) {
      const auto& e = x.edges_[i];
      const auto& f = y.edges_[i];
      if (e.a != f.a || e.b != f.b || e.sign != f.sign || e.weight != f.weight) return false;
    }
    return true;
  }

 private:
  void build_adjacency() {
    adj_.assign(n_, {});
    positive_adj_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      auto id = static_cast<EdgeId>(i);
      adj_[e.a].push_back({e.b, id});
      adj_[e.b].push_back({e.a, id});
      if (e.positive()) {
        positive_adj_[e.a].push_back({e.b, id});
        positive_adj_[e.b].push_back({e.a, id});
      }
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    for (auto& list : positive_adj_) std::sort(list.begin(), list.end());
  }

  std::size_t n_ = 0;
  bool complete_ = false;
  bool implicit_ = false;
  std::vector<Edge<W>> edges_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<std::vector<Neighbor>> positive_adj_;
};

/// Node triple u < v < w with exactly one negative edge. `edges` holds the
/// ids of (uv, uw, vw).
struct BadTriangle {
  std::array<NodeId, 3> nodes{};
  std::array<EdgeId, 3> edges{};
  EdgeId negative = 0;

  bool contains(EdgeId e) const { return edges[0] == e || edges[1] == e || edges[2] == e; }

  friend bool operator==(const BadTriangle& x, const BadTriangle& y) {
    return x.nodes == y.nodes && x.edges == y.edges && x.negative == y.negative;
  }
};

/// All bad triangles in lexicographic node-triple order.
///
/// Every bad triangle has exactly one positive wedge (centered at the node
/// opposite the negative edge), so scanning positive wedges and testing the
/// closing pair finds each one exactly once.
template <class W>
std::vector<BadTriangle> enumerate_bad_triangles(const SignedGraph<W>& g) {
  std::vector<BadTriangle> out;
  const auto n = static_cast<NodeId>(g.num_nodes());
  for (NodeId c = 0; c < n; ++c) {
    auto nbrs = g.positive_neighbors(c);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        NodeId p = nbrs[i].node;
        NodeId q = nbrs[j].node;
        auto closing = g.find_edge(p, q);
        if (!closing || g.sign(*closing) != Sign::negative) continue;
        std::array<NodeId, 3> t{c, p, q};
        std::sort(t.begin(), t.end());
        BadTriangle bt;
        bt.nodes = t;
        bt.edges = {*g.find_edge(t[0], t[1]), *g.find_edge(t[0], t[2]), *g.find_edge(t[1], t[2])};
        bt.negative = *closing;
        out.push_back(bt);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BadTriangle& x, const BadTriangle& y) { return x.nodes < y.nodes; });
  return out;
}

/// Integral edge set with its total weight.
template <class W>
class EdgeCover {
 public:
  EdgeCover() = default;

  /// Validates ids against `g`; duplicates are merged.
  EdgeCover(const SignedGraph<W>& g, std::vector<EdgeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    for (EdgeId id : ids_) {
      if (id < 0 || static_cast<std::size_t>(id) >= g.num_edges()) {
        throw InputError("cover edge id out of range: " + std::to_string(id));
      }
      cost_ += g.weight(id);
    }
  }

  const std::vector<EdgeId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const W& cost() const { return cost_; }
  bool contains(EdgeId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

  /// Dense membership mask over g's edge ids.
  std::vector<char> mask(std::size_t num_edges) const {
    std::vector<char> m(num_edges, 0);
    for (EdgeId id : ids_) m[id] = 1;
    return m;
  }

 private:
  std::vector<EdgeId> ids_;
  W cost_ = W(0);
};

/// Partition of the node set; labels are renumbered to 0..k-1 in order of
/// first appearance.
class Clustering {
 public:
  Clustering() = default;

  explicit Clustering(const std::vector<int>& labels) : labels_(labels.size()) {
    std::vector<std::pair<int, int>> seen;  // (raw label, new label)
    for (std::size_t v = 0; v < labels.size(); ++v) {
      auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == labels[v]; });
      if (it == seen.end()) {
        seen.emplace_back(labels[v], static_cast<int>(seen.size()));
        labels_[v] = static_cast<int>(seen.size()) - 1;
      } else {
        labels_[v] = it->second;
      }
    }
    count_ = seen.size();
  }

  static Clustering singletons(std::size_t n) {
    std::vector<int> l(n);
    for (std::size_t v = 0; v < n; ++v) l[v] = static_cast<int>(v);
    return Clustering(l);
  }

  static Clustering single_cluster(std::size_t n) { return Clustering(std::vector<int>(n, 0)); }

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_clusters() const { return count_; }
  int cluster_of(NodeId v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  std::vector<std::vector<NodeId>> members() const {
    std::vector<std::vector<NodeId>> out(count_);
    for (std::size_t v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(static_cast<NodeId>(v));
    return out;
  }

  friend bool operator==(const Clustering& x, const Clustering& y) { return x.labels_ == y.labels_; }

 private:
  std::vector<int> labels_;
  std::size_t count_ = 0;
};

template <class W>
bool is_feasible_cover(std::span<const BadTriangle> triangles, const EdgeCover<W>& cover,
                       std::size_t num_edges) {
  auto in = cover.mask(num_edges);
  return std::all_of(triangles.begin(), triangles.end(), [&](const BadTriangle& t) {
    return in[t.edges[0]] || in[t.edges[1]] || in[t.edges[2]];
  });
}

template <class W>
bool is_feasible_cover(const SignedGraph<W>& g, const EdgeCover<W>& cover) {
  for (EdgeId id : cover.ids()) {
    if (id < 0 || static_cast<std::size_t>(id) >= g.num_edges()) {
      throw InputError("cover edge id out of range: " + std::to_string(id));
    }
  }
  auto tris = enumerate_bad_triangles(g);
  return is_feasible_cover<W>(tris, cover, g.num_edges());
}

/// Correlation-clustering disagreements: positive edges across clusters plus
/// negative edges inside clusters. Missing pairs never disagree.
template <class W>
W cc_cost(const SignedGraph<W>& g, const Clustering& p) {
  if (p.num_nodes() != g.num_nodes()) throw InputError("clustering does not cover the node set");
  W cost(0);
  if (g.implicit()) {
    // Intra-cluster pairs are negative unless positive; count positives once.
    std::vector<long> sizes(p.num_clusters(), 0);
    for (std::size_t v = 0; v < g.num_nodes(); ++v) ++sizes[p.cluster_of(static_cast<NodeId>(v))];
    long intra_pairs = 0;
    for (long s : sizes) intra_pairs += s * (s - 1) / 2;
    long intra_pos = 0;
    long cross_pos = 0;
    for (NodeId u = 0; u < static_cast<NodeId>(g.num_nodes()); ++u) {
      for (const auto& nb : g.positive_neighbors(u)) {
        if (nb.node < u) continue;
        if (p.cluster_of(u) == p.cluster_of(nb.node)) {
          ++intra_pos;
        } else {
          ++cross_pos;
        }
      }
    }
    return W(cross_pos + (intra_pairs - intra_pos));
  }
  for (const auto& e : g.edges()) {
    bool same = p.cluster_of(e.a) == p.cluster_of(e.b);
    if (e.positive() != same) cost += e.weight;
  }
  return cost;
}

/// Copy of `g` with the sign of every edge in `ids` inverted.
template <class W>
SignedGraph<W> flip_edges(const SignedGraph<W>& g, std::span<const EdgeId> ids) {
  std::vector<char> flip(g.num_edges(), 0);
  for (EdgeId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= g.num_edges()) {
      throw InputError("flip edge id out of range: " + std::to_string(id));
    }
    flip[id] = 1;
  }
  if (g.implicit()) {
    std::vector<std::pair<NodeId, NodeId>> pos;
    for (NodeId u = 0; u < static_cast<NodeId>(g.num_nodes()); ++u) {
      for (const auto& nb : g.positive_neighbors(u)) {
        if (nb.node > u && !flip[nb.edge]) pos.emplace_back(u, nb.node);
      }
    }
    for (EdgeId id : ids) {
      if (!flip[id]) continue;
      flip[id] = 0;  // ids may repeat
      auto e = g.edge(id);
      if (e.negative()) pos.emplace_back(e.a, e.b);
    }
    return SignedGraph<W>::complete_from_positive(g.num_nodes(), std::move(pos), 0);
  }
  auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (flip[i]) edges[i].sign = flipped(edges[i].sign);
  }
  return SignedGraph<W>::from_edges(g.num_nodes(), std::move(edges));
}

template <class W>
SignedGraph<W> flip_edges(const SignedGraph<W>& g, const EdgeCover<W>& cover) {
  return flip_edges(g, std::span<const EdgeId>(cover.ids()));
}

/// Converts a graph between number kinds (weights via exact rationals).
template <class To, class From>
SignedGraph<To> convert_graph(const SignedGraph<From>& g) {
  if (g.implicit()) {
    std::vector<std::pair<NodeId, NodeId>> pos;
    for (NodeId u = 0; u < static_cast<NodeId>(g.num_nodes()); ++u) {
      for (const auto& nb : g.positive_neighbors(u)) {
        if (nb.node > u) pos.emplace_back(u, nb.node);
      }
    }
    return SignedGraph<To>::complete_from_positive(g.num_nodes(), std::move(pos), 0);
  }
  std::vector<Edge<To>> edges;
  edges.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    edges.push_back({e.a, e.b, e.sign, NumTraits<To>::from_rational(NumTraits<From>::to_rational(e.weight))});
  }
  return SignedGraph<To>::from_edges(g.num_nodes(), std::move(edges));
}

}  // namespace btt
