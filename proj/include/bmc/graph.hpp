#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmc/error.hpp"
#include "bmc/rational.hpp"

namespace bmc {

using VertexId = std::size_t;
/// A vertex id in vertex mode, an edge index in edge mode.
using ItemId = std::size_t;

/// Whether weights (and therefore colored items) live on vertices or edges.
enum class Mode { vertex, edge };

inline const char* to_string(Mode m) { return m == Mode::vertex ? "vertex" : "edge"; }

/// Undirected edge, always stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;

  [[nodiscard]] bool touches(VertexId x) const { return u == x || v == x; }
  [[nodiscard]] bool adjacent_to(const Edge& o) const {
    return touches(o.u) || touches(o.v);
  }
};

/// Simple undirected graph whose items (vertices or edges, per mode) carry
/// strictly positive rational weights.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(Mode mode, std::size_t vertex_count, std::vector<Edge> edges,
                std::vector<Rational> weights)
      : mode_(mode), n_(vertex_count), edges_(std::move(edges)), weights_(std::move(weights)) {
    for (auto& e : edges_) {
      if (e.u == e.v) fail(ErrorCode::invalid_parameter, "self-loop at vertex " + std::to_string(e.u));
      if (e.u >= n_ || e.v >= n_)
        fail(ErrorCode::invalid_parameter, "edge endpoint out of range");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorCode::invalid_parameter, "duplicate edge");
    const std::size_t items = mode_ == Mode::vertex ? n_ : edges_.size();
    if (weights_.size() != items)
      fail(ErrorCode::invalid_parameter, "weight count " + std::to_string(weights_.size()) +
                                             " does not match item count " + std::to_string(items));
    for (const auto& w : weights_)
      if (w.sign() <= 0) fail(ErrorCode::invalid_parameter, "weights must be strictly positive");

    neighbors_.assign(n_, {});
    incident_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      neighbors_[edges_[i].u].push_back(edges_[i].v);
      neighbors_[edges_[i].v].push_back(edges_[i].u);
      incident_[edges_[i].u].push_back(i);
      incident_[edges_[i].v].push_back(i);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
  }

  static WeightedGraph vertex_weighted(std::size_t n, std::vector<Edge> edges,
                                       std::vector<Rational> weights) {
    return {Mode::vertex, n, std::move(edges), std::move(weights)};
  }
  static WeightedGraph edge_weighted(std::size_t n, std::vector<Edge> edges,
                                     std::vector<Rational> weights) {
    return {Mode::edge, n, std::move(edges), std::move(weights)};
  }

  [[nodiscard]] Mode mode() const { return mode_; }
  [[nodiscard]] std::size_t vertex_count() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::size_t item_count() const { return weights_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] const Edge& edge(std::size_t i) const { return edges_[i]; }
  [[nodiscard]] std::span<const Rational> weights() const { return weights_; }
  [[nodiscard]] const Rational& weight(ItemId item) const { return weights_[item]; }
  [[nodiscard]] std::span<const VertexId> neighbors(VertexId v) const { return neighbors_[v]; }
  [[nodiscard]] std::span<const std::size_t> incident_edges(VertexId v) const { return incident_[v]; }
  [[nodiscard]] std::size_t degree(VertexId v) const { return neighbors_[v].size(); }

  [[nodiscard]] bool adjacent(VertexId a, VertexId b) const {
    const auto& nb = neighbors_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  /// Two distinct items conflict when they may not share a color class.
  [[nodiscard]] bool items_conflict(ItemId a, ItemId b) const {
    if (a == b) return false;
    return mode_ == Mode::vertex ? adjacent(a, b) : edges_[a].adjacent_to(edges_[b]);
  }

  /// Conflict lists over items (the line graph in edge mode), sorted.
  [[nodiscard]] std::vector<std::vector<ItemId>> item_adjacency() const {
    if (mode_ == Mode::vertex) return neighbors_;
    std::vector<std::vector<ItemId>> adj(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      for (VertexId end : {edges_[i].u, edges_[i].v})
        for (std::size_t j : incident_[end])
          if (j != i) adj[i].push_back(j);
    }
    for (auto& a : adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.mode_ == b.mode_ && a.n_ == b.n_ && a.edges_ == b.edges_ && a.weights_ == b.weights_;
  }

 private:
  Mode mode_ = Mode::vertex;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Rational> weights_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Color classes with their derived weights.
struct Coloring {
  std::vector<std::vector<ItemId>> classes;
  std::vector<Rational> class_weights;
  Rational total_weight;

  [[nodiscard]] std::size_t class_count() const { return classes.size(); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Builds a Coloring from raw classes, sorting ids inside each class and
/// deriving class weights. Empty classes are dropped; no validity check.
inline Coloring make_coloring(const WeightedGraph& g, std::vector<std::vector<ItemId>> classes) {
  Coloring c;
  for (auto& cls : classes) {
    if (cls.empty()) continue;
    std::sort(cls.begin(), cls.end());
    Rational w = g.weight(cls.front());
    for (ItemId id : cls) w = std::max(w, g.weight(id));
    c.class_weights.push_back(w);
    c.total_weight += w;
    c.classes.push_back(std::move(cls));
  }
  return c;
}

/// Item ids sorted by weight descending, smaller id first on ties.
inline std::vector<ItemId> weight_order(std::span<const ItemId> items, std::span<const Rational> weights) {
  std::vector<ItemId> order(items.begin(), items.end());
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  return order;
}

inline std::vector<ItemId> weight_order(const WeightedGraph& g) {
  std::vector<ItemId> all(g.item_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return weight_order(all, g.weights());
}

struct OrderedPartition {
  std::vector<std::vector<ItemId>> blocks;
};

/// Sorts `items` by weight (descending, id ascending) and cuts the sequence
/// into consecutive blocks of `b`; only the last block may be shorter.
/// `weights` is indexed by item id.
inline OrderedPartition ordered_b_partition(std::span<const ItemId> items,
                                            std::span<const Rational> weights, std::size_t b) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  OrderedPartition out;
  auto order = weight_order(items, weights);
  for (std::size_t i = 0; i < order.size(); i += b) {
    auto last = std::min(order.size(), i + b);
    out.blocks.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                            order.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return out;
}

struct Bipartition {
  std::vector<VertexId> left;
  std::vector<VertexId> right;
};

struct StructureInfo {
  bool is_bipartite = false;
  std::optional<Bipartition> bipartition;
  bool is_tree = false;
  bool is_forest = false;
  std::size_t max_degree = 0;
  std::size_t components = 0;
};

/// Bipartiteness by BFS 2-coloring (component roots in id order go left),
/// forest/tree detection and maximum degree.
inline StructureInfo structure_probe(const WeightedGraph& g) {
  StructureInfo info;
  const std::size_t n = g.vertex_count();
  std::vector<int> side(n, -1);
  bool bipartite = true;
  for (VertexId root = 0; root < n; ++root) {
    if (side[root] != -1) continue;
    ++info.components;
    side[root] = 0;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      for (VertexId y : g.neighbors(x)) {
        if (side[y] == -1) {
          side[y] = 1 - side[x];
          q.push(y);
        } else if (side[y] == side[x]) {
          bipartite = false;
        }
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) info.max_degree = std::max(info.max_degree, g.degree(v));
  info.is_bipartite = bipartite;
  if (bipartite) {
    Bipartition bp;
    for (VertexId v = 0; v < n; ++v) (side[v] == 0 ? bp.left : bp.right).push_back(v);
    info.bipartition = std::move(bp);
  }
  info.is_forest = g.edge_count() + info.components == n;
  info.is_tree = info.is_forest && info.components == 1;
  return info;
}

struct ValidationReport {
  bool valid = false;
  std::string failure;  ///< first violation, empty when valid
  std::vector<Rational> class_weights;
  Rational total_weight;

  explicit operator bool() const { return valid; }
};

/// Checks that `c` is a disjoint cover of the items by conflict-free classes
/// of size at most `b`, and recomputes class weights and the total.
inline ValidationReport validate_coloring(const WeightedGraph& g, const Coloring& c, std::size_t b) {
  ValidationReport r;
  auto reject = [&](std::string msg) {
    r.failure = std::move(msg);
    return r;
  };
  std::vector<int> owner(g.item_count(), -1);
  for (std::size_t ci = 0; ci < c.classes.size(); ++ci) {
    const auto& cls = c.classes[ci];
    const std::string where = " in class " + std::to_string(ci);
    if (cls.empty()) return reject("empty class" + where);
    if (cls.size() > b)
      return reject("cardinality bound exceeded" + where + " (" + std::to_string(cls.size()) +
                    " > " + std::to_string(b) + ")");
    Rational w = 0;
    for (ItemId id : cls) {
      if (id >= g.item_count()) return reject("unknown item " + std::to_string(id) + where);
      if (owner[id] != -1) return reject("duplicate item " + std::to_string(id) + where);
      owner[id] = static_cast<int>(ci);
      w = std::max(w, g.weight(id));
    }
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        if (g.items_conflict(cls[i], cls[j]))
          return reject("adjacent items " + std::to_string(cls[i]) + " and " +
                        std::to_string(cls[j]) + where);
    r.class_weights.push_back(w);
    r.total_weight += w;
  }
  for (ItemId id = 0; id < g.item_count(); ++id)
    if (owner[id] == -1) return reject("item " + std::to_string(id) + " not covered");
  if (c.class_weights.size() == c.classes.size() && c.class_weights != r.class_weights)
    return reject("stale class weights");
  r.valid = true;
  return r;
}

/// Subgraph induced by `vertices` (kept in the given order as ids 0..k-1).
/// Only meaningful in vertex mode. Returns the graph; `vertices[i]` is the
/// original id of new vertex i.
inline WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> vertices) {
  std::vector<std::size_t> local(g.vertex_count(), SIZE_MAX);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  for (VertexId v : vertices) weights.push_back(g.weight(v));
  for (const auto& e : g.edges())
    if (local[e.u] != SIZE_MAX && local[e.v] != SIZE_MAX) edges.push_back({local[e.u], local[e.v]});
  return WeightedGraph::vertex_weighted(vertices.size(), std::move(edges), std::move(weights));
}

/// Maps class ids of a coloring on an induced subgraph back to original ids.
inline std::vector<std::vector<ItemId>> lift_classes(const Coloring& c, std::span<const VertexId> original) {
  std::vector<std::vector<ItemId>> out;
  for (const auto& cls : c.classes) {
    auto& dst = out.emplace_back();
    for (ItemId id : cls) dst.push_back(original[id]);
  }
  return out;
}

}  // namespace bmc
