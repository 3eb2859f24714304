#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bmc/error.hpp"
#include "bmc/graph.hpp"
#include "bmc/rational.hpp"

namespace bmc::ec {

namespace detail {

inline void require_edge_mode(const WeightedGraph& g) {
  if (g.mode() != Mode::edge) fail(ErrorCode::invalid_parameter, "edge-weighted graph required");
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace detail

/// First-fit over edges in weight order: an edge joins the earliest-created
/// class that has room and no edge sharing an endpoint with it.
inline Coloring greedy_ec(const WeightedGraph& g, std::size_t b) {
  detail::require_edge_mode(g);
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  std::vector<std::vector<ItemId>> classes;
  std::vector<std::vector<bool>> covered;  // per class, per vertex
  for (ItemId e : weight_order(g)) {
    const Edge& ed = g.edge(e);
    std::size_t target = classes.size();
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (classes[c].size() < b && !covered[c][ed.u] && !covered[c][ed.v]) {
        target = c;
        break;
      }
    if (target == classes.size()) {
      classes.emplace_back();
      covered.emplace_back(g.vertex_count(), false);
    }
    classes[target].push_back(e);
    covered[target][ed.u] = covered[target][ed.v] = true;
  }
  return make_coloring(g, std::move(classes));
}

/// True when every class either holds b edges or is a maximal matching among
/// the edges not placed in earlier classes.
inline bool is_nice(const WeightedGraph& g, const Coloring& c, std::size_t b) {
  std::vector<std::size_t> class_of(g.edge_count(), SIZE_MAX);
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    for (ItemId e : c.classes[i]) class_of[e] = i;
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    if (c.classes[i].size() == b) continue;
    std::vector<bool> covered(g.vertex_count(), false);
    for (ItemId e : c.classes[i]) covered[g.edge(e).u] = covered[g.edge(e).v] = true;
    for (ItemId e = 0; e < g.edge_count(); ++e) {
      if (class_of[e] <= i) continue;
      if (!covered[g.edge(e).u] && !covered[g.edge(e).v]) return false;
    }
  }
  return true;
}

enum class Regime { general, bipartite };

struct ColorCountBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Regime regime = Regime::general;
};

/// Bounds on the number of classes of any nice solution.
///
/// lower = max(Delta, ceil(m/b)). The upper bound is
///   max over 0 <= x, y <= Delta-1 of ceil(m/b) - ceil((x+1)(y+1)/(2b)) + x + y + 1
/// (divide by b instead of 2b for bipartite graphs), where x and y count the
/// non-full classes ahead of the last one that are blocked at either endpoint
/// of one of its edges. At x = y = Delta-1 this is the familiar
/// ceil(m/b) - ceil(Delta^2/2b) + 2Delta - 1, which is the maximum only while
/// Delta stays small relative to b; for larger Delta another corner wins.
inline ColorCountBounds nice_color_count_bounds(std::size_t m, std::size_t delta, std::size_t b, bool bipartite) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  ColorCountBounds out;
  out.regime = bipartite ? Regime::bipartite : Regime::general;
  const std::size_t full = detail::ceil_div(m, b);
  out.lower = std::max(delta, full);
  if (delta == 0) return out;  // no edges, no classes
  const std::size_t divisor = bipartite ? b : 2 * b;
  std::int64_t best = 0;
  for (std::size_t x = 0; x < delta; ++x)
    for (std::size_t y = 0; y < delta; ++y) {
      auto value = static_cast<std::int64_t>(full) -
                   static_cast<std::int64_t>(detail::ceil_div((x + 1) * (y + 1), divisor)) +
                   static_cast<std::int64_t>(x + y + 1);
      best = std::max(best, value);
    }
  out.upper = static_cast<std::size_t>(best);
  return out;
}

/// Greedy's proven worst-case ratio test, W <= (3 - 2/sqrt(2b)) OPT on
/// general graphs and W <= (3 - 2/sqrt(b)) OPT on bipartite graphs, decided
/// exactly.
inline bool within_greedy_bound(const Rational& w, const Rational& opt, std::size_t b, bool bipartite) {
  const auto radicand = static_cast<std::int64_t>(bipartite ? b : 2 * b);
  return within_sqrt_bound(w, opt, 3, 2, radicand);
}

/// Phase 1 of Convert: a proper edge coloring of a forest into Delta
/// matchings. Each tree is rooted at its smallest vertex and visited in
/// pre-order (children by ascending id); at each vertex the child edges, in
/// weight order, take the first matching with no edge at that vertex.
/// Trees share the matching indices.
inline std::vector<std::vector<ItemId>> convert_phase1_matchings(const WeightedGraph& g) {
  detail::require_edge_mode(g);
  if (!structure_probe(g).is_forest) fail(ErrorCode::invalid_structure, "forest required");
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<ItemId>> matchings;
  std::vector<std::size_t> matching_of(g.edge_count(), SIZE_MAX);
  std::vector<bool> visited(n, false);

  for (VertexId root = 0; root < n; ++root) {
    if (visited[root]) continue;
    // (vertex, edge to parent) pairs; explicit stack keeps pre-order.
    std::vector<std::pair<VertexId, std::size_t>> stack{{root, SIZE_MAX}};
    visited[root] = true;
    while (!stack.empty()) {
      auto [v, parent_edge] = stack.back();
      stack.pop_back();
      std::vector<ItemId> child_edges;
      for (std::size_t e : g.incident_edges(v))
        if (e != parent_edge) child_edges.push_back(e);
      child_edges = weight_order(child_edges, g.weights());
      std::vector<bool> busy(matchings.size() + child_edges.size() + 1, false);
      if (parent_edge != SIZE_MAX) busy[matching_of[parent_edge]] = true;
      std::size_t next = 0;
      for (ItemId e : child_edges) {
        while (busy[next]) ++next;
        if (next == matchings.size()) matchings.emplace_back();
        matchings[next].push_back(e);
        matching_of[e] = next;
        busy[next] = true;
      }
      std::vector<std::pair<VertexId, std::size_t>> children;
      for (std::size_t e : child_edges) {
        VertexId child = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
        visited[child] = true;
        children.emplace_back(child, e);
      }
      std::sort(children.begin(), children.end(), std::greater<>());
      for (auto& c : children) stack.push_back(c);
    }
  }
  for (auto& m : matchings) std::sort(m.begin(), m.end());
  return matchings;
}

/// Convert: the Delta matchings of phase 1, each cut into its ordered
/// b-partition. Classes are listed matching by matching.
inline Coloring convert_ec_tree(const WeightedGraph& g, std::size_t b) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  std::vector<std::vector<ItemId>> classes;
  for (const auto& m : convert_phase1_matchings(g))
    for (auto& blk : ordered_b_partition(m, g.weights(), b).blocks) classes.push_back(std::move(blk));
  return make_coloring(g, std::move(classes));
}

inline constexpr std::size_t kDefaultSetCoverGuard = 200000;

/// Greedy weighted set cover over all conflict-free item sets of size 1..b,
/// each costing its heaviest item. Each round takes the set with the lowest
/// cost per newly covered item (then lower cost, then lexicographically
/// smaller ids); every item stays in the first chosen set that covered it.
/// Works in both modes.
inline Coloring setcover_approx(const WeightedGraph& g, std::size_t b,
                                std::size_t size_guard = kDefaultSetCoverGuard) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  const std::size_t n = g.item_count();

  struct Candidate {
    std::vector<ItemId> items;
    Rational cost;
  };
  std::vector<Candidate> sets;
  std::vector<ItemId> current;
  auto grow = [&](auto&& self, ItemId from) -> void {
    for (ItemId i = from; i < n; ++i) {
      bool ok = true;
      for (ItemId j : current)
        if (g.items_conflict(i, j)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      current.push_back(i);
      if (sets.size() >= size_guard)
        fail(ErrorCode::guard_exceeded, "more than " + std::to_string(size_guard) + " candidate sets");
      Rational cost = g.weight(current.front());
      for (ItemId j : current) cost = std::max(cost, g.weight(j));
      sets.push_back({current, cost});
      if (current.size() < b) self(self, i + 1);
      current.pop_back();
    }
  };
  grow(grow, 0);

  std::vector<bool> covered(n, false);
  std::size_t remaining = n;
  std::vector<std::vector<ItemId>> classes;
  while (remaining > 0) {
    std::size_t pick = SIZE_MAX;
    std::size_t pick_new = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::size_t fresh = 0;
      for (ItemId i : sets[s].items) fresh += !covered[i];
      if (fresh == 0) continue;
      if (pick == SIZE_MAX) {
        pick = s;
        pick_new = fresh;
        continue;
      }
      // cost_s / fresh vs cost_pick / pick_new
      Rational lhs = sets[s].cost * Rational(static_cast<std::int64_t>(pick_new));
      Rational rhs = sets[pick].cost * Rational(static_cast<std::int64_t>(fresh));
      if (lhs < rhs || (lhs == rhs && sets[s].cost < sets[pick].cost)) {
        pick = s;
        pick_new = fresh;
      }
    }
    auto& cls = classes.emplace_back();
    for (ItemId i : sets[pick].items)
      if (!covered[i]) {
        covered[i] = true;
        cls.push_back(i);
        --remaining;
      }
  }
  return make_coloring(g, std::move(classes));
}

}  // namespace bmc::ec
