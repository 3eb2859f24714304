#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "bmc/error.hpp"
#include "bmc/exact.hpp"
#include "bmc/graph.hpp"

namespace bmc::vc {

namespace detail {

inline void require_vertex_mode(const WeightedGraph& g) {
  if (g.mode() != Mode::vertex) fail(ErrorCode::invalid_parameter, "vertex-weighted graph required");
}

inline void require_bipartition(const WeightedGraph& g, const Bipartition& bp) {
  std::vector<int> side(g.vertex_count(), -1);
  for (VertexId v : bp.left) {
    if (v >= side.size() || side[v] != -1) fail(ErrorCode::invalid_structure, "bad bipartition");
    side[v] = 0;
  }
  for (VertexId v : bp.right) {
    if (v >= side.size() || side[v] != -1) fail(ErrorCode::invalid_structure, "bad bipartition");
    side[v] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) != 0)
    fail(ErrorCode::invalid_structure, "bipartition does not cover all vertices");
  for (const auto& e : g.edges())
    if (side[e.u] == side[e.v]) fail(ErrorCode::invalid_structure, "graph is not bipartite");
}

inline Bipartition probe_bipartition(const WeightedGraph& g) {
  auto info = structure_probe(g);
  if (!info.is_bipartite) fail(ErrorCode::invalid_structure, "graph is not bipartite");
  return *info.bipartition;
}

// Split restricted to the vertices flagged in `keep`.
inline std::vector<std::vector<ItemId>> split_classes(const WeightedGraph& g, const Bipartition& bp,
                                                      std::size_t b, const std::vector<bool>& keep) {
  std::vector<ItemId> left, right;
  for (VertexId v : bp.left)
    if (keep[v]) left.push_back(v);
  for (VertexId v : bp.right)
    if (keep[v]) right.push_back(v);
  auto pu = ordered_b_partition(left, g.weights(), b);
  auto pv = ordered_b_partition(right, g.weights(), b);
  auto classes = std::move(pu.blocks);
  for (auto& blk : pv.blocks) classes.push_back(std::move(blk));
  return classes;
}

}  // namespace detail

/// Colors each side of the bipartition by its ordered b-partition.
inline Coloring split(const WeightedGraph& g, const Bipartition& bp, std::size_t b) {
  detail::require_vertex_mode(g);
  detail::require_bipartition(g, bp);
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  return make_coloring(g, detail::split_classes(g, bp, b, std::vector<bool>(g.vertex_count(), true)));
}

inline Coloring split(const WeightedGraph& g, std::size_t b) {
  return split(g, detail::probe_bipartition(g), b);
}

/// Bounded vertex coloring of a bipartite graph with equal weights, within
/// 4/3 of the optimal number of colors.
inline Coloring vc_b_bipartite(const WeightedGraph& g, const Bipartition& bp, std::size_t b) {
  detail::require_vertex_mode(g);
  detail::require_bipartition(g, bp);
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  for (const auto& w : g.weights())
    if (w != g.weights().front()) fail(ErrorCode::invalid_parameter, "all weights must be equal");

  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  if (n <= b) {
    if (g.edge_count() == 0) {
      std::vector<ItemId> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      return make_coloring(g, {all});
    }
    return make_coloring(g, {bp.left, bp.right});
  }
  if (n <= 2 * b) {
    std::vector<std::vector<std::size_t>> lists(n, {0, 1});
    if (auto a = exact::two_color_list_bounded(g, lists, b, b))
      return exact::coloring_from_assignment(g, *a, 2);
  }
  return split(g, bp, b);
}

inline Coloring vc_b_bipartite(const WeightedGraph& g, std::size_t b) {
  return vc_b_bipartite(g, detail::probe_bipartition(g), b);
}

struct SchemeParams {
  std::size_t p = 3;
  /// Largest b for which the exhaustive prefix solver runs when p >= 4.
  std::size_t fixed_b_guard = 4;
};

namespace detail {

// Optimal coloring of the induced prefix with at most p-1 classes, or nothing.
inline std::optional<Coloring> prefix_optimum(const WeightedGraph& prefix, std::size_t b, std::size_t p) {
  const std::size_t j = prefix.vertex_count();
  if (j == 0) return Coloring{};
  if (p == 1) return std::nullopt;
  if (p == 2) {
    if (j > b || prefix.edge_count() != 0) return std::nullopt;
    std::vector<ItemId> all(j);
    for (std::size_t i = 0; i < j; ++i) all[i] = i;
    return make_coloring(prefix, {all});
  }
  if (p == 3) {
    // One class when possible; otherwise the heaviest vertex's class plus a
    // second class whose weight is the smallest threshold t for which the
    // vertices heavier than t can all stay in the first class.
    std::optional<Coloring> best;
    if (j <= b && prefix.edge_count() == 0) {
      std::vector<ItemId> all(j);
      for (std::size_t i = 0; i < j; ++i) all[i] = i;
      best = make_coloring(prefix, {all});
    }
    std::vector<Rational> thresholds(prefix.weights().begin(), prefix.weights().end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    for (const auto& t : thresholds) {
      std::vector<std::vector<std::size_t>> lists(j);
      for (ItemId u = 0; u < j; ++u)
        lists[u] = prefix.weight(u) > t ? std::vector<std::size_t>{0} : std::vector<std::size_t>{0, 1};
      if (auto a = exact::two_color_list_bounded(prefix, lists, b, b)) {
        Coloring c = exact::coloring_from_assignment(prefix, *a, 2);
        if (!best || c.total_weight < best->total_weight) best = std::move(c);
        break;
      }
    }
    return best;
  }
  auto r = exact::exact_bounded_coloring_upto(prefix, b, p - 1, j);
  if (!r) return std::nullopt;
  return r->witness;
}

}  // namespace detail

/// For every prefix of the weight order small enough to fit p-1 full
/// classes, combines an optimal <=(p-1)-coloring of the prefix with Split on
/// the rest and keeps the lightest result (smallest prefix on ties).
inline Coloring scheme(const WeightedGraph& g, const Bipartition& bp, std::size_t b, const SchemeParams& params) {
  detail::require_vertex_mode(g);
  detail::require_bipartition(g, bp);
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  if (params.p == 0 || params.fixed_b_guard == 0)
    fail(ErrorCode::invalid_parameter, "scheme needs p >= 1 and a positive guard");
  if (params.p >= 4 && b > params.fixed_b_guard)
    fail(ErrorCode::guard_exceeded, "b=" + std::to_string(b) + " exceeds the fixed-b guard " +
                                        std::to_string(params.fixed_b_guard) + " for p >= 4");

  const std::size_t n = g.vertex_count();
  const auto order = weight_order(g);
  const std::size_t last = std::min(b * (params.p - 1), n);

  std::optional<Coloring> best;
  for (std::size_t j = 0; j <= last; ++j) {
    std::vector<VertexId> head(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j));
    auto prefix = induced_subgraph(g, head);
    auto head_coloring = detail::prefix_optimum(prefix, b, params.p);
    if (!head_coloring) continue;
    // Vertices past the prefix stay in their Split classes.
    std::vector<bool> keep(n, true);
    for (VertexId v : head) keep[v] = false;
    auto classes = lift_classes(*head_coloring, head);
    for (auto& cls : detail::split_classes(g, bp, b, keep)) classes.push_back(std::move(cls));
    Coloring candidate = make_coloring(g, std::move(classes));
    if (!best || candidate.total_weight < best->total_weight) best = std::move(candidate);
  }
  if (!best) fail(ErrorCode::infeasible, "no prefix admitted a solution");  // j = 0 always does
  return *best;
}

inline Coloring scheme(const WeightedGraph& g, std::size_t b, const SchemeParams& params) {
  return scheme(g, detail::probe_bipartition(g), b, params);
}

/// Exact minimum-weight coloring of a forest with at most k classes, by
/// enumerating class-weight combinations and deciding the resulting bounded
/// list-coloring instances. Works in both modes.
inline std::optional<Coloring> tree_exact_fixed_k(const WeightedGraph& g, std::size_t b, std::size_t k,
                                                  const exact::ListDrivenOptions& opts = {}) {
  if (!structure_probe(g).is_forest) fail(ErrorCode::invalid_structure, "forest required");
  return exact::min_weight_via_lists(g, b, k, opts);
}

}  // namespace bmc::vc
