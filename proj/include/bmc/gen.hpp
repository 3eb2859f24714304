#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bmc/ec.hpp"
#include "bmc/error.hpp"
#include "bmc/exact.hpp"
#include "bmc/graph.hpp"

namespace bmc::gen {

/// mt19937_64 with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }
  /// True with probability p, resolved to one part in a million.
  bool chance(double p) { return uniform(0, 999999) < static_cast<std::int64_t>(p * 1e6); }

 private:
  std::mt19937_64 engine_;
};

enum class GraphKind { bipartite, tree, general };

struct GenParams {
  GraphKind kind = GraphKind::general;
  Mode mode = Mode::vertex;
  std::size_t n = 6;        ///< vertices; left side size for bipartite
  std::size_t n_right = 0;  ///< right side size (bipartite only)
  double density = 0.5;     ///< edge probability (ignored for trees)
  std::int64_t weight_min = 1;
  std::int64_t weight_max = 10;
  std::int64_t denominator = 1;  ///< weights are drawn as integers over this
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  WeightedGraph graph;
  std::optional<Bipartition> bipartition;  ///< bipartite kind only
};

namespace detail {

// Prüfer decoding; uniform over labeled trees on n vertices.
inline std::vector<Edge> random_tree_edges(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  if (n < 2) return edges;
  if (n == 2) return {{0, 1}};
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = rng.index(n);
  std::vector<std::size_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  for (auto c : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back({std::min(leaf, c), std::max(leaf, c)});
    --degree[leaf];
    --degree[c];
  }
  std::size_t a = n, b = n;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) (a == n ? a : b) = v;
  edges.push_back({a, b});
  return edges;
}

}  // namespace detail

/// Seeded random instance; identical parameters give identical graphs.
inline GeneratedInstance gen_random(const GenParams& p) {
  if (p.weight_min < 1 || p.weight_max < p.weight_min)
    fail(ErrorCode::invalid_parameter, "weight range must satisfy 1 <= min <= max");
  if (p.denominator < 1) fail(ErrorCode::invalid_parameter, "denominator must be positive");
  if (!(p.density >= 0.0 && p.density <= 1.0)) fail(ErrorCode::invalid_parameter, "density must lie in [0, 1]");
  if (p.kind == GraphKind::tree && p.n == 0) fail(ErrorCode::invalid_parameter, "a tree needs at least one vertex");
  if (p.kind != GraphKind::bipartite && p.n_right != 0)
    fail(ErrorCode::invalid_parameter, "n_right applies to bipartite graphs only");

  Rng rng(p.seed);
  GeneratedInstance out;
  std::vector<Edge> edges;
  std::size_t n = p.n;
  switch (p.kind) {
    case GraphKind::tree:
      edges = detail::random_tree_edges(n, rng);
      break;
    case GraphKind::general:
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
          if (rng.chance(p.density)) edges.push_back({u, v});
      break;
    case GraphKind::bipartite: {
      n = p.n + p.n_right;
      Bipartition bp;
      for (VertexId u = 0; u < p.n; ++u) bp.left.push_back(u);
      for (VertexId v = p.n; v < n; ++v) bp.right.push_back(v);
      for (VertexId u : bp.left)
        for (VertexId v : bp.right)
          if (rng.chance(p.density)) edges.push_back({u, v});
      out.bipartition = std::move(bp);
      break;
    }
  }
  const std::size_t items = p.mode == Mode::vertex ? n : edges.size();
  std::vector<Rational> weights;
  weights.reserve(items);
  for (std::size_t i = 0; i < items; ++i)
    weights.emplace_back(rng.uniform(p.weight_min * p.denominator, p.weight_max * p.denominator), p.denominator);
  out.graph = WeightedGraph(p.mode, n, std::move(edges), std::move(weights));
  return out;
}

/// Bounded list edge-coloring on a disjoint union of paths. Colors are
/// 0-based; bounds has one entry per color.
struct ChainListInstance {
  WeightedGraph chains;  ///< edge mode, unit weights
  std::size_t colors = 0;
  std::vector<std::vector<std::size_t>> lists;
  std::vector<std::size_t> bounds;
};

inline ChainListInstance make_chain_instance(std::size_t vertex_count, std::vector<Edge> edges, std::size_t colors,
                                             std::vector<std::vector<std::size_t>> lists,
                                             std::vector<std::size_t> bounds) {
  std::vector<Rational> unit(edges.size(), Rational(1));
  return {WeightedGraph::edge_weighted(vertex_count, std::move(edges), std::move(unit)), colors, std::move(lists),
          std::move(bounds)};
}

inline bool is_union_of_paths(const WeightedGraph& g) {
  auto info = structure_probe(g);
  return info.is_forest && info.max_degree <= 2;
}

/// The list-coloring view of a chain instance, for the exact deciders.
inline exact::ListColoringInstance as_list_instance(const ChainListInstance& inst) {
  return {inst.chains, inst.colors, inst.lists, inst.bounds};
}

/// Turns a vertex-listed union of paths into the edge-listed union of paths
/// whose line graph it is: every vertex becomes an edge, consecutive
/// vertices become consecutive edges.
inline ChainListInstance vertex_chains_to_edge_chains(const WeightedGraph& paths, std::size_t colors,
                                                      const std::vector<std::vector<std::size_t>>& vertex_lists,
                                                      std::vector<std::size_t> bounds) {
  if (!is_union_of_paths(paths)) fail(ErrorCode::invalid_structure, "input is not a union of paths");
  if (vertex_lists.size() != paths.vertex_count()) fail(ErrorCode::invalid_parameter, "one list per vertex required");
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> lists;
  std::vector<bool> seen(paths.vertex_count(), false);
  std::size_t next_vertex = 0;
  for (VertexId start = 0; start < paths.vertex_count(); ++start) {
    if (seen[start] || paths.degree(start) > 1) continue;
    // Walk the path from this endpoint.
    VertexId prev = SIZE_MAX, cur = start;
    std::size_t left = next_vertex++;
    while (cur != SIZE_MAX) {
      seen[cur] = true;
      std::size_t right = next_vertex++;
      edges.push_back({left, right});
      lists.push_back(vertex_lists[cur]);
      left = right;
      VertexId nxt = SIZE_MAX;
      for (VertexId nb : paths.neighbors(cur))
        if (nb != prev) nxt = nb;
      prev = cur;
      cur = nxt;
    }
  }
  return make_chain_instance(next_vertex, std::move(edges), colors, std::move(lists), std::move(bounds));
}

namespace detail {

inline void check_chain_instance(const ChainListInstance& inst, std::size_t min_list, std::size_t max_list) {
  if (inst.chains.mode() != Mode::edge) fail(ErrorCode::invalid_parameter, "chain instance must be edge mode");
  if (!is_union_of_paths(inst.chains)) fail(ErrorCode::invalid_structure, "graph is not a union of paths");
  if (inst.lists.size() != inst.chains.edge_count()) fail(ErrorCode::invalid_parameter, "one list per edge required");
  if (inst.bounds.size() != inst.colors) fail(ErrorCode::invalid_parameter, "one bound per color required");
  for (const auto& l : inst.lists) {
    if (l.size() < min_list || l.size() > max_list)
      fail(ErrorCode::invalid_parameter, "list size must lie in [" + std::to_string(min_list) + ", " +
                                             std::to_string(max_list) + "]");
    for (auto c : l)
      if (c >= inst.colors) fail(ErrorCode::invalid_parameter, "list color out of range");
    if (l.size() == 2 && l[0] == l[1]) fail(ErrorCode::invalid_parameter, "list colors must be distinct");
  }
}

}  // namespace detail

inline constexpr std::size_t kChainBound = 5;

/// Brings a chain instance with lists of size 1 or 2 and bounds at most 5 to
/// lists of size exactly 2 and uniform bound 5: pads each color with 5 - b_i
/// single-edge chains listed {C_i}, adds two fresh colors, offers the first
/// fresh color to every singleton list, and adds ten single-edge chains
/// listed with both fresh colors.
inline ChainListInstance normalize_chain_list_instance(const ChainListInstance& inst) {
  detail::check_chain_instance(inst, 1, 2);
  for (auto b : inst.bounds)
    if (b == 0 || b > kChainBound) fail(ErrorCode::invalid_parameter, "bounds must lie in [1, 5]");

  std::vector<Edge> edges(inst.chains.edges().begin(), inst.chains.edges().end());
  auto lists = inst.lists;
  std::size_t n = inst.chains.vertex_count();
  auto add_isolated_edge = [&](std::vector<std::size_t> list) {
    edges.push_back({n, n + 1});
    n += 2;
    lists.push_back(std::move(list));
  };
  for (std::size_t c = 0; c < inst.colors; ++c)
    for (std::size_t i = inst.bounds[c]; i < kChainBound; ++i) add_isolated_edge({c});

  const std::size_t fresh_a = inst.colors, fresh_b = inst.colors + 1;
  for (auto& l : lists)
    if (l.size() == 1) l.push_back(fresh_a);
  for (int i = 0; i < 10; ++i) add_isolated_edge({fresh_a, fresh_b});

  return make_chain_instance(n, std::move(edges), inst.colors + 2, std::move(lists),
                             std::vector<std::size_t>(inst.colors + 2, kChainBound));
}

enum class EdgeRole { chain, star, color_edge, stitch };

struct EdgeGadget {
  std::size_t source_edge = 0;
  std::size_t first = 0, middle = 0, last = 0;  ///< edge ids in the tree
  std::size_t color_a = 0, color_b = 0;         ///< the source edge's list
};

struct ColorGadget {
  std::size_t color = 0;
  std::size_t xy_edge = 0;
};

/// The tree built from a chain instance and the data needed to check it.
/// Weights are scaled by `weight_scale` so the stitching weight epsilon is 1.
struct ReductionOutput {
  WeightedGraph tree;
  std::size_t b_prime = 0;
  std::size_t colors = 0;
  std::size_t chain_bound = kChainBound;
  Rational target_weight;
  std::int64_t weight_scale = 2;
  Rational epsilon = 1;
  std::vector<EdgeRole> roles;
  std::vector<EdgeGadget> edge_gadgets;
  std::vector<ColorGadget> color_gadgets;
  std::vector<std::size_t> frequencies;  ///< f_i
  std::size_t max_frequency = 0;         ///< F
  std::size_t star_count = 0;
  std::size_t tree_count = 0;  ///< trees before stitching (p)
  std::vector<std::size_t> stitch_edges;
};

/// Builds the weighted tree whose bounded max-edge-coloring of weight at most
/// target_weight exists exactly when the chain instance is colorable.
///
/// Every source edge (u, v) with list {i, j} becomes the chain u-u'-v'-v of
/// weight-1 edges. u' and v' each get k-2 stars hung by edges weighted with
/// the colors outside {i, j}; a star hung by weight q has k-1 further edges
/// weighted {1..k} \ {q}. Color i receives F - f_i gadgets: an edge (x, y)
/// of weight i plus k-1 stars hung at y by the weights other than i. All
/// these weights are doubled, and the trees are joined in order by weight-1
/// edges from the largest vertex of one tree to the smallest of the next, so
/// the joining edges form a matching.
///
/// The chain instance must have lists of exactly two colors and one bound
/// shared by all colors (5 for normalized instances).
inline ReductionOutput build_hardness_instance(const ChainListInstance& inst) {
  detail::check_chain_instance(inst, 2, 2);
  const std::size_t beta = inst.bounds.empty() ? kChainBound : inst.bounds.front();
  for (auto b : inst.bounds)
    if (b != beta || b == 0) fail(ErrorCode::invalid_parameter, "bounds must be uniform and positive");

  const std::size_t k = inst.colors;
  const WeightedGraph& src = inst.chains;
  ReductionOutput out;
  out.colors = k;
  out.chain_bound = beta;
  out.frequencies.assign(k, 0);
  for (const auto& l : inst.lists)
    for (auto c : l) ++out.frequencies[c];
  out.max_frequency = k ? *std::max_element(out.frequencies.begin(), out.frequencies.end()) : 0;
  const std::size_t F = out.max_frequency;

  const std::int64_t scale = out.weight_scale;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  auto add_edge = [&](std::size_t a, std::size_t b, std::int64_t w, EdgeRole role) {
    edges.push_back({a, b});
    weights.emplace_back(w);
    out.roles.push_back(role);
    return edges.size() - 1;
  };
  // Star hung at `anchor` by an edge of color weight q (1-based).
  auto add_star = [&](std::size_t anchor, std::size_t q) {
    std::size_t center = n++;
    add_edge(anchor, center, scale * static_cast<std::int64_t>(q), EdgeRole::star);
    for (std::size_t r = 1; r <= k; ++r)
      if (r != q) add_edge(center, n++, scale * static_cast<std::int64_t>(r), EdgeRole::star);
    ++out.star_count;
  };

  std::vector<std::size_t> image(src.vertex_count(), SIZE_MAX);
  for (VertexId v = 0; v < src.vertex_count(); ++v)
    if (src.degree(v) > 0) image[v] = n++;

  for (std::size_t e = 0; e < src.edge_count(); ++e) {
    const auto& list = inst.lists[e];
    const std::size_t u_in = n++, v_in = n++;
    EdgeGadget gad;
    gad.source_edge = e;
    gad.color_a = list[0];
    gad.color_b = list[1];
    gad.first = add_edge(image[src.edge(e).u], u_in, scale, EdgeRole::chain);
    gad.middle = add_edge(u_in, v_in, scale, EdgeRole::chain);
    gad.last = add_edge(v_in, image[src.edge(e).v], scale, EdgeRole::chain);
    for (std::size_t anchor : {u_in, v_in})
      for (std::size_t q = 1; q <= k; ++q)
        if (q - 1 != list[0] && q - 1 != list[1]) add_star(anchor, q);
    out.edge_gadgets.push_back(gad);
  }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t copy = out.frequencies[c]; copy < F; ++copy) {
      std::size_t x = n++, y = n++;
      std::size_t xy = add_edge(x, y, scale * static_cast<std::int64_t>(c + 1), EdgeRole::color_edge);
      out.color_gadgets.push_back({c, xy});
      for (std::size_t q = 1; q <= k; ++q)
        if (q != c + 1) add_star(y, q);
    }

  // Trees of the forest, ordered by smallest vertex.
  {
    WeightedGraph forest = WeightedGraph::edge_weighted(n, edges, weights);
    std::vector<std::size_t> comp(n, SIZE_MAX);
    std::vector<std::pair<std::size_t, std::size_t>> span;  // (min, max) vertex per tree
    for (std::size_t s = 0; s < n; ++s) {
      if (comp[s] != SIZE_MAX) continue;
      std::size_t id = span.size(), lo = s, hi = s;
      std::vector<std::size_t> stack{s};
      comp[s] = id;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        hi = std::max(hi, x);
        for (VertexId y : forest.neighbors(x))
          if (comp[y] == SIZE_MAX) {
            comp[y] = id;
            stack.push_back(y);
          }
      }
      span.emplace_back(lo, hi);
    }
    out.tree_count = span.size();
    for (std::size_t t = 0; t + 1 < span.size(); ++t)
      out.stitch_edges.push_back(add_edge(span[t].second, span[t + 1].first, 1, EdgeRole::stitch));
  }

  out.b_prime = out.star_count + beta + F;
  std::int64_t sum = 0;
  for (std::size_t i = 1; i <= k; ++i) sum += static_cast<std::int64_t>(i);
  const std::size_t stitches = out.stitch_edges.size();
  const auto stitch_classes = static_cast<std::int64_t>((stitches + out.b_prime - 1) / out.b_prime);
  out.target_weight = Rational(scale * sum) + out.epsilon * Rational(stitch_classes);
  out.tree = WeightedGraph::edge_weighted(n, std::move(edges), std::move(weights));
  return out;
}

/// Forward direction of the reduction: from a per-source-edge color choice,
/// builds a coloring of the tree. Chain edges e1, e3 take the chosen color and
/// e2 the other list color; star and gadget edges of weight i take class i;
/// joining edges fill extra classes of b' edges each.
inline Coloring verify_yes_certificate(const ReductionOutput& out, const std::vector<std::size_t>& cert) {
  if (cert.size() != out.edge_gadgets.size())
    fail(ErrorCode::invalid_certificate, "certificate needs one color per source edge");
  std::vector<std::size_t> used(out.colors, 0);
  for (std::size_t e = 0; e < cert.size(); ++e) {
    const auto& gad = out.edge_gadgets[e];
    if (cert[e] != gad.color_a && cert[e] != gad.color_b)
      fail(ErrorCode::invalid_certificate, "edge " + std::to_string(e) + " colored outside its list");
    if (++used[cert[e]] > out.chain_bound)
      fail(ErrorCode::invalid_certificate, "color " + std::to_string(cert[e] + 1) + " used more than " +
                                               std::to_string(out.chain_bound) + " times");
  }

  std::vector<std::vector<ItemId>> classes(out.colors);
  for (std::size_t e = 0; e < cert.size(); ++e) {
    const auto& gad = out.edge_gadgets[e];
    const std::size_t other = cert[e] == gad.color_a ? gad.color_b : gad.color_a;
    classes[cert[e]].push_back(gad.first);
    classes[cert[e]].push_back(gad.last);
    classes[other].push_back(gad.middle);
  }
  const Rational scale(out.weight_scale);
  for (std::size_t id = 0; id < out.roles.size(); ++id) {
    if (out.roles[id] != EdgeRole::star && out.roles[id] != EdgeRole::color_edge) continue;
    const Rational level = out.tree.weight(id) / scale;
    classes[static_cast<std::size_t>(level.num()) - 1].push_back(id);
  }
  for (std::size_t s = 0; s < out.stitch_edges.size(); ++s) {
    if (s % out.b_prime == 0) classes.emplace_back();
    classes.back().push_back(out.stitch_edges[s]);
  }
  return make_coloring(out.tree, std::move(classes));
}

struct AdversarialBudget {
  std::size_t iterations = 50000;    ///< evaluations of greedy against the oracle
  std::size_t restart_every = 1000;  ///< fresh random start after this many non-improving steps
  std::size_t side = 6;              ///< vertices per side of the bipartite host
  std::size_t max_edges = 16;        ///< also the oracle's item guard
  std::int64_t max_weight = 30;
};

struct AdversarialResult {
  WeightedGraph graph;
  Rational ratio = 1;
  Rational greedy_weight;
  Rational opt_weight;
  std::size_t evaluations = 0;
};

/// Local search for edge-weighted bipartite graphs on which greedy_ec is far
/// from optimal. Mutations reweight, move, add or drop an edge; a move is
/// kept when the ratio greedy/OPT does not drop. The best ratio seen is a
/// lower bound on greedy's worst case for this b.
inline AdversarialResult adversarial_greedy_search(std::size_t b, const AdversarialBudget& budget,
                                                   std::uint64_t seed) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  if (budget.side == 0 || budget.max_edges == 0 || budget.max_weight < 1)
    fail(ErrorCode::invalid_parameter, "empty search space");
  Rng rng(seed);
  const std::size_t side = budget.side;
  const std::size_t slots = side * side;
  const std::size_t cap = std::min(budget.max_edges, slots);

  struct State {
    std::vector<std::size_t> slots;  // edge (u, side + v) encoded as u * side + v
    std::vector<std::int64_t> weights;
  };
  auto to_graph = [&](const State& s) {
    std::vector<Edge> edges;
    std::vector<Rational> w;
    for (std::size_t i = 0; i < s.slots.size(); ++i) {
      edges.push_back({s.slots[i] / side, side + s.slots[i] % side});
      w.emplace_back(s.weights[i]);
    }
    return WeightedGraph::edge_weighted(2 * side, std::move(edges), std::move(w));
  };
  auto free_slot = [&](const State& s) {
    std::vector<std::size_t> freeish;
    for (std::size_t x = 0; x < slots; ++x)
      if (std::find(s.slots.begin(), s.slots.end(), x) == s.slots.end()) freeish.push_back(x);
    return freeish.empty() ? SIZE_MAX : freeish[rng.index(freeish.size())];
  };
  auto random_state = [&]() {
    State s;
    const std::size_t m = 1 + rng.index(cap);
    while (s.slots.size() < m) {
      s.slots.push_back(free_slot(s));
      s.weights.push_back(rng.uniform(1, budget.max_weight));
    }
    return s;
  };

  AdversarialResult best;
  best.graph = WeightedGraph::edge_weighted(0, {}, {});
  auto evaluate = [&](const State& s) {
    auto g = to_graph(s);
    auto greedy = ec::greedy_ec(g, b);
    auto opt = exact::oracle_opt(g, b, budget.max_edges);
    ++best.evaluations;
    Rational ratio = greedy.total_weight / opt.opt_weight;
    if (best.evaluations == 1 || ratio > best.ratio) {
      best.ratio = ratio;
      best.greedy_weight = greedy.total_weight;
      best.opt_weight = opt.opt_weight;
      best.graph = g;
    }
    return ratio;
  };

  State cur = random_state();
  Rational cur_ratio = evaluate(cur);
  std::size_t stale = 0;
  while (best.evaluations < budget.iterations) {
    if (stale >= budget.restart_every) {
      cur = random_state();
      cur_ratio = evaluate(cur);
      stale = 0;
      continue;
    }
    State next = cur;
    const std::size_t i = rng.index(next.slots.size());
    switch (rng.index(4)) {
      case 0:
        next.weights[i] = rng.uniform(1, budget.max_weight);
        break;
      case 1: {
        std::size_t slot = free_slot(next);
        if (slot != SIZE_MAX) next.slots[i] = slot;
        break;
      }
      case 2:
        if (next.slots.size() < cap) {
          next.slots.push_back(free_slot(next));
          next.weights.push_back(rng.uniform(1, budget.max_weight));
        }
        break;
      default:
        if (next.slots.size() > 1) {
          next.slots.erase(next.slots.begin() + static_cast<std::ptrdiff_t>(i));
          next.weights.erase(next.weights.begin() + static_cast<std::ptrdiff_t>(i));
        }
        break;
    }
    Rational r = evaluate(next);
    if (r >= cur_ratio) {
      stale = r > cur_ratio ? 0 : stale + 1;
      cur = std::move(next);
      cur_ratio = r;
    } else {
      ++stale;
    }
  }
  return best;
}

}  // namespace bmc::gen
