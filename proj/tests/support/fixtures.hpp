#pragma once

#include <initializer_list>
#include <vector>

#include "bmc/gen.hpp"
#include "bmc/graph.hpp"

namespace bmc::testing {

inline std::vector<Rational> ints(std::initializer_list<std::int64_t> values) {
  return {values.begin(), values.end()};
}

inline WeightedGraph vgraph(std::size_t n, std::vector<Edge> edges, std::initializer_list<std::int64_t> w) {
  return WeightedGraph::vertex_weighted(n, std::move(edges), ints(w));
}

inline WeightedGraph egraph(std::size_t n, std::vector<Edge> edges, std::initializer_list<std::int64_t> w) {
  return WeightedGraph::edge_weighted(n, std::move(edges), ints(w));
}

/// Vertex-weighted star: center 0 of weight 5, leaves 1, 2, 3 of weights 3, 2, 1.
inline WeightedGraph vertex_star() { return vgraph(4, {{0, 1}, {0, 2}, {0, 3}}, {5, 3, 2, 1}); }

/// Edge-weighted star with edge weights 5, 3, 1.
inline WeightedGraph edge_star() { return egraph(4, {{0, 1}, {0, 2}, {0, 3}}, {5, 3, 1}); }

inline gen::GeneratedInstance random_bipartite(std::uint64_t seed, Mode mode, std::size_t max_left,
                                               std::size_t max_right, std::int64_t wmax = 20) {
  gen::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  gen::GenParams p;
  p.kind = gen::GraphKind::bipartite;
  p.mode = mode;
  p.n = 1 + rng.index(max_left);
  p.n_right = rng.index(max_right + 1);
  p.density = static_cast<double>(rng.uniform(0, 100)) / 100.0;
  p.weight_max = wmax;
  p.denominator = rng.chance(0.25) ? 3 : 1;
  p.seed = seed;
  return gen::gen_random(p);
}

}  // namespace bmc::testing
