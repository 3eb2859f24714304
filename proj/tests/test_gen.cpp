#include <gtest/gtest.h>

#include "bmc/ec.hpp"
#include "bmc/exact.hpp"
#include "bmc/gen.hpp"
#include "support/fixtures.hpp"

using namespace bmc;

namespace {

gen::ChainListInstance chains(std::size_t n, std::vector<Edge> edges, std::size_t k,
                              std::vector<std::vector<std::size_t>> lists, std::size_t bound = 5) {
  return gen::make_chain_instance(n, std::move(edges), k, std::move(lists), std::vector<std::size_t>(k, bound));
}

}  // namespace

TEST(GenRandom, Examples) {
  gen::GenParams p;
  p.kind = gen::GraphKind::tree;
  p.n = 1;
  auto t = gen::gen_random(p).graph;
  EXPECT_EQ(t.vertex_count(), 1u);
  EXPECT_EQ(t.edge_count(), 0u);

  p.kind = gen::GraphKind::bipartite;
  p.n = 3;
  p.n_right = 3;
  p.density = 0;
  auto b = gen::gen_random(p);
  EXPECT_EQ(b.graph.vertex_count(), 6u);
  EXPECT_EQ(b.graph.edge_count(), 0u);
  EXPECT_EQ(b.bipartition->left, (std::vector<VertexId>{0, 1, 2}));
}

TEST(GenRandom, SameSeedSameGraph) {
  for (auto kind : {gen::GraphKind::tree, gen::GraphKind::bipartite, gen::GraphKind::general})
    for (auto mode : {Mode::vertex, Mode::edge}) {
      gen::GenParams p;
      p.kind = kind;
      p.mode = mode;
      p.n = 7;
      p.n_right = kind == gen::GraphKind::bipartite ? 4 : 0;
      p.denominator = 4;
      p.seed = 42;
      EXPECT_EQ(gen::gen_random(p).graph, gen::gen_random(p).graph);
      auto q = p;
      q.seed = 43;
      if (kind != gen::GraphKind::tree || mode == Mode::vertex)
        EXPECT_NE(gen::gen_random(p).graph, gen::gen_random(q).graph);
    }
}

TEST(GenRandom, ShapesAndWeights) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    gen::GenParams p;
    p.n = 1 + seed % 12;
    p.seed = seed;
    p.weight_min = 2;
    p.weight_max = 5;
    p.denominator = 2;
    p.kind = gen::GraphKind::tree;
    auto t = gen::gen_random(p).graph;
    EXPECT_TRUE(structure_probe(t).is_tree);
    for (const auto& w : t.weights()) {
      EXPECT_GE(w, Rational(2));
      EXPECT_LE(w, Rational(5));
    }
    p.kind = gen::GraphKind::bipartite;
    p.n_right = seed % 5;
    auto b = gen::gen_random(p);
    EXPECT_TRUE(structure_probe(b.graph).is_bipartite);
    for (const auto& e : b.graph.edges()) EXPECT_TRUE(e.u < p.n && e.v >= p.n);
  }
}

TEST(GenRandom, TreesAreUniformOnFourVertices) {
  // 16 labeled trees on 4 vertices; each should get about 1/16 of draws.
  std::map<std::vector<Edge>, int> counts;
  const int draws = 16000;
  for (int s = 0; s < draws; ++s) {
    gen::GenParams p;
    p.kind = gen::GraphKind::tree;
    p.n = 4;
    p.seed = static_cast<std::uint64_t>(s);
    auto g = gen::gen_random(p).graph;
    std::vector<Edge> e(g.edges().begin(), g.edges().end());
    std::sort(e.begin(), e.end());
    ++counts[e];
  }
  EXPECT_EQ(counts.size(), 16u);
  for (auto& [tree, c] : counts) {
    EXPECT_GT(c, 800);
    EXPECT_LT(c, 1200);
  }
}

TEST(GenRandom, RejectsBadParameters) {
  gen::GenParams p;
  p.weight_min = 0;
  EXPECT_THROW(gen::gen_random(p), Error);
  p = {};
  p.weight_max = 0;
  EXPECT_THROW(gen::gen_random(p), Error);
  p = {};
  p.density = 1.5;
  EXPECT_THROW(gen::gen_random(p), Error);
  p = {};
  p.kind = gen::GraphKind::tree;
  p.n = 0;
  EXPECT_THROW(gen::gen_random(p), Error);
  p = {};
  p.n_right = 2;
  EXPECT_THROW(gen::gen_random(p), Error);
}

TEST(Normalize, AddsOnlyFreshColorsWhenAlreadyNormal) {
  auto inst = chains(4, {{0, 1}, {2, 3}}, 2, {{0, 1}, {0, 1}});
  auto out = gen::normalize_chain_list_instance(inst);
  EXPECT_EQ(out.colors, 4u);
  EXPECT_EQ(out.chains.edge_count(), 12u);
  EXPECT_EQ(out.bounds, std::vector<std::size_t>(4, 5));
  for (std::size_t e = 2; e < 12; ++e) EXPECT_EQ(out.lists[e], (std::vector<std::size_t>{2, 3}));
}

TEST(Normalize, PadsSmallBounds) {
  auto inst = gen::make_chain_instance(2, {{0, 1}}, 2, {{0, 1}}, {3, 5});
  auto out = gen::normalize_chain_list_instance(inst);
  // Two padding edges for color 0, ten fresh edges.
  EXPECT_EQ(out.chains.edge_count(), 1u + 2u + 10u);
  EXPECT_EQ(out.lists[1], (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(out.lists[2], (std::vector<std::size_t>{0, 2}));
  for (const auto& l : out.lists) EXPECT_EQ(l.size(), 2u);
  EXPECT_TRUE(gen::is_union_of_paths(out.chains));
}

TEST(Normalize, EmptyInstance) {
  auto inst = gen::make_chain_instance(0, {}, 1, {}, {5});
  auto out = gen::normalize_chain_list_instance(inst);
  EXPECT_EQ(out.colors, 3u);
  EXPECT_EQ(out.chains.edge_count(), 10u);
}

TEST(Normalize, PreservesColorability) {
  gen::Rng rng(8);
  for (int round = 0; round < 60; ++round) {
    // One path of up to 3 edges, lists of size 1 or 2 over 2 colors, bounds 1..5.
    std::size_t m = 1 + rng.index(3);
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> lists;
    for (std::size_t i = 0; i < m; ++i) {
      edges.push_back({i, i + 1});
      if (rng.chance(0.5)) lists.push_back({rng.index(2)});
      else lists.push_back({0, 1});
    }
    std::vector<std::size_t> bounds{1 + rng.index(5), 1 + rng.index(5)};
    auto inst = gen::make_chain_instance(m + 1, edges, 2, lists, bounds);
    auto out = gen::normalize_chain_list_instance(inst);
    const bool before = exact::list_coloring_decision(gen::as_list_instance(inst)).has_value();
    const bool after = exact::list_coloring_decision(gen::as_list_instance(out), 64).has_value();
    EXPECT_EQ(before, after) << "round " << round;
  }
}

TEST(Normalize, RejectsNonPaths) {
  auto star = gen::make_chain_instance(4, {{0, 1}, {0, 2}, {0, 3}}, 2, {{0}, {0}, {1}}, {5, 5});
  try {
    gen::normalize_chain_list_instance(star);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_structure);
  }
}

TEST(VertexChains, LineGraphOfPath) {
  auto path = bmc::testing::vgraph(3, {{0, 1}, {1, 2}}, {1, 1, 1});
  auto out = gen::vertex_chains_to_edge_chains(path, 2, {{0}, {1}, {0, 1}}, {5, 5});
  EXPECT_EQ(out.chains.edge_count(), 3u);
  EXPECT_TRUE(gen::is_union_of_paths(out.chains));
  // Consecutive vertices become adjacent edges.
  EXPECT_TRUE(out.chains.items_conflict(0, 1));
  EXPECT_TRUE(out.chains.items_conflict(1, 2));
  EXPECT_FALSE(out.chains.items_conflict(0, 2));
  EXPECT_EQ(out.lists[2], (std::vector<std::size_t>{0, 1}));
}

TEST(Reduction, SingleEdgeTwoColors) {
  auto out = gen::build_hardness_instance(chains(2, {{0, 1}}, 2, {{0, 1}}));
  EXPECT_EQ(out.star_count, 0u);
  EXPECT_EQ(out.b_prime, 6u);
  EXPECT_EQ(out.tree_count, 1u);
  EXPECT_EQ(out.target_weight, Rational(2 * 3));
  EXPECT_TRUE(structure_probe(out.tree).is_tree);
}

TEST(Reduction, TwoEdgesThreeColors) {
  auto out = gen::build_hardness_instance(chains(4, {{0, 1}, {2, 3}}, 3, {{0, 1}, {0, 2}}));
  EXPECT_EQ(out.frequencies, (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(out.max_frequency, 2u);
  EXPECT_EQ(out.star_count, 8u);
  EXPECT_EQ(out.b_prime, 15u);
  EXPECT_EQ(out.tree_count, 4u);
  EXPECT_EQ(out.target_weight, Rational(2 * 6 + 1));
  EXPECT_TRUE(structure_probe(out.tree).is_tree);

  auto c = gen::verify_yes_certificate(out, {0, 0});
  auto report = validate_coloring(out.tree, c, out.b_prime);
  ASSERT_TRUE(report) << report.failure;
  EXPECT_EQ(report.total_weight, Rational(13));
}

TEST(Reduction, StructuralInvariants) {
  gen::Rng rng(21);
  for (int round = 0; round < 80; ++round) {
    const std::size_t k = 2 + rng.index(3);
    const std::size_t m = rng.index(5);
    // Each edge either extends the previous path or starts a new one.
    std::vector<Edge> fixed;
    std::vector<std::vector<std::size_t>> lists;
    std::size_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t u = (i > 0 && rng.chance(0.5)) ? fixed.back().v : next++;
      std::size_t v = next++;
      fixed.push_back({u, v});
      std::size_t a = rng.index(k), b = rng.index(k - 1);
      if (b >= a) ++b;
      lists.push_back({a, b});
    }
    auto out = gen::build_hardness_instance(chains(next, fixed, k, lists));
    const std::size_t F = out.max_frequency;
    EXPECT_EQ(out.star_count, k * (k - 1) * F - 2 * m);
    EXPECT_EQ(out.b_prime, k * (k - 1) * F - 2 * m + 5 + F);
    if (out.tree.vertex_count() > 0) EXPECT_TRUE(structure_probe(out.tree).is_tree);
    EXPECT_EQ(out.stitch_edges.size(), out.tree_count ? out.tree_count - 1 : 0);
    // Stitch edges form a matching.
    for (std::size_t i = 0; i < out.stitch_edges.size(); ++i)
      for (std::size_t j = i + 1; j < out.stitch_edges.size(); ++j)
        EXPECT_FALSE(out.tree.items_conflict(out.stitch_edges[i], out.stitch_edges[j]));
    // Every star center carries k edges of distinct weights 2, 4, ..., 2k.
    std::vector<std::size_t> star_edges(out.tree.vertex_count(), 0);
    for (std::size_t id = 0; id < out.roles.size(); ++id)
      if (out.roles[id] == gen::EdgeRole::star) {
        ++star_edges[out.tree.edge(id).u];
        ++star_edges[out.tree.edge(id).v];
      }
    std::size_t centers = 0;
    for (VertexId v = 0; v < out.tree.vertex_count(); ++v) {
      std::vector<Rational> ws;
      for (auto e : out.tree.incident_edges(v))
        if (out.roles[e] == gen::EdgeRole::star) ws.push_back(out.tree.weight(e));
      if (ws.size() != k) continue;
      std::sort(ws.begin(), ws.end());
      bool full = true;
      for (std::size_t i = 0; i < k; ++i) full = full && ws[i] == Rational(2 * static_cast<std::int64_t>(i + 1));
      bool anchor = false;
      for (auto e : out.tree.incident_edges(v)) anchor = anchor || out.roles[e] != gen::EdgeRole::star;
      if (full && !anchor) ++centers;
    }
    EXPECT_EQ(centers, out.star_count) << "round " << round;
    EXPECT_EQ(out.target_weight,
              Rational(static_cast<std::int64_t>(k * (k + 1))) +
                  Rational(static_cast<std::int64_t>((out.stitch_edges.size() + out.b_prime - 1) / out.b_prime)));
  }
}

TEST(Reduction, CertificateErrors) {
  auto out = gen::build_hardness_instance(chains(4, {{0, 1}, {2, 3}}, 3, {{0, 1}, {0, 2}}));
  auto code = [&](std::vector<std::size_t> cert) {
    try {
      gen::verify_yes_certificate(out, cert);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::parse_error;
  };
  EXPECT_EQ(code({0, 1}), ErrorCode::invalid_certificate);  // color 1 not in {0, 2}
  EXPECT_EQ(code({0}), ErrorCode::invalid_certificate);

  auto tight = gen::build_hardness_instance(chains(4, {{0, 1}, {2, 3}}, 3, {{0, 1}, {0, 2}}, 1));
  try {
    gen::verify_yes_certificate(tight, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_certificate);
  }
}

TEST(Reduction, EmptyInstance) {
  auto out = gen::build_hardness_instance(chains(0, {}, 0, {}));
  EXPECT_EQ(out.tree.edge_count(), 0u);
  EXPECT_EQ(out.target_weight, Rational(0));
  auto c = gen::verify_yes_certificate(out, {});
  EXPECT_TRUE(validate_coloring(out.tree, c, out.b_prime == 0 ? 1 : out.b_prime));
  EXPECT_EQ(c.total_weight, out.target_weight);
}

TEST(Reduction, RejectsBadInput) {
  EXPECT_THROW(gen::build_hardness_instance(chains(2, {{0, 1}}, 2, {{0}})), Error);
  EXPECT_THROW(gen::build_hardness_instance(gen::make_chain_instance(2, {{0, 1}}, 2, {{0, 1}}, {5, 4})), Error);
}

TEST(Adversarial, BoundOneIsExact) {
  gen::AdversarialBudget budget;
  budget.iterations = 300;
  auto r = gen::adversarial_greedy_search(1, budget, 3);
  EXPECT_EQ(r.ratio, Rational(1));
}

TEST(Adversarial, SmallBudgetStaysInEnvelope) {
  gen::AdversarialBudget budget;
  budget.iterations = 2000;
  for (std::size_t b : {2, 4}) {
    auto r = gen::adversarial_greedy_search(b, budget, 9);
    EXPECT_GE(r.ratio, Rational(1));
    EXPECT_TRUE(ec::within_greedy_bound(r.greedy_weight, r.opt_weight, b, true));
    // The witness reproduces the reported numbers.
    EXPECT_EQ(ec::greedy_ec(r.graph, b).total_weight, r.greedy_weight);
    EXPECT_EQ(exact::oracle_opt(r.graph, b, 64).opt_weight, r.opt_weight);
    EXPECT_EQ(r.greedy_weight / r.opt_weight, r.ratio);
    if (b == 4) EXPECT_GT(r.ratio, Rational(1));
  }
}

TEST(Adversarial, Deterministic) {
  gen::AdversarialBudget budget;
  budget.iterations = 500;
  auto a = gen::adversarial_greedy_search(4, budget, 17);
  auto b = gen::adversarial_greedy_search(4, budget, 17);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.ratio, b.ratio);
}
