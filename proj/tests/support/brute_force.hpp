#pragma once

// Exhaustive reference solvers used to check the library's own solvers.
// Deliberately naive: they enumerate everything and share no code with the
// search routines they check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "bmc/graph.hpp"
#include "bmc/rational.hpp"

namespace bmc::testing {

inline bool conflict(const WeightedGraph& g, ItemId a, ItemId b) {
  if (g.mode() == Mode::vertex) {
    for (const auto& e : g.edges())
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
    return false;
  }
  const Edge& x = g.edge(a);
  const Edge& y = g.edge(b);
  return x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v;
}

struct BruteOptimum {
  Rational weight;
  std::size_t classes = 0;
};

/// Minimum total weight over every set partition of the items (restricted
/// growth strings) whose blocks are conflict-free and hold at most b items.
inline BruteOptimum brute_opt(const WeightedGraph& g, std::size_t b) {
  const std::size_t n = g.item_count();
  if (n == 0) return {};
  std::vector<std::size_t> block(n, 0);
  std::optional<BruteOptimum> best;
  auto evaluate = [&](std::size_t blocks) {
    std::vector<std::size_t> size(blocks, 0);
    std::vector<Rational> w(blocks, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (++size[block[i]] > b) return;
      w[block[i]] = std::max(w[block[i]], g.weight(i));
      for (std::size_t j = 0; j < i; ++j)
        if (block[j] == block[i] && conflict(g, i, j)) return;
    }
    Rational total;
    for (const auto& x : w) total += x;
    if (!best || total < best->weight || (total == best->weight && blocks < best->classes))
      best = BruteOptimum{total, blocks};
  };
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      evaluate(blocks);
      return;
    }
    for (std::size_t c = 0; c <= blocks; ++c) {
      block[i] = c;
      self(self, i + 1, std::max(blocks, c + 1));
    }
  };
  rec(rec, 0, 0);
  return *best;
}

/// Fewest classes of any bounded coloring (weights ignored).
inline std::size_t brute_min_classes(const WeightedGraph& g, std::size_t b) {
  const std::size_t n = g.item_count();
  if (n == 0) return 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> color(n, 0);
    bool found = false;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (found) return;
      if (i == n) {
        std::vector<std::size_t> size(k, 0);
        for (auto c : color)
          if (++size[c] > b) return;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = x + 1; y < n; ++y)
            if (color[x] == color[y] && conflict(g, x, y)) return;
        found = true;
        return;
      }
      for (std::size_t c = 0; c < k; ++c) {
        color[i] = c;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    if (found) return k;
  }
  return n;
}

/// Every assignment of colors 0..colors-1, filtered by lists, conflicts and
/// per-color bounds. Returns whether any survives.
inline bool brute_list_feasible(const WeightedGraph& g, std::size_t colors,
                                const std::vector<std::vector<std::size_t>>& lists,
                                const std::vector<std::size_t>& bounds) {
  const std::size_t n = g.item_count();
  std::vector<std::size_t> color(n, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= colors;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (std::size_t i = 0; i < n; ++i) {
      color[i] = x % colors;
      x /= colors;
    }
    bool ok = true;
    std::vector<std::size_t> used(colors, 0);
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (std::find(lists[i].begin(), lists[i].end(), color[i]) == lists[i].end()) ok = false;
      if (++used[color[i]] > bounds[color[i]]) ok = false;
    }
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if (color[i] == color[j] && conflict(g, i, j)) ok = false;
    if (ok) return true;
  }
  return n == 0;
}

/// Checks an assignment against lists, conflicts and bounds.
inline bool assignment_ok(const WeightedGraph& g, const std::vector<std::size_t>& color,
                          const std::vector<std::vector<std::size_t>>& lists,
                          const std::vector<std::size_t>& bounds) {
  if (color.size() != g.item_count()) return false;
  std::vector<std::size_t> used(bounds.size(), 0);
  for (std::size_t i = 0; i < color.size(); ++i) {
    if (color[i] >= bounds.size()) return false;
    if (std::find(lists[i].begin(), lists[i].end(), color[i]) == lists[i].end()) return false;
    if (++used[color[i]] > bounds[color[i]]) return false;
  }
  for (std::size_t i = 0; i < color.size(); ++i)
    for (std::size_t j = i + 1; j < color.size(); ++j)
      if (color[i] == color[j] && conflict(g, i, j)) return false;
  return true;
}

}  // namespace bmc::testing
