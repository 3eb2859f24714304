#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmc/error.hpp"
#include "bmc/graph.hpp"
#include "bmc/rational.hpp"

namespace bmc::exact {

inline constexpr std::size_t kDefaultGuard = 12;

struct OracleResult {
  Rational opt_weight;
  std::size_t class_count = 0;
  std::vector<Rational> class_weights;  ///< non-increasing
  Coloring witness;
};

namespace detail {

inline void check_guard(const WeightedGraph& g, std::size_t size_guard) {
  if (g.item_count() > size_guard)
    fail(ErrorCode::guard_exceeded, std::to_string(g.item_count()) + " items exceed the guard of " +
                                        std::to_string(size_guard));
}

/// Depth-first branch and bound over items in weight order. Each item joins
/// an existing class (in creation order) or opens the next one, so classes
/// are created in non-increasing weight order and a class costs exactly the
/// weight of its first item.
class BoundedColoringSearch {
 public:
  BoundedColoringSearch(const WeightedGraph& g, std::size_t b, std::size_t max_classes)
      : g_(g), b_(b), max_classes_(max_classes), order_(weight_order(g)) {}

  /// Restricts the search to colorings of weight at most `limit`.
  void set_limit(const Rational& limit) {
    best_ = limit;
    limit_inclusive_ = true;
  }

  std::optional<OracleResult> run() {
    classes_.clear();
    partial_ = 0;
    found_ = false;
    descend(0);
    if (!found_) return std::nullopt;
    OracleResult r;
    r.witness = make_coloring(g_, best_classes_);
    r.opt_weight = r.witness.total_weight;
    r.class_count = r.witness.class_count();
    r.class_weights = r.witness.class_weights;
    std::sort(r.class_weights.begin(), r.class_weights.end(), std::greater<>());
    return r;
  }

 private:
  struct ClassState {
    std::vector<ItemId> members;
    std::vector<std::uint32_t> blocked;  // per vertex
  };

  bool fits(const ClassState& c, ItemId item) const {
    if (c.members.size() >= b_) return false;
    if (g_.mode() == Mode::vertex) return c.blocked[item] == 0;
    const Edge& e = g_.edge(item);
    return c.blocked[e.u] == 0 && c.blocked[e.v] == 0;
  }

  void place(ClassState& c, ItemId item, int delta) {
    if (g_.mode() == Mode::vertex) {
      for (VertexId nb : g_.neighbors(item)) c.blocked[nb] += static_cast<std::uint32_t>(delta);
    } else {
      const Edge& e = g_.edge(item);
      c.blocked[e.u] += static_cast<std::uint32_t>(delta);
      c.blocked[e.v] += static_cast<std::uint32_t>(delta);
    }
    if (delta > 0) c.members.push_back(item);
    else c.members.pop_back();
  }

  // Worth exploring a state whose committed weight is `w`?
  bool promising(const Rational& w) const {
    if (!best_) return true;
    if (limit_inclusive_ && !found_) return w <= *best_;
    return w < *best_;
  }

  // Weight any completion must still add: the heaviest remaining item that no
  // current class can take needs a new class at least that heavy.
  std::optional<Rational> completion_bound(std::size_t depth) const {
    for (std::size_t d = depth; d < order_.size(); ++d) {
      ItemId item = order_[d];
      bool any = false;
      for (const auto& c : classes_)
        if (fits(c, item)) {
          any = true;
          break;
        }
      if (!any) {
        if (classes_.size() >= max_classes_) return std::nullopt;
        return g_.weight(item);
      }
    }
    return Rational(0);
  }

  void descend(std::size_t depth) {
    if (depth == order_.size()) {
      if (!promising(partial_)) return;
      best_ = partial_;
      found_ = true;
      best_classes_.clear();
      for (const auto& c : classes_) best_classes_.push_back(c.members);
      return;
    }
    auto extra = completion_bound(depth);
    if (!extra || !promising(partial_ + *extra)) return;

    const ItemId item = order_[depth];
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      if (!fits(classes_[ci], item)) continue;
      place(classes_[ci], item, +1);
      descend(depth + 1);
      place(classes_[ci], item, -1);
    }
    if (classes_.size() < max_classes_) {
      Rational opened = partial_ + g_.weight(item);
      if (!promising(opened)) return;
      classes_.push_back({{}, std::vector<std::uint32_t>(g_.vertex_count(), 0)});
      place(classes_.back(), item, +1);
      Rational saved = partial_;
      partial_ = opened;
      descend(depth + 1);
      partial_ = saved;
      classes_.pop_back();
    }
  }

  const WeightedGraph& g_;
  std::size_t b_;
  std::size_t max_classes_;
  std::vector<ItemId> order_;
  std::vector<ClassState> classes_;
  Rational partial_;
  std::optional<Rational> best_;
  bool limit_inclusive_ = false;
  bool found_ = false;
  std::vector<std::vector<ItemId>> best_classes_;
};

}  // namespace detail

/// Minimum-weight coloring with at most `max_colors` classes of size at most
/// `b`, or nothing when no such coloring exists.
inline std::optional<OracleResult> exact_bounded_coloring_upto(const WeightedGraph& g, std::size_t b,
                                                               std::size_t max_colors,
                                                               std::size_t size_guard = kDefaultGuard) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  detail::check_guard(g, size_guard);
  detail::BoundedColoringSearch search(g, b, max_colors);
  return search.run();
}

/// Optimal bounded max-coloring (vertex or edge mode, per the graph).
inline OracleResult oracle_opt(const WeightedGraph& g, std::size_t b,
                               std::size_t size_guard = kDefaultGuard) {
  auto r = exact_bounded_coloring_upto(g, b, SIZE_MAX, size_guard);
  if (!r) fail(ErrorCode::infeasible, "no bounded coloring found");  // unreachable: singletons work
  return *r;
}

/// Minimum-weight coloring among those of weight at most `limit`; nothing if
/// every bounded coloring is heavier than `limit`.
inline std::optional<OracleResult> min_coloring_within(const WeightedGraph& g, std::size_t b,
                                                       const Rational& limit,
                                                       std::size_t size_guard = kDefaultGuard) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  detail::check_guard(g, size_guard);
  detail::BoundedColoringSearch search(g, b, SIZE_MAX);
  search.set_limit(limit);
  return search.run();
}

/// Bounded list coloring: each item takes a color from its list, conflicting
/// items differ, and color i is used at most bounds[i] times. Colors are
/// 0-based here.
struct ListColoringInstance {
  WeightedGraph graph;
  std::size_t colors = 0;
  std::vector<std::vector<std::size_t>> lists;
  std::vector<std::size_t> bounds;
};

using Assignment = std::vector<std::size_t>;  ///< color per item

namespace detail {

inline std::vector<std::uint64_t> list_masks(const WeightedGraph& g,
                                             const std::vector<std::vector<std::size_t>>& lists,
                                             std::size_t colors) {
  if (colors > 64) fail(ErrorCode::invalid_parameter, "at most 64 colors are supported");
  if (lists.size() != g.item_count())
    fail(ErrorCode::invalid_parameter, "one list per item required");
  std::vector<std::uint64_t> masks(lists.size(), 0);
  for (std::size_t i = 0; i < lists.size(); ++i)
    for (std::size_t c : lists[i]) {
      if (c >= colors) fail(ErrorCode::invalid_parameter, "list color out of range");
      masks[i] |= std::uint64_t{1} << c;
    }
  return masks;
}

/// Backtracking with forward checking; picks the unassigned item with the
/// fewest remaining colors (smaller id on ties) and tries colors ascending.
class ListColoringSearch {
 public:
  ListColoringSearch(std::vector<std::vector<ItemId>> adjacency, std::vector<std::uint64_t> domains,
                     std::vector<std::size_t> bounds)
      : adj_(std::move(adjacency)), domain_(std::move(domains)), bounds_(std::move(bounds)),
        used_(bounds_.size(), 0), color_(domain_.size(), kUnassigned) {}

  std::optional<Assignment> run() {
    for (auto d : domain_)
      if (d == 0) return std::nullopt;
    if (!descend(0)) return std::nullopt;
    return color_;
  }

 private:
  static constexpr std::size_t kUnassigned = SIZE_MAX;

  std::uint64_t open_colors() const {
    std::uint64_t m = 0;
    for (std::size_t c = 0; c < bounds_.size(); ++c)
      if (used_[c] < bounds_[c]) m |= std::uint64_t{1} << c;
    return m;
  }

  bool descend(std::size_t assigned) {
    if (assigned == color_.size()) return true;
    const std::uint64_t open = open_colors();
    std::size_t pick = kUnassigned;
    int best = 65;
    for (std::size_t i = 0; i < color_.size(); ++i) {
      if (color_[i] != kUnassigned) continue;
      int options = std::popcount(domain_[i] & open);
      if (options == 0) return false;
      if (options < best) {
        best = options;
        pick = i;
      }
    }
    std::uint64_t choices = domain_[pick] & open;
    while (choices) {
      const std::size_t c = static_cast<std::size_t>(std::countr_zero(choices));
      choices &= choices - 1;
      const std::uint64_t bit = std::uint64_t{1} << c;
      std::vector<ItemId> pruned;
      bool wiped = false;
      for (ItemId nb : adj_[pick]) {
        if (color_[nb] != kUnassigned || !(domain_[nb] & bit)) continue;
        domain_[nb] &= ~bit;
        pruned.push_back(nb);
        if (domain_[nb] == 0) wiped = true;
      }
      color_[pick] = c;
      ++used_[c];
      if (!wiped && descend(assigned + 1)) return true;
      --used_[c];
      color_[pick] = kUnassigned;
      for (ItemId nb : pruned) domain_[nb] |= bit;
    }
    return false;
  }

  std::vector<std::vector<ItemId>> adj_;
  std::vector<std::uint64_t> domain_;
  std::vector<std::size_t> bounds_;
  std::vector<std::size_t> used_;
  Assignment color_;
};

}  // namespace detail

/// Exact decision for bounded list coloring; returns one witness assignment.
inline std::optional<Assignment> list_coloring_decision(const ListColoringInstance& inst,
                                                        std::size_t size_guard = kDefaultGuard) {
  detail::check_guard(inst.graph, size_guard);
  if (inst.bounds.size() != inst.colors)
    fail(ErrorCode::invalid_parameter, "one bound per color required");
  auto masks = detail::list_masks(inst.graph, inst.lists, inst.colors);
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (masks[i] == 0) fail(ErrorCode::invalid_parameter, "empty list for item " + std::to_string(i));
  for (auto b : inst.bounds)
    if (b == 0) fail(ErrorCode::invalid_parameter, "color bounds must be positive");
  detail::ListColoringSearch search(inst.graph.item_adjacency(), std::move(masks), inst.bounds);
  return search.run();
}

/// Two-color bounded list coloring in polynomial time. A connected component
/// has at most two proper 2-colorings (one the swap of the other); lists
/// discard some of them. Which option each component takes is then a
/// subset-sum over color-0 usage counts. Among feasible totals the largest
/// color-0 count is chosen.
inline std::optional<Assignment> two_color_list_bounded(const WeightedGraph& g,
                                                        const std::vector<std::vector<std::size_t>>& lists,
                                                        std::size_t b1, std::size_t b2) {
  const auto masks = detail::list_masks(g, lists, 2);
  const auto adj = g.item_adjacency();
  const std::size_t n = g.item_count();

  struct Option {
    Assignment colors;  // indexed like `members`
    std::size_t zeros = 0;
  };
  struct Component {
    std::vector<ItemId> members;
    std::vector<Option> options;
  };
  std::vector<Component> comps;
  std::vector<bool> seen(n, false);
  for (ItemId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    Component comp;
    std::vector<ItemId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      ItemId x = stack.back();
      stack.pop_back();
      comp.members.push_back(x);
      for (ItemId y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    std::sort(comp.members.begin(), comp.members.end());
    std::vector<std::size_t> pos(n, SIZE_MAX);
    for (std::size_t i = 0; i < comp.members.size(); ++i) pos[comp.members[i]] = i;

    for (std::size_t root_color : {0u, 1u}) {
      Assignment col(comp.members.size(), SIZE_MAX);
      col[0] = root_color;
      std::vector<std::size_t> queue{0};
      bool ok = true;
      for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
        std::size_t li = queue[qi];
        ItemId x = comp.members[li];
        if (!(masks[x] >> col[li] & 1u)) ok = false;
        for (ItemId y : adj[x]) {
          std::size_t ly = pos[y];
          if (col[ly] == SIZE_MAX) {
            col[ly] = 1 - col[li];
            queue.push_back(ly);
          } else if (col[ly] == col[li]) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      Option opt{col, static_cast<std::size_t>(std::count(col.begin(), col.end(), std::size_t{0}))};
      comp.options.push_back(std::move(opt));
    }
    if (comp.options.empty()) return std::nullopt;
    comps.push_back(std::move(comp));
  }

  // reach[c][s]: option index used by component c-1 to reach color-0 count s.
  constexpr int kNone = -1;
  std::vector<std::vector<int>> reach(comps.size() + 1, std::vector<int>(n + 1, kNone));
  reach[0][0] = 0;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t s = 0; s <= n; ++s) {
      if (reach[c][s] == kNone) continue;
      for (std::size_t o = 0; o < comps[c].options.size(); ++o) {
        std::size_t t = s + comps[c].options[o].zeros;
        if (reach[c + 1][t] == kNone) reach[c + 1][t] = static_cast<int>(o);
      }
    }
  const std::size_t lo = n > b2 ? n - b2 : 0;
  const std::size_t hi = std::min(b1, n);
  for (std::size_t s = hi + 1; s-- > lo;) {
    if (reach[comps.size()][s] == kNone) continue;
    Assignment result(n, 0);
    std::size_t total = s;
    for (std::size_t c = comps.size(); c-- > 0;) {
      const auto& opt = comps[c].options[static_cast<std::size_t>(reach[c + 1][total])];
      for (std::size_t i = 0; i < comps[c].members.size(); ++i) result[comps[c].members[i]] = opt.colors[i];
      total -= opt.zeros;
    }
    return result;
  }
  return std::nullopt;
}

/// Builds the coloring described by an assignment (classes in color order).
inline Coloring coloring_from_assignment(const WeightedGraph& g, const Assignment& a, std::size_t colors) {
  std::vector<std::vector<ItemId>> classes(colors);
  for (ItemId i = 0; i < a.size(); ++i) classes[a[i]].push_back(i);
  return make_coloring(g, std::move(classes));
}

struct ListDrivenOptions {
  std::size_t size_guard = 64;           ///< items handed to list_coloring_decision
  std::size_t combination_guard = 200000;  ///< weight combinations enumerated
};

/// Minimum-weight coloring with at most `k` classes, found by enumerating
/// candidate class weights w_1 >= ... >= w_j (j <= k, drawn from the item
/// weights with multiplicity, w_1 the maximum) and deciding the list
/// instance where item u may use class i iff w(u) <= w_i.
inline std::optional<Coloring> min_weight_via_lists(const WeightedGraph& g, std::size_t b, std::size_t k,
                                                    const ListDrivenOptions& opts = {}) {
  if (b == 0) fail(ErrorCode::invalid_parameter, "bound b must be at least 1");
  const std::size_t n = g.item_count();
  if (n == 0) return Coloring{};
  if (k == 0) return std::nullopt;
  detail::check_guard(g, opts.size_guard);
  k = std::min(k, n);
  if (k > 64) fail(ErrorCode::guard_exceeded, "more than 64 colors");

  // Distinct weights, heaviest first, with multiplicities.
  std::vector<Rational> values(g.weights().begin(), g.weights().end());
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<std::pair<Rational, std::size_t>> distinct;
  for (const auto& v : values) {
    if (!distinct.empty() && distinct.back().first == v) ++distinct.back().second;
    else distinct.emplace_back(v, 1);
  }

  // Count combinations first so the guard fires before any work.
  // ways[i][r]: sequences of r more classes using distinct values from index i on.
  const std::size_t d = distinct.size();
  const std::size_t cap = opts.combination_guard + 1;
  std::vector<std::vector<std::size_t>> ways(d + 1, std::vector<std::size_t>(k + 1, 0));
  for (std::size_t i = d + 1; i-- > 0;)
    for (std::size_t r = 0; r <= k; ++r) {
      if (r == 0) {
        ways[i][r] = 1;
        continue;
      }
      if (i == d) continue;
      std::size_t total = 0;
      for (std::size_t t = 0; t <= std::min(r, distinct[i].second); ++t)
        total = std::min(cap, total + ways[i + 1][r - t]);
      ways[i][r] = total;
    }
  std::size_t combos = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    // w_1 is fixed to the maximum: use t >= 1 copies of distinct[0].
    for (std::size_t t = 1; t <= std::min(j, distinct[0].second); ++t)
      combos = std::min(cap, combos + ways[1][j - t]);
  }
  if (combos > opts.combination_guard)
    fail(ErrorCode::guard_exceeded, std::to_string(k) + " colors need more than " +
                                        std::to_string(opts.combination_guard) + " weight combinations");

  const auto adjacency = g.item_adjacency();
  std::optional<Coloring> best;
  std::vector<Rational> combo;

  auto try_combo = [&]() {
    Rational sum;
    for (const auto& w : combo) sum += w;
    if (best && sum >= best->total_weight) return;
    std::vector<std::uint64_t> domains(n, 0);
    for (ItemId u = 0; u < n; ++u)
      for (std::size_t i = 0; i < combo.size(); ++i)
        if (g.weight(u) <= combo[i]) domains[u] |= std::uint64_t{1} << i;
    detail::ListColoringSearch search(adjacency, std::move(domains),
                                      std::vector<std::size_t>(combo.size(), b));
    if (auto a = search.run()) {
      Coloring c = coloring_from_assignment(g, *a, combo.size());
      if (!best || c.total_weight < best->total_weight) best = std::move(c);
    }
  };

  // Enumerate non-increasing sequences over `distinct` with multiplicity caps.
  auto extend = [&](auto&& self, std::size_t from, std::size_t remaining) -> void {
    try_combo();
    if (remaining == 0) return;
    for (std::size_t i = from; i < d; ++i) {
      std::size_t already = 0;
      for (const auto& w : combo) already += (w == distinct[i].first);
      if (already >= distinct[i].second) continue;
      combo.push_back(distinct[i].first);
      self(self, i, remaining - 1);
      combo.pop_back();
    }
  };
  combo.push_back(distinct[0].first);
  extend(extend, 0, k - 1);
  return best;
}

}  // namespace bmc::exact
