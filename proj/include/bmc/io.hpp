#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bmc/error.hpp"
#include "bmc/exact.hpp"
#include "bmc/graph.hpp"
#include "bmc/rational.hpp"

namespace bmc::io {

/// Color lists attached to an instance file (colors 0-based in memory,
/// 1-based in the file).
struct ListData {
  std::size_t colors = 0;
  std::vector<std::size_t> bounds;
  std::vector<std::vector<std::size_t>> lists;
};

struct Instance {
  WeightedGraph graph;
  std::optional<ListData> lists;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline std::size_t read_index(std::istringstream& in, std::size_t line, const char* what) {
  std::string tok;
  if (!(in >> tok)) parse_fail(line, std::string("missing ") + what);
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (tok.empty() || tok.front() == '-') throw std::invalid_argument(tok);
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    parse_fail(line, std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size()) parse_fail(line, std::string("bad ") + what + " '" + tok + "'");
  return static_cast<std::size_t>(v);
}

inline Rational read_weight(const std::string& tok, std::size_t line) {
  Rational w;
  try {
    w = Rational::parse(tok);
  } catch (const std::exception&) {
    parse_fail(line, "bad weight '" + tok + "'");
  }
  if (w.sign() <= 0) parse_fail(line, "weight must be positive, got '" + tok + "'");
  return w;
}

}  // namespace detail

/// Line-oriented instance format:
///
///   # comment
///   mode vertex|edge
///   vertices N
///   v <id> <weight>          vertex weights (vertex mode, default 1)
///   e <u> <v> [<weight>]     edges (weight only in edge mode, default 1)
///   k K                      optional list-coloring data
///   bound <color> <b>        colors are 1-based
///   list <item> <c1> [c2 ...]
///
/// Weights are integers or num/den. Errors carry the offending line number.
inline Instance read_instance(std::istream& in) {
  std::optional<Mode> mode;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::size_t, Rational>> vweights;
  std::vector<Edge> edges;
  std::vector<Rational> eweights;
  std::optional<std::size_t> k;
  std::vector<std::pair<std::size_t, std::size_t>> bounds;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> lists;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "mode") {
      std::string m;
      ls >> m;
      if (m == "vertex") mode = Mode::vertex;
      else if (m == "edge") mode = Mode::edge;
      else detail::parse_fail(line, "mode must be 'vertex' or 'edge'");
    } else if (key == "vertices") {
      n = detail::read_index(ls, line, "vertex count");
    } else if (key == "v") {
      if (mode != Mode::vertex) detail::parse_fail(line, "vertex weight outside vertex mode");
      std::size_t id = detail::read_index(ls, line, "vertex id");
      std::string w;
      if (!(ls >> w)) detail::parse_fail(line, "missing weight");
      vweights.emplace_back(id, detail::read_weight(w, line));
    } else if (key == "e") {
      if (!mode) detail::parse_fail(line, "edge before mode line");
      std::size_t u = detail::read_index(ls, line, "endpoint");
      std::size_t v = detail::read_index(ls, line, "endpoint");
      std::string w;
      Rational weight = 1;
      if (ls >> w) {
        if (mode != Mode::edge) detail::parse_fail(line, "edge weight outside edge mode");
        weight = detail::read_weight(w, line);
      }
      if (!n || u >= *n || v >= *n) detail::parse_fail(line, "edge endpoint out of range");
      if (u == v) detail::parse_fail(line, "self-loop");
      edges.push_back({std::min(u, v), std::max(u, v)});
      eweights.push_back(weight);
    } else if (key == "k") {
      k = detail::read_index(ls, line, "color count");
    } else if (key == "bound") {
      std::size_t c = detail::read_index(ls, line, "color");
      std::size_t b = detail::read_index(ls, line, "bound");
      bounds.emplace_back(c, b);
    } else if (key == "list") {
      std::size_t item = detail::read_index(ls, line, "item");
      std::vector<std::size_t> colors;
      while (ls >> std::ws && !ls.eof()) colors.push_back(detail::read_index(ls, line, "color"));
      if (colors.empty()) detail::parse_fail(line, "empty list");
      lists.emplace_back(item, std::move(colors));
    } else {
      detail::parse_fail(line, "unknown directive '" + key + "'");
    }
    std::string extra;
    if (ls >> extra) detail::parse_fail(line, "unexpected trailing token '" + extra + "'");
  }
  if (!mode) fail(ErrorCode::parse_error, "missing 'mode' line");
  if (!n) fail(ErrorCode::parse_error, "missing 'vertices' line");

  std::vector<Rational> weights;
  if (*mode == Mode::vertex) {
    weights.assign(*n, Rational(1));
    for (auto& [id, w] : vweights) {
      if (id >= *n) fail(ErrorCode::parse_error, "vertex weight for unknown vertex " + std::to_string(id));
      weights[id] = w;
    }
  } else {
    weights = eweights;
  }
  Instance inst;
  try {
    inst.graph = WeightedGraph(*mode, *n, std::move(edges), std::move(weights));
  } catch (const Error& e) {
    fail(ErrorCode::parse_error, e.what());
  }

  if (k || !bounds.empty() || !lists.empty()) {
    if (!k) fail(ErrorCode::parse_error, "list data without a 'k' line");
    ListData ld;
    ld.colors = *k;
    std::vector<std::optional<std::size_t>> b(*k);
    for (auto& [c, bound] : bounds) {
      if (c == 0 || c > *k) fail(ErrorCode::parse_error, "bound for unknown color " + std::to_string(c));
      b[c - 1] = bound;
    }
    for (std::size_t c = 0; c < *k; ++c) {
      if (!b[c]) fail(ErrorCode::parse_error, "missing bound for color " + std::to_string(c + 1));
      ld.bounds.push_back(*b[c]);
    }
    ld.lists.assign(inst.graph.item_count(), {});
    for (auto& [item, colors] : lists) {
      if (item >= inst.graph.item_count()) fail(ErrorCode::parse_error, "list for unknown item " + std::to_string(item));
      for (auto c : colors) {
        if (c == 0 || c > *k) fail(ErrorCode::parse_error, "list color " + std::to_string(c) + " out of range");
        ld.lists[item].push_back(c - 1);
      }
    }
    for (std::size_t i = 0; i < ld.lists.size(); ++i)
      if (ld.lists[i].empty()) fail(ErrorCode::parse_error, "missing list for item " + std::to_string(i));
    inst.lists = std::move(ld);
  }
  return inst;
}

inline Instance read_instance_string(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

inline void write_instance(std::ostream& out, const WeightedGraph& g, const ListData* lists = nullptr) {
  out << "mode " << to_string(g.mode()) << "\n";
  out << "vertices " << g.vertex_count() << "\n";
  if (g.mode() == Mode::vertex)
    for (VertexId v = 0; v < g.vertex_count(); ++v) out << "v " << v << " " << g.weight(v) << "\n";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    out << "e " << g.edge(i).u << " " << g.edge(i).v;
    if (g.mode() == Mode::edge) out << " " << g.weight(i);
    out << "\n";
  }
  if (lists) {
    out << "k " << lists->colors << "\n";
    for (std::size_t c = 0; c < lists->colors; ++c) out << "bound " << c + 1 << " " << lists->bounds[c] << "\n";
    for (std::size_t i = 0; i < lists->lists.size(); ++i) {
      out << "list " << i;
      for (auto c : lists->lists[i]) out << " " << c + 1;
      out << "\n";
    }
  }
}

inline std::string instance_string(const WeightedGraph& g, const ListData* lists = nullptr) {
  std::ostringstream os;
  write_instance(os, g, lists);
  return os.str();
}

/// One class per line, space-separated item ids; '#' comments.
inline std::vector<std::vector<ItemId>> read_classes(std::istream& in) {
  std::vector<std::vector<ItemId>> classes;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<ItemId> cls;
    while (ls >> std::ws && !ls.eof()) cls.push_back(detail::read_index(ls, line, "item id"));
    if (!cls.empty()) classes.push_back(std::move(cls));
  }
  return classes;
}

inline void write_coloring(std::ostream& out, const Coloring& c) {
  for (const auto& cls : c.classes) {
    for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? " " : "") << cls[i];
    out << "\n";
  }
}

/// One algorithm run, optionally compared with the exact optimum.
struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::size_t b = 0;
  std::string status = "ok";
  Rational weight;
  std::size_t classes = 0;
  std::optional<Rational> opt;
  std::optional<std::size_t> opt_classes;
  double wall_ms = 0.0;

  [[nodiscard]] std::optional<Rational> ratio() const {
    if (!opt || status != "ok" || opt->sign() == 0) return std::nullopt;
    return weight / *opt;
  }
};

inline void write_csv_header(std::ostream& out, bool timing) {
  out << "instance,algorithm,b,status,W,k,opt,k_star,ratio" << (timing ? ",wall_ms" : "") << "\n";
}

/// W and OPT print as integers or num/den; the ratio always prints as num/den.
inline void write_csv_row(std::ostream& out, const RunRecord& r, bool timing) {
  const bool ok = r.status == "ok";
  out << r.instance << "," << r.algorithm << "," << r.b << "," << r.status << ",";
  out << (ok ? r.weight.str() : "") << "," << (ok ? std::to_string(r.classes) : "") << ",";
  out << (r.opt ? r.opt->str() : "") << "," << (r.opt_classes ? std::to_string(*r.opt_classes) : "") << ",";
  auto ratio = r.ratio();
  out << (ratio ? ratio->fraction_str() : "");
  if (timing) out << "," << r.wall_ms;
  out << "\n";
}

}  // namespace bmc::io
