#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmc/ec.hpp"
#include "bmc/error.hpp"
#include "bmc/exact.hpp"
#include "bmc/gen.hpp"
#include "bmc/graph.hpp"
#include "bmc/io.hpp"
#include "bmc/vc.hpp"

namespace bmc::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kGuardExceeded = 3,
  kInfeasible = 4,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::guard_exceeded: return kGuardExceeded;
    case ErrorCode::infeasible: return kInfeasible;
    default: return kInvalidInput;
  }
}

/// Guard used when --guard is absent: $BMC_GUARD, else the library default.
inline std::size_t default_guard() {
  if (const char* env = std::getenv("BMC_GUARD")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      fail(ErrorCode::invalid_parameter, std::string("BMC_GUARD is not a number: ") + env);
    }
  }
  return exact::kDefaultGuard;
}

struct AlgorithmOptions {
  std::size_t b = 1;
  std::size_t p = 3;
  std::optional<std::size_t> k;
  std::size_t guard = exact::kDefaultGuard;
  std::size_t fixed_b_guard = 4;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"split",   "vcb",      "scheme",     "greedy",
                                              "convert", "setcover", "tree-exact", "oracle"};
  return names;
}

inline Coloring run_algorithm(const std::string& name, const WeightedGraph& g, const AlgorithmOptions& o) {
  if (name == "split") return vc::split(g, o.b);
  if (name == "vcb") return vc::vc_b_bipartite(g, o.b);
  if (name == "scheme") return vc::scheme(g, o.b, {o.p, o.fixed_b_guard});
  if (name == "greedy") return ec::greedy_ec(g, o.b);
  if (name == "convert") return ec::convert_ec_tree(g, o.b);
  if (name == "setcover") return ec::setcover_approx(g, o.b);
  if (name == "oracle") return exact::oracle_opt(g, o.b, o.guard).witness;
  if (name == "tree-exact") {
    if (!o.k) fail(ErrorCode::invalid_parameter, "tree-exact needs --k");
    auto c = vc::tree_exact_fixed_k(g, o.b, *o.k);
    if (!c) fail(ErrorCode::infeasible, "no coloring with at most " + std::to_string(*o.k) + " colors");
    return *c;
  }
  fail(ErrorCode::invalid_parameter, "unknown algorithm '" + name + "'");
}

namespace detail {

inline io::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::invalid_parameter, "cannot open '" + path + "'");
  try {
    return io::read_instance(in);
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

// Writes through `fn` to `path`, or to `out` when path is "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) fail(ErrorCode::invalid_parameter, "cannot write '" + path + "'");
  fn(file);
}

inline std::string instance_label(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace detail

/// Runs the command line (without the program name). Human-readable summaries
/// go to `out`, diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded max-coloring toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "write a seeded random instance");
  gen::GenParams gp;
  std::string gen_kind = "general", gen_mode = "vertex", gen_out = "-";
  gen_cmd->add_option("--kind", gen_kind, "tree | bipartite | general")
      ->check(CLI::IsMember({"tree", "bipartite", "general"}));
  gen_cmd->add_option("--mode", gen_mode, "vertex | edge")->check(CLI::IsMember({"vertex", "edge"}));
  gen_cmd->add_option("--n", gp.n, "vertices (left side for bipartite)");
  gen_cmd->add_option("--n-right", gp.n_right, "right side size for bipartite");
  gen_cmd->add_option("--density", gp.density, "edge probability");
  gen_cmd->add_option("--wmin", gp.weight_min);
  gen_cmd->add_option("--wmax", gp.weight_max);
  gen_cmd->add_option("--den", gp.denominator, "weight denominator");
  gen_cmd->add_option("--seed", gp.seed);
  gen_cmd->add_option("-o,--output", gen_out);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run one algorithm and write its coloring");
  AlgorithmOptions so;
  std::string solve_alg, solve_in, solve_out = "-";
  std::optional<std::size_t> solve_guard;
  solve_cmd->add_option("--alg", solve_alg)->required()->check(CLI::IsMember(algorithm_names()));
  solve_cmd->add_option("--b", so.b)->required();
  solve_cmd->add_option("--p", so.p);
  solve_cmd->add_option("--k", so.k);
  solve_cmd->add_option("--guard", solve_guard, "oracle item guard");
  solve_cmd->add_option("--fixed-b-guard", so.fixed_b_guard, "largest b for scheme with p >= 4");
  solve_cmd->add_option("-i,--input", solve_in)->required();
  solve_cmd->add_option("-o,--output", solve_out);

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "run algorithms on instances and emit CSV");
  AlgorithmOptions co;
  std::vector<std::string> cmp_algs, cmp_in;
  std::string cmp_out = "-";
  bool cmp_oracle = false, cmp_timing = false;
  std::optional<std::size_t> cmp_guard;
  cmp_cmd->add_option("--algs", cmp_algs)->required()->delimiter(',')->check(CLI::IsMember(algorithm_names()));
  cmp_cmd->add_flag("--oracle", cmp_oracle, "also compute the exact optimum");
  cmp_cmd->add_flag("--timing", cmp_timing, "append a wall_ms column (not reproducible)");
  cmp_cmd->add_option("--b", co.b)->required();
  cmp_cmd->add_option("--p", co.p);
  cmp_cmd->add_option("--k", co.k);
  cmp_cmd->add_option("--guard", cmp_guard);
  cmp_cmd->add_option("--fixed-b-guard", co.fixed_b_guard);
  cmp_cmd->add_option("-i,--input", cmp_in)->required();
  cmp_cmd->add_option("-o,--output", cmp_out);

  // reduce
  auto* red_cmd = app.add_subcommand("reduce", "build the tree instance from a chain list-coloring instance");
  std::string red_in, red_out = "-", red_cert, red_coloring;
  bool red_normalize = false;
  red_cmd->add_option("-i,--input", red_in)->required();
  red_cmd->add_option("-o,--output", red_out);
  red_cmd->add_flag("--normalize", red_normalize, "pad lists to two colors and bounds to 5 first");
  red_cmd->add_option("--certificate", red_cert, "file with one 1-based color per source edge");
  red_cmd->add_option("--coloring-out", red_coloring, "where to write the certificate's coloring");

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "check a coloring file against an instance");
  std::string ver_in, ver_col;
  std::size_t ver_b = 0;
  ver_cmd->add_option("-i,--input", ver_in)->required();
  ver_cmd->add_option("-c,--coloring", ver_col)->required();
  ver_cmd->add_option("--b", ver_b)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out, msg_err;
    int rc = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*gen_cmd) {
      gp.kind = gen_kind == "tree" ? gen::GraphKind::tree
                : gen_kind == "bipartite" ? gen::GraphKind::bipartite
                                          : gen::GraphKind::general;
      gp.mode = gen_mode == "edge" ? Mode::edge : Mode::vertex;
      auto inst = gen::gen_random(gp);
      detail::emit(gen_out, out, [&](std::ostream& os) {
        os << "# gen kind=" << gen_kind << " seed=" << gp.seed << "\n";
        io::write_instance(os, inst.graph);
      });
      return kOk;
    }

    if (*solve_cmd) {
      so.guard = solve_guard.value_or(default_guard());
      auto inst = detail::load_instance(solve_in);
      Coloring c = run_algorithm(solve_alg, inst.graph, so);
      detail::emit(solve_out, out, [&](std::ostream& os) { io::write_coloring(os, c); });
      if (solve_out != "-")
        out << "algorithm=" << solve_alg << " b=" << so.b << " W=" << c.total_weight << " k=" << c.class_count()
            << "\n";
      return kOk;
    }

    if (*cmp_cmd) {
      co.guard = cmp_guard.value_or(default_guard());
      std::vector<io::RunRecord> rows;
      for (const auto& path : cmp_in) {
        auto inst = detail::load_instance(path);
        std::optional<exact::OracleResult> opt;
        if (cmp_oracle) opt = exact::oracle_opt(inst.graph, co.b, co.guard);
        for (const auto& alg : cmp_algs) {
          io::RunRecord r;
          r.instance = detail::instance_label(path);
          r.algorithm = alg;
          r.b = co.b;
          auto start = std::chrono::steady_clock::now();
          try {
            Coloring c = run_algorithm(alg, inst.graph, co);
            r.weight = c.total_weight;
            r.classes = c.class_count();
          } catch (const Error& e) {
            r.status = to_string(e.code());
          }
          r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
          if (opt) {
            r.opt = opt->opt_weight;
            r.opt_classes = opt->class_count;
          }
          rows.push_back(std::move(r));
        }
      }
      std::stable_sort(rows.begin(), rows.end(), [](const io::RunRecord& a, const io::RunRecord& b) {
        return std::tie(a.instance, a.algorithm) < std::tie(b.instance, b.algorithm);
      });
      detail::emit(cmp_out, out, [&](std::ostream& os) {
        io::write_csv_header(os, cmp_timing);
        for (const auto& r : rows) io::write_csv_row(os, r, cmp_timing);
      });
      return kOk;
    }

    if (*red_cmd) {
      auto inst = detail::load_instance(red_in);
      if (!inst.lists) fail(ErrorCode::invalid_parameter, "chain instance needs k, bound and list lines");
      gen::ChainListInstance chains{inst.graph, inst.lists->colors, inst.lists->lists, inst.lists->bounds};
      if (red_normalize) chains = gen::normalize_chain_list_instance(chains);
      auto result = gen::build_hardness_instance(chains);
      detail::emit(red_out, out, [&](std::ostream& os) {
        os << "# reduction b_prime=" << result.b_prime << " colors=" << result.colors
           << " target=" << result.target_weight << " trees=" << result.tree_count
           << " stars=" << result.star_count << " scale=" << result.weight_scale << "\n";
        io::write_instance(os, result.tree);
      });
      if (red_out != "-")
        out << "b_prime=" << result.b_prime << " colors=" << result.colors << " target=" << result.target_weight
            << " edges=" << result.tree.edge_count() << " trees=" << result.tree_count << "\n";
      if (!red_cert.empty()) {
        std::ifstream cin_file(red_cert);
        if (!cin_file) fail(ErrorCode::invalid_parameter, "cannot open '" + red_cert + "'");
        std::vector<std::size_t> cert;
        for (const auto& cls : io::read_classes(cin_file))
          for (auto c : cls) {
            if (c == 0) fail(ErrorCode::invalid_certificate, "colors are 1-based");
            cert.push_back(c - 1);
          }
        Coloring c = gen::verify_yes_certificate(result, cert);
        auto report = validate_coloring(result.tree, c, result.b_prime);
        if (!report) fail(ErrorCode::invalid_certificate, report.failure);
        if (!red_coloring.empty())
          detail::emit(red_coloring, out, [&](std::ostream& os) { io::write_coloring(os, c); });
        out << "certificate coloring W=" << c.total_weight << " target=" << result.target_weight << "\n";
      }
      return kOk;
    }

    if (*ver_cmd) {
      auto inst = detail::load_instance(ver_in);
      std::ifstream cf(ver_col);
      if (!cf) fail(ErrorCode::invalid_parameter, "cannot open '" + ver_col + "'");
      Coloring c;
      try {
        c.classes = io::read_classes(cf);
      } catch (const Error& e) {
        fail(e.code(), ver_col + ": " + e.what());
      }
      auto report = validate_coloring(inst.graph, c, ver_b);
      if (!report) {
        err << "invalid coloring: " << report.failure << "\n";
        return kInvalidInput;
      }
      out << "valid W=" << report.total_weight << " k=" << c.classes.size() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kInvalidInput;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace bmc::cli
