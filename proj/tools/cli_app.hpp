#pragma once

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "factor_forge/factor_forge.hpp"
#include "factor_forge/json_io.hpp"

namespace factor_forge::cli {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kCap = 3 };

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// "r=1..6,s=0..4,a=2" -> {r:[1,6], s:[0,4], a:[2,2]}.
inline std::map<std::string, Range> parse_grid(const std::string& spec) {
  std::map<std::string, Range> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::InvalidParams, "grid item '" + item + "' needs key=lo..hi");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    Range r;
    try {
      auto dots = val.find("..");
      std::size_t used = 0;
      if (dots == std::string::npos) {
        r.lo = r.hi = std::stoll(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
      } else {
        std::string a = val.substr(0, dots), b = val.substr(dots + 2);
        r.lo = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        r.hi = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidParams, "bad range '" + val + "' for " + key);
    }
    if (r.lo > r.hi) throw Error(ErrorKind::InvalidParams, "empty range for " + key);
    out[key] = r;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidParams, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidParams, "cannot write '" + path + "'");
  out << text;
}

inline std::uint64_t seed_from_env() {
  const char* raw = std::getenv("FACTOR_FORGE_SEED");
  if (!raw || !*raw) return 0;
  try {
    std::size_t used = 0;
    auto v = std::stoull(raw, &used);
    if (used == std::string(raw).size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::InvalidParams, "FACTOR_FORGE_SEED must be a non-negative integer");
}

inline int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooLarge:
    case ErrorKind::SearchExhausted:
    case ErrorKind::BalancingFailed:
    case ErrorKind::ConstructionFailed:
      return kCap;
    default:
      return kUsage;
  }
}

/// Runs `fn(i)` for i in [0, n) on `jobs` threads; results land by index.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline std::string join(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

inline std::string value_text(const FormulaValue& v) {
  switch (v.kind) {
    case FormulaValue::Kind::Integer: return std::to_string(v.value);
    case FormulaValue::Kind::Infinity: return "inf";
    case FormulaValue::Kind::Bounds: return "[" + std::to_string(v.lower) + "," + std::to_string(v.upper) + "]";
    case FormulaValue::Kind::Undetermined: return "undetermined";
  }
  return "?";
}

inline void print_crosscheck_text(std::ostream& out, const CrossCheckReport& rep) {
  for (const auto& v : rep.values)
    out << v.name << ' ' << value_text(v) << (v.note.empty() ? "" : "  # " + v.note) << '\n';
  for (const auto& d : rep.discrepancies)
    out << "discrepancy " << d.left << (d.kind == Relation::Kind::Equal ? " != " : " > ") << d.right
        << " difference " << d.difference << '\n';
}

struct Options {
  std::int64_t r = 1, s = 0, a = 1, t = 1, d = 1, x = 1;
  bool json = false;
  bool all_formulas = false;
  std::string graph_file, factor_file, out_file, family, grid, mode = "thresholds";
  std::size_t cap = 0;
  int jobs = 1;
};

inline int cmd_sigma(const Options& o, std::ostream& out) {
  ThresholdParams p{o.r, o.s, o.a, o.t};
  const auto value = sigma(p);
  if (o.json) {
    json_io::json doc{{"params", json_io::to_json(p)}, {"sigma", value}};
    if (o.all_formulas) doc["crosscheck"] = json_io::to_json(crosscheck(p));
    out << doc.dump(2) << '\n';
  } else {
    out << value << '\n';
    if (o.all_formulas) print_crosscheck_text(out, crosscheck(p));
  }
  return kOk;
}

inline int cmd_interval(const Options& o, std::ostream& out) {
  const auto fs = feasible_x_set(o.d, o.s, o.r, o.a);
  if (o.json) out << json_io::to_json(fs).dump(2) << '\n';
  else out << join(fs.members) << '\n';
  return fs.members.empty() ? kNegative : kOk;
}

inline int cmd_factorize(const Options& o, std::ostream& out) {
  const auto g = read_graph(read_file(o.graph_file));
  FactorizeOptions fo;
  if (o.cap) fo.exact_edge_cap = o.cap;
  fo.balance.seed = seed_from_env();
  const auto f = factorize(g, static_cast<int>(o.r), static_cast<int>(o.a), static_cast<int>(o.x), fo);
  if (!f) {
    if (o.json) out << json_io::json{{"exists", false}}.dump(2) << '\n';
    else out << "none\n";
    return kNegative;
  }
  const std::string text = write_factorization(g, *f);
  if (!o.out_file.empty()) write_file(o.out_file, text);
  if (o.json) out << json_io::json{{"exists", true}, {"factorization", json_io::to_json(g, *f)}}.dump(2) << '\n';
  else if (o.out_file.empty()) out << text;
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto g = read_graph(read_file(o.graph_file));
  const auto f = read_factorization(read_file(o.factor_file), g);
  const auto rep = verify_factorization(g, f);
  if (o.json) {
    out << json_io::to_json(rep).dump(2) << '\n';
  } else {
    out << (rep.ok() ? "valid" : "invalid") << '\n';
    for (const auto& v : rep.violations) out << v.message << '\n';
  }
  return rep.ok() ? kOk : kNegative;
}

inline int cmd_boundary(const Options& o, std::ostream& out) {
  const int r = static_cast<int>(o.r), s = static_cast<int>(o.s), a = static_cast<int>(o.a), x = static_cast<int>(o.x);
  std::optional<BoundaryInstance> inst;
  SimpleGraph g;
  if (o.family == "EO") inst = gen_boundary_EO(r, s, a, x);
  else if (o.family == "OO") inst = gen_boundary_OO(r, s, a, x);
  else if (o.family == "lemma14") g = gen_lemma14_regular(x * r, r);
  else g = gen_lemma14_topend(x * (r + a), r, a);
  if (inst) g = inst->graph;
  const std::string text = write_graph(g);
  json_io::json meta;
  if (inst) {
    meta = json_io::to_json(*inst);
  } else {
    meta = {{"family", o.family}, {"r", r}, {"a", a}, {"x", x}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
    const auto prof = degree_profile(g);
    meta["degree"] = prof.d_min;
  }
  if (!o.out_file.empty()) {
    write_file(o.out_file, text);
    write_file(o.out_file + ".json", meta.dump(2) + "\n");
  }
  if (o.json) out << meta.dump(2) << '\n';
  else if (o.out_file.empty()) out << text;
  return kOk;
}

inline int cmd_oracle(const Options& o, std::ostream& out) {
  const auto g = read_graph(read_file(o.graph_file));
  const auto v = exists_factorization(g, static_cast<int>(o.r), static_cast<int>(o.a), static_cast<int>(o.x),
                                      o.cap ? o.cap : 30);
  if (o.json) out << json_io::to_json(g, v).dump(2) << '\n';
  else out << (v.exists ? "exists" : "not exists") << '\n';
  return v.exists ? kOk : kNegative;
}

inline int cmd_crosscheck(const Options& o, std::ostream& out) {
  const auto rep = crosscheck({o.r, o.s, o.a, o.t});
  if (o.json) out << json_io::to_json(rep).dump(2) << '\n';
  else print_crosscheck_text(out, rep);
  return kOk;
}

inline Range need(const std::map<std::string, Range>& grid, const std::string& key, std::optional<Range> fallback = {}) {
  auto it = grid.find(key);
  if (it != grid.end()) return it->second;
  if (fallback) return *fallback;
  throw Error(ErrorKind::InvalidParams, "grid is missing '" + key + "'");
}

/// Threshold mode: sigma vs the interval search on every cell. A mismatch is
/// expected only where crosscheck flags the a = 1, s >= 2 formula conflict.
inline int sweep_thresholds(const Options& o, std::ostream& out) {
  const auto grid = parse_grid(o.grid);
  const Range rr = need(grid, "r"), sr = need(grid, "s"), ar = need(grid, "a"), tr = need(grid, "t", Range{1, 1});
  std::vector<ThresholdParams> cells;
  for (auto r = rr.lo; r <= rr.hi; ++r)
    for (auto s = sr.lo; s <= sr.hi; ++s)
      for (auto a = ar.lo; a <= ar.hi; ++a)
        for (auto t = tr.lo; t <= tr.hi; ++t) cells.push_back({r, s, a, t});
  struct Row {
    std::int64_t sigma = 0, search = 0, lower = 0, upper = -1;
    bool conflict_cell = false;
  };
  std::vector<Row> rows(cells.size());
  parallel_for(cells.size(), o.jobs, [&](std::size_t i) {
    const auto& p = cells[i];
    Row row;
    row.sigma = sigma(p);
    row.search = sigma_by_search(p, row.sigma + 3 * (p.r + p.a));
    row.lower = big_n(p);
    if (p.a >= 2) row.upper = sigma_bounds(p).second;
    row.conflict_cell = p.a == 1 && p.s >= 2;
    rows[i] = row;
  });
  std::size_t unexpected = 0;
  json_io::json arr = json_io::json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& p = cells[i];
    const auto& row = rows[i];
    const bool agree = row.sigma == row.search;
    std::string status = agree ? "agree" : row.conflict_cell ? "flagged" : "MISMATCH";
    if (!agree && !row.conflict_cell) ++unexpected;
    if (o.json) {
      arr.push_back({{"r", p.r}, {"s", p.s}, {"a", p.a}, {"t", p.t}, {"sigma", row.sigma}, {"search", row.search},
                     {"N", row.lower}, {"status", status}});
    } else {
      out << p.r << ' ' << p.s << ' ' << p.a << ' ' << p.t << ' ' << row.sigma << ' ' << row.search << ' ' << status
          << '\n';
    }
  }
  if (o.json) out << json_io::json{{"cells", arr}, {"unexpected_mismatches", unexpected}}.dump(2) << '\n';
  else out << "# cells " << cells.size() << " unexpected mismatches " << unexpected << '\n';
  return unexpected == 0 ? kOk : kNegative;
}

/// Conformance mode: grid over d, s, n with `count` graphs per cell, sampled
/// from FACTOR_FORGE_SEED.
inline int sweep_conformance(const Options& o, std::ostream& out) {
  const auto grid = parse_grid(o.grid);
  const Range dr = need(grid, "d"), sr = need(grid, "s", Range{0, 0}), nr = need(grid, "n"),
              cr = need(grid, "count", Range{1, 1});
  const auto seed = seed_from_env();
  std::vector<SimpleGraph> graphs;
  for (auto d = dr.lo; d <= dr.hi; ++d)
    for (auto s = sr.lo; s <= sr.hi; ++s)
      for (auto n = nr.lo; n <= nr.hi; ++n) {
        try {
          auto c = sample_dds_graphs(static_cast<int>(d), static_cast<int>(s), static_cast<int>(n),
                                     static_cast<int>(cr.hi), seed + static_cast<std::uint64_t>(d * 1000 + s * 100 + n));
          for (auto& g : c.graphs)
            if (g.edge_count() <= (o.cap ? o.cap : 30)) graphs.push_back(std::move(g));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Infeasible) throw;
        }
      }
  std::vector<ConformanceReport> parts(graphs.size());
  parallel_for(graphs.size(), o.jobs, [&](std::size_t i) {
    parts[i] = conformance_sweep({graphs[i]}, static_cast<int>(o.r), static_cast<int>(o.a), o.cap ? o.cap : 30);
  });
  ConformanceReport rep;
  rep.r = static_cast<int>(o.r), rep.a = static_cast<int>(o.a);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    rep.graphs_checked += parts[i].graphs_checked;
    rep.graphs_skipped += parts[i].graphs_skipped;
    rep.oracle_nodes += parts[i].oracle_nodes;
    for (auto cell : parts[i].cells) {
      cell.graph_index = i;
      rep.cells.push_back(cell);
    }
  }
  if (o.json) {
    out << json_io::to_json(rep).dump(2) << '\n';
  } else {
    using C = ConformanceCell::Category;
    out << "graphs " << rep.graphs_checked << '\n';
    for (C c : {C::Agree, C::Disagree, C::SideConditionExcluded, C::EndpointWitnessed, C::EndpointGraphSpecific})
      out << to_string(c) << ' ' << rep.count(c) << '\n';
  }
  return rep.disagreements() == 0 ? kOk : kNegative;
}

/// Entry point shared by the binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threshold numbers, feasible factor counts and (r,r+a)-factorizations of simple graphs", "factor-forge"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable output"); };
  auto add_rsat = [&](CLI::App* sub, bool with_t) {
    sub->add_option("-r", o.r, "Lower factor degree r")->required();
    sub->add_option("-s", o.s, "Degree spread s")->required();
    sub->add_option("-a", o.a, "Factor degree spread a")->required();
    if (with_t) sub->add_option("-t", o.t, "Required number of factor counts t")->required();
  };

  auto* sigma_cmd = app.add_subcommand("sigma", "Threshold sigma(r,s,a,t)");
  add_rsat(sigma_cmd, true);
  sigma_cmd->add_flag("--all-formulas", o.all_formulas, "Also print every applicable formula");
  add_json(sigma_cmd);

  auto* interval_cmd = app.add_subcommand("interval", "Feasible numbers of factors for (d,d+s)-graphs");
  interval_cmd->add_option("-d", o.d, "Minimum degree d")->required();
  add_rsat(interval_cmd, false);
  add_json(interval_cmd);

  auto* factorize_cmd = app.add_subcommand("factorize", "Construct an (r,r+a)-factorization with x factors");
  factorize_cmd->add_option("graph", o.graph_file, "Edge-list file")->required();
  factorize_cmd->add_option("-r", o.r)->required();
  factorize_cmd->add_option("-a", o.a)->required();
  factorize_cmd->add_option("-x", o.x, "Number of factors")->required();
  factorize_cmd->add_option("--out", o.out_file, "Write the factorization here");
  factorize_cmd->add_option("--cap", o.cap, "Exact-search edge cap (default 40)");
  add_json(factorize_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check a factorization file against a graph");
  verify_cmd->add_option("graph", o.graph_file)->required();
  verify_cmd->add_option("factorization", o.factor_file)->required();
  add_json(verify_cmd);

  auto* boundary_cmd = app.add_subcommand("boundary", "Generate an extremal graph");
  boundary_cmd->add_option("--family", o.family)->required()->check(CLI::IsMember({"EO", "OO", "lemma14", "lemma14-top"}));
  boundary_cmd->add_option("-r", o.r)->required();
  boundary_cmd->add_option("-s", o.s);
  boundary_cmd->add_option("-a", o.a);
  boundary_cmd->add_option("-x", o.x)->required();
  boundary_cmd->add_option("--out", o.out_file, "Write the edge list here and a .json sidecar next to it");
  add_json(boundary_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Decide existence by exhaustive search");
  oracle_cmd->add_option("graph", o.graph_file)->required();
  oracle_cmd->add_option("-r", o.r)->required();
  oracle_cmd->add_option("-a", o.a)->required();
  oracle_cmd->add_option("-x", o.x)->required();
  oracle_cmd->add_option("--cap", o.cap, "Edge cap (default 30)");
  add_json(oracle_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweeps: thresholds (r,s,a,t) or conformance (d,s,n,count)");
  sweep_cmd->add_option("--grid", o.grid, "e.g. r=1..6,s=0..4,a=1..6,t=1..4")->required();
  sweep_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"thresholds", "conformance"}));
  sweep_cmd->add_option("-r", o.r, "Conformance mode: r");
  sweep_cmd->add_option("-a", o.a, "Conformance mode: a");
  sweep_cmd->add_option("--cap", o.cap, "Conformance mode: oracle edge cap (default 30)");
  sweep_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_json(sweep_cmd);

  auto* cross_cmd = app.add_subcommand("crosscheck", "Evaluate every applicable formula and compare");
  add_rsat(cross_cmd, true);
  add_json(cross_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*sigma_cmd) return cmd_sigma(o, out);
    if (*interval_cmd) return cmd_interval(o, out);
    if (*factorize_cmd) return cmd_factorize(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*boundary_cmd) return cmd_boundary(o, out);
    if (*oracle_cmd) return cmd_oracle(o, out);
    if (*sweep_cmd) return o.mode == "conformance" ? sweep_conformance(o, out) : sweep_thresholds(o, out);
    if (*cross_cmd) return cmd_crosscheck(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.kind());
  }
  return kUsage;
}

}  // namespace factor_forge::cli
