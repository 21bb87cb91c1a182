#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "factor_forge/error.hpp"
#include "factor_forge/factorizer.hpp"
#include "factor_forge/graph.hpp"
#include "factor_forge/thresholds.hpp"

namespace factor_forge {

struct OracleVerdict {
  bool exists = false;
  std::optional<Factorization> witness;
  std::int64_t nodes_explored = 0;
  bool exhaustive = false;
};

/// Decides whether G has an (r, r+a)-factorization with x factors by complete
/// search. Kept separate from factorize_exact on purpose: edges in canonical
/// order, an explicit stack, and deficits recomputed at each node.
inline OracleVerdict exists_factorization(const SimpleGraph& g, int r, int a, int x, std::size_t edge_cap = 30) {
  if (r < 0 || a < 0) throw Error(ErrorKind::InvalidParams, "need r >= 0 and a >= 0");
  if (x < 1) throw Error(ErrorKind::InvalidFactorCount, "x must be >= 1");
  if (g.edge_count() > edge_cap)
    throw Error(ErrorKind::TooLarge,
                "oracle refuses " + std::to_string(g.edge_count()) + " edges (cap " + std::to_string(edge_cap) + ")");
  OracleVerdict verdict;
  verdict.exhaustive = true;
  const int top = r + a;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < x * r || g.degree(v) > x * top) return verdict;

  const std::size_t m = g.edge_count();
  const auto xs = static_cast<std::size_t>(x);
  std::vector<int> load(static_cast<std::size_t>(g.vertex_count()) * xs, 0);
  std::vector<int> left(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) left[static_cast<std::size_t>(v)] = g.degree(v);
  auto at = [&](Vertex v, int k) -> int& { return load[static_cast<std::size_t>(v) * xs + static_cast<std::size_t>(k)]; };
  auto can_finish = [&](Vertex v) {
    int need = 0;
    for (int k = 0; k < x; ++k) need += std::max(0, r - at(v, k));
    return need <= left[static_cast<std::size_t>(v)];
  };

  std::vector<int> choice(m + 1, -1);
  std::vector<int> opened(m + 1, 0);  // factors in use before edge i
  std::size_t i = 0;
  while (true) {
    if (i == m) {
      verdict.exists = true;
      verdict.witness = Factorization{x, r, a, std::vector<int>(choice.begin(), choice.begin() + static_cast<std::ptrdiff_t>(m))};
      return verdict;
    }
    const Edge& e = g.edge(static_cast<EdgeId>(i));
    if (choice[i] >= 0) {
      --at(e.u, choice[i]), --at(e.v, choice[i]);
      ++left[static_cast<std::size_t>(e.u)], ++left[static_cast<std::size_t>(e.v)];
    }
    const int limit = std::min(x, opened[i] + 1);
    int k = choice[i] + 1;
    for (; k < limit; ++k) {
      if (at(e.u, k) >= top || at(e.v, k) >= top) continue;
      ++at(e.u, k), ++at(e.v, k);
      --left[static_cast<std::size_t>(e.u)], --left[static_cast<std::size_t>(e.v)];
      ++verdict.nodes_explored;
      if (can_finish(e.u) && can_finish(e.v)) break;
      --at(e.u, k), --at(e.v, k);
      ++left[static_cast<std::size_t>(e.u)], ++left[static_cast<std::size_t>(e.v)];
    }
    if (k < limit) {
      choice[i] = k;
      opened[i + 1] = std::max(opened[i], k + 1);
      ++i;
      choice[i] = -1;
    } else {
      choice[i] = -1;
      if (i == 0) return verdict;
      --i;
    }
  }
}

// ---------------------------------------------------------------------------
// Random (d, d+s)-graphs.

struct CorpusSpec {
  int d = 1;
  int s = 0;
  int n = 2;
  int count = 0;
  std::uint64_t seed = 0;
};

struct Corpus {
  CorpusSpec spec;
  std::vector<SimpleGraph> graphs;
};

namespace detail {

class DegreeSequenceBuilder {
 public:
  DegreeSequenceBuilder(int n, std::mt19937_64& rng) : n_(n), rng_(rng), adj_(static_cast<std::size_t>(n) * n, 0) {}

  /// Random edge addition towards `target`, then at most `max_swaps` repair
  /// swaps for the remaining deficits.
  std::optional<SimpleGraph> build(const std::vector<int>& target, int max_swaps) {
    need_ = target;
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v) pairs.push_back({u, v});
    std::shuffle(pairs.begin(), pairs.end(), rng_);
    for (auto [u, v] : pairs)
      if (need(u) > 0 && need(v) > 0) add(u, v);
    for (int swaps = 0; swaps < max_swaps; ++swaps) {
      std::vector<Vertex> short_of;
      for (Vertex v = 0; v < n_; ++v)
        if (need(v) > 0) short_of.push_back(v);
      if (short_of.empty()) return finish();
      if (!repair(short_of)) return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  int& need(Vertex v) { return need_[static_cast<std::size_t>(v)]; }
  char& edge(Vertex u, Vertex v) { return adj_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)]; }
  void add(Vertex u, Vertex v) { edge(u, v) = edge(v, u) = 1, --need(u), --need(v); }
  void remove(Vertex u, Vertex v) { edge(u, v) = edge(v, u) = 0, ++need(u), ++need(v); }

  Vertex random_vertex() { return std::uniform_int_distribution<Vertex>(0, n_ - 1)(rng_); }

  /// One repair move: join two deficient vertices directly, or split an
  /// existing edge (p, q) into (u, p) and (w, q), with w = u when u is short by
  /// two or more.
  bool repair(const std::vector<Vertex>& short_of) {
    std::uniform_int_distribution<std::size_t> pick(0, short_of.size() - 1);
    const Vertex u = short_of[pick(rng_)];
    for (Vertex w : short_of)
      if (w != u && !edge(u, w)) return add(u, w), true;
    std::vector<Vertex> partners;
    for (Vertex w : short_of)
      if (w != u) partners.push_back(w);
    if (need(u) >= 2) partners.push_back(u);
    if (partners.empty()) return false;
    const Vertex w = partners[std::uniform_int_distribution<std::size_t>(0, partners.size() - 1)(rng_)];
    std::vector<std::pair<Vertex, Vertex>> options;
    for (Vertex p = 0; p < n_; ++p)
      for (Vertex q = 0; q < n_; ++q)
        if (p != q && edge(p, q) && p != u && q != w && p != w && q != u && !edge(u, p) && !edge(w, q))
          options.push_back({p, q});
    if (options.empty()) return false;
    auto [p, q] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
    remove(p, q);
    add(u, p);
    add(w, q);
    return true;
  }

  SimpleGraph finish() {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v)
        if (edge(u, v)) edges.push_back({u, v});
    return SimpleGraph(n_, std::move(edges));
  }

  int n_;
  std::mt19937_64& rng_;
  std::vector<char> adj_;
  std::vector<int> need_;
};

}  // namespace detail

/// `count` random simple graphs on n vertices with every degree in [d, d+s].
/// Degree targets are drawn uniformly from [d, min(d+s, n-1)] with the sum
/// made even; each graph is built by random edge addition plus bounded repair
/// swaps. Deterministic for a fixed seed.
inline Corpus sample_dds_graphs(int d, int s, int n, int count, std::uint64_t seed) {
  if (d < 0 || s < 0 || count < 0) throw Error(ErrorKind::InvalidParams, "need d, s, count >= 0");
  if (n < 1) throw Error(ErrorKind::Infeasible, "need at least one vertex");
  if (d >= n) throw Error(ErrorKind::Infeasible, "d = " + std::to_string(d) + " needs more than " + std::to_string(n) + " vertices");
  const int hi = std::min(d + s, n - 1);
  if (d == hi && d % 2 == 1 && n % 2 == 1)
    throw Error(ErrorKind::Infeasible, "odd regular degree on an odd number of vertices");
  Corpus out;
  out.spec = {d, s, n, count, seed};
  std::mt19937_64 rng(seed);
  constexpr int kAttempts = 200;
  constexpr int kMaxSwaps = 1000;
  for (int g = 0; g < count; ++g) {
    std::optional<SimpleGraph> made;
    for (int attempt = 0; attempt < kAttempts && !made; ++attempt) {
      std::vector<int> target(static_cast<std::size_t>(n));
      std::uniform_int_distribution<int> deg(d, hi);
      for (auto& t : target) t = deg(rng);
      if (std::accumulate(target.begin(), target.end(), 0) % 2 != 0) {
        auto it = std::find_if(target.begin(), target.end(), [&](int t) { return t < hi; });
        if (it != target.end()) ++*it;
        else --target.front();
      }
      detail::DegreeSequenceBuilder builder(n, rng);
      made = builder.build(target, kMaxSwaps);
    }
    if (!made) throw Error(ErrorKind::Infeasible, "could not realise a degree sequence after repeated attempts");
    if (!is_dds_graph(*made, d, s)) throw Error(ErrorKind::Infeasible, "generated graph violates degree bounds");
    out.graphs.push_back(std::move(*made));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conformance of feasible_x_set against the oracle.

struct ConformanceCell {
  enum class Category {
    Agree,
    Disagree,
    SideConditionExcluded,  // side condition fails; recorded, not judged
    EndpointWitnessed,      // excluded only by an open endpoint, oracle finds none
    EndpointGraphSpecific,  // excluded only by an open endpoint, this graph has one
  };
  std::size_t graph_index = 0;
  int x = 0;
  int d = 0;
  int s = 0;
  bool member = false;
  bool in_closed_window = false;
  bool side_condition_met = true;
  bool oracle_exists = false;
  Category category = Category::Agree;
};

constexpr const char* to_string(ConformanceCell::Category c) {
  switch (c) {
    case ConformanceCell::Category::Agree: return "agree";
    case ConformanceCell::Category::Disagree: return "disagree";
    case ConformanceCell::Category::SideConditionExcluded: return "side_condition_excluded";
    case ConformanceCell::Category::EndpointWitnessed: return "endpoint_witnessed";
    case ConformanceCell::Category::EndpointGraphSpecific: return "endpoint_graph_specific";
  }
  return "?";
}

struct ConformanceReport {
  int r = 0;
  int a = 0;
  std::vector<ConformanceCell> cells;
  std::size_t graphs_checked = 0;
  std::size_t graphs_skipped = 0;  // graphs with an isolated vertex
  std::int64_t oracle_nodes = 0;

  std::size_t count(ConformanceCell::Category c) const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [&](const auto& cell) { return cell.category == c; }));
  }
  std::size_t disagreements() const { return count(ConformanceCell::Category::Disagree); }
};

/// For every graph and every x in [1, d_max], compares the oracle against
/// feasible_x_set(d_min, d_max - d_min, r, a). A member x without a
/// factorization, or an x outside the closed window [(d+s)/(r+a), d/r] with
/// one, is a disagreement. An x excluded only by an open endpoint is not a
/// per-graph claim and is bucketed separately.
inline ConformanceReport conformance_sweep(const std::vector<SimpleGraph>& graphs, int r, int a,
                                           std::size_t oracle_cap = 30) {
  if (r < 1 || a < 0) throw Error(ErrorKind::InvalidParams, "need r >= 1 and a >= 0");
  using C = ConformanceCell::Category;
  ConformanceReport rep;
  rep.r = r, rep.a = a;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const SimpleGraph& g = graphs[gi];
    const auto prof = degree_profile(g);
    if (prof.d_min < 1) {
      ++rep.graphs_skipped;
      continue;
    }
    ++rep.graphs_checked;
    const int d = prof.d_min, s = prof.d_max - prof.d_min;
    const auto fs = feasible_x_set(d, s, r, a);
    for (int x = 1; x <= prof.d_max; ++x) {
      ConformanceCell cell;
      cell.graph_index = gi, cell.x = x, cell.d = d, cell.s = s;
      cell.member = fs.contains(x);
      cell.side_condition_met = fs.side_condition_met;
      cell.in_closed_window = fs.lower <= x && x <= fs.upper;
      const auto verdict = exists_factorization(g, r, a, x, oracle_cap);
      rep.oracle_nodes += verdict.nodes_explored;
      cell.oracle_exists = verdict.exists;
      if (!fs.side_condition_met) cell.category = C::SideConditionExcluded;
      else if (cell.member) cell.category = verdict.exists ? C::Agree : C::Disagree;
      else if (!cell.in_closed_window) cell.category = verdict.exists ? C::Disagree : C::Agree;
      else cell.category = verdict.exists ? C::EndpointGraphSpecific : C::EndpointWitnessed;
      rep.cells.push_back(cell);
    }
  }
  return rep;
}

}  // namespace factor_forge
