#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "factor_forge/error.hpp"
#include "factor_forge/graph.hpp"

namespace factor_forge {

/// Assignment of a colour in [0, num_colours) to every edge, indexed by EdgeId
/// of the graph it was built for.
struct EdgeColouring {
  int num_colours = 1;
  std::vector<int> colour_of;

  /// |{e incident to v : colour_of(e) = c}|.
  int class_degree(const SimpleGraph& g, Vertex v, int c) const {
    int k = 0;
    for (const auto& inc : g.incident(v))
      if (colour_of[static_cast<std::size_t>(inc.edge)] == c) ++k;
    return k;
  }

  friend bool operator==(const EdgeColouring&, const EdgeColouring&) = default;
};

struct ImbalanceReport {
  int max_pairwise_gap = 0;
  Vertex worst_vertex = -1;
  std::vector<int> per_vertex_gaps;
};

namespace detail {

inline std::vector<int> class_counts(const SimpleGraph& g, const EdgeColouring& col) {
  const auto x = static_cast<std::size_t>(col.num_colours);
  std::vector<int> counts(static_cast<std::size_t>(g.vertex_count()) * x, 0);
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
    const Edge& e = g.edge(id);
    const auto c = static_cast<std::size_t>(col.colour_of[static_cast<std::size_t>(id)]);
    ++counts[static_cast<std::size_t>(e.u) * x + c];
    ++counts[static_cast<std::size_t>(e.v) * x + c];
  }
  return counts;
}

inline void check_colouring_shape(const SimpleGraph& g, const EdgeColouring& col) {
  if (col.num_colours < 1) throw Error(ErrorKind::InvalidFactorCount, "colouring needs at least one colour");
  if (col.colour_of.size() != g.edge_count())
    throw Error(ErrorKind::InvalidParams, "colouring does not cover the edge set");
  for (int c : col.colour_of)
    if (c < 0 || c >= col.num_colours) throw Error(ErrorKind::InvalidParams, "colour index out of range");
}

}  // namespace detail

/// Largest class-size gap at each vertex and overall. Ties for the worst
/// vertex go to the lowest index.
inline ImbalanceReport imbalance(const SimpleGraph& g, const EdgeColouring& col) {
  detail::check_colouring_shape(g, col);
  const auto x = static_cast<std::size_t>(col.num_colours);
  const auto counts = detail::class_counts(g, col);
  ImbalanceReport rep;
  rep.per_vertex_gaps.resize(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto first = counts.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(v) * x);
    auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(x));
    int gap = *hi - *lo;
    rep.per_vertex_gaps[static_cast<std::size_t>(v)] = gap;
    if (rep.worst_vertex < 0 || gap > rep.max_pairwise_gap) {
      rep.max_pairwise_gap = gap;
      rep.worst_vertex = v;
    }
  }
  return rep;
}

/// 2-colouring of the vertices such that every edge crosses, if one exists.
inline std::optional<std::vector<int>> find_bipartition(const SimpleGraph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.vertex_count()), -1);
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (side[static_cast<std::size_t>(s)] >= 0) continue;
    side[static_cast<std::size_t>(s)] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (const auto& inc : g.incident(u)) {
        auto& sw = side[static_cast<std::size_t>(inc.neighbour)];
        if (sw < 0) {
          sw = 1 - side[static_cast<std::size_t>(u)];
          q.push(inc.neighbour);
        } else if (sw == side[static_cast<std::size_t>(u)]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

// ---------------------------------------------------------------------------
// Balancing engine.

struct BalanceOptions {
  std::uint64_t seed = 0;
  int retries = 8;
  std::int64_t steps_per_edge_colour = 10;  // step cap = this * x * |E|
};

namespace detail {

class Balancer {
 public:
  Balancer(const SimpleGraph& g, int x, const std::vector<int>& targets, std::uint64_t seed, bool randomize)
      : g_(g), x_(static_cast<std::size_t>(x)), targets_(targets), rng_(seed), randomize_(randomize) {
    colour_.assign(g.edge_count(), 0);
    counts_.assign(static_cast<std::size_t>(g.vertex_count()) * x_, 0);
    taboo_.assign(static_cast<std::size_t>(g.vertex_count()), {-1, -1});
  }

  const std::vector<int>& colours() const { return colour_; }

  void greedy_start() {
    std::vector<int> best;
    for (EdgeId id = 0; id < static_cast<EdgeId>(g_.edge_count()); ++id) {
      const Edge& e = g_.edge(id);
      int best_load = -1;
      best.clear();
      for (std::size_t c = 0; c < x_; ++c) {
        int load = count(e.u, c) + count(e.v, c);
        if (best_load < 0 || load < best_load) {
          best_load = load;
          best.assign(1, static_cast<int>(c));
        } else if (load == best_load) {
          best.push_back(static_cast<int>(c));
        }
      }
      set_colour(id, pick(best), /*fresh=*/true);
    }
  }

  /// Runs until every vertex meets its target or the step budget is spent.
  bool run(std::int64_t max_steps) {
    std::vector<Vertex> bad;
    for (std::int64_t step = 0; step < max_steps; ++step) {
      bad.clear();
      for (Vertex v = 0; v < g_.vertex_count(); ++v)
        if (violates(v)) bad.push_back(v);
      if (bad.empty()) return true;
      step_at(pick(bad));
    }
    return false;
  }

 private:
  int& count(Vertex v, std::size_t c) { return counts_[static_cast<std::size_t>(v) * x_ + c]; }
  int count(Vertex v, std::size_t c) const { return counts_[static_cast<std::size_t>(v) * x_ + c]; }

  template <class T>
  T pick(const std::vector<T>& options) {
    if (!randomize_ || options.size() == 1) return options.front();
    std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
    return options[dist(rng_)];
  }

  template <class T>
  T pick_any(const std::vector<T>& options) {
    std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
    return options[dist(rng_)];
  }

  void set_colour(EdgeId id, int c, bool fresh = false) {
    const Edge& e = g_.edge(id);
    auto& slot = colour_[static_cast<std::size_t>(id)];
    if (!fresh) {
      --count(e.u, static_cast<std::size_t>(slot));
      --count(e.v, static_cast<std::size_t>(slot));
    }
    slot = c;
    ++count(e.u, static_cast<std::size_t>(c));
    ++count(e.v, static_cast<std::size_t>(c));
  }

  int gap_with(Vertex v, std::size_t a, int ca, std::size_t b, int cb) const {
    int lo = 0, hi = 0;
    for (std::size_t c = 0; c < x_; ++c) {
      int k = c == a ? ca : c == b ? cb : count(v, c);
      if (c == 0 || k < lo) lo = k;
      if (c == 0 || k > hi) hi = k;
    }
    return hi - lo;
  }

  bool violates(Vertex v) const {
    auto [lo, hi] = std::minmax_element(counts_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(v) * x_),
                                        counts_.begin() + static_cast<std::ptrdiff_t>((static_cast<std::size_t>(v) + 1) * x_));
    return *hi - *lo > targets_[static_cast<std::size_t>(v)];
  }

  bool violates_with(Vertex v, std::size_t a, int ca, std::size_t b, int cb) const {
    return gap_with(v, a, ca, b, cb) > targets_[static_cast<std::size_t>(v)];
  }

  /// Colour pair (heavy, light) at v with the largest gap, skipping the pair
  /// most recently rebalanced sideways at v when another choice exists.
  std::pair<std::size_t, std::size_t> choose_pair(Vertex v) {
    int best_gap = -1;
    std::vector<std::pair<std::size_t, std::size_t>> best, fallback;
    const auto tab = taboo_[static_cast<std::size_t>(v)];
    for (std::size_t a = 0; a < x_; ++a)
      for (std::size_t b = 0; b < x_; ++b) {
        int gap = count(v, a) - count(v, b);
        if (gap < 2) continue;
        bool is_taboo = (static_cast<int>(a) == tab.first && static_cast<int>(b) == tab.second) ||
                        (static_cast<int>(a) == tab.second && static_cast<int>(b) == tab.first);
        if (is_taboo) {
          fallback.push_back({a, b});
          continue;
        }
        if (gap > best_gap) {
          best_gap = gap;
          best.assign(1, {a, b});
        } else if (gap == best_gap) {
          best.push_back({a, b});
        }
      }
    return best.empty() ? fallback.front() : pick(best);
  }

  void step_at(Vertex v) {
    const auto [alpha, beta] = choose_pair(v);
    taboo_[static_cast<std::size_t>(v)] = {-1, -1};

    // Component of v in the alpha/beta subgraph.
    std::vector<Vertex> comp;
    std::vector<EdgeId> comp_edges;
    local_.assign(static_cast<std::size_t>(g_.vertex_count()), -1);
    local_[static_cast<std::size_t>(v)] = 0;
    comp.push_back(v);
    for (std::size_t head = 0; head < comp.size(); ++head) {
      Vertex u = comp[head];
      for (const auto& inc : g_.incident(u)) {
        const auto c = static_cast<std::size_t>(colour_[static_cast<std::size_t>(inc.edge)]);
        if (c != alpha && c != beta) continue;
        if (u < inc.neighbour) comp_edges.push_back(inc.edge);
        auto& slot = local_[static_cast<std::size_t>(inc.neighbour)];
        if (slot < 0) {
          slot = static_cast<int>(comp.size());
          comp.push_back(inc.neighbour);
        }
      }
    }
    std::vector<int> sub_degree(comp.size(), 0);
    for (EdgeId id : comp_edges) {
      ++sub_degree[static_cast<std::size_t>(local_[static_cast<std::size_t>(g_.edge(id).u)])];
      ++sub_degree[static_cast<std::size_t>(local_[static_cast<std::size_t>(g_.edge(id).v)])];
    }
    std::vector<int> odd;
    for (std::size_t i = 0; i < comp.size(); ++i)
      if (sub_degree[i] % 2 == 1) odd.push_back(static_cast<int>(i));

    if (!odd.empty() || comp_edges.size() % 2 == 0) {
      // Every vertex ends within one of balance in this pair.
      int start = odd.empty() ? 0 : static_cast<int>(comp.size());
      recolour_along_tour(comp, comp_edges, odd, start, alpha, beta);
      return;
    }

    // Closed trail of odd length: the start vertex keeps a gap of two in the
    // pair. Pick the start (and which colour it favours) by the progress
    // measure (violations, sum of squared class sizes) restricted to comp.
    int cur_viol = 0;
    std::int64_t cur_sq = 0;
    int base_viol = 0;
    std::int64_t new_sq = 2;
    std::vector<char> viol_balanced(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      Vertex u = comp[i];
      int ca = count(u, alpha), cb = count(u, beta);
      cur_viol += violates(u) ? 1 : 0;
      cur_sq += std::int64_t{ca} * ca + std::int64_t{cb} * cb;
      int sa = (ca + cb) / 2;
      viol_balanced[i] = violates_with(u, alpha, sa, beta, sa) ? 1 : 0;
      base_viol += viol_balanced[i];
      new_sq += 2 * std::int64_t{sa} * sa;
    }
    struct Candidate {
      int index;
      bool favour_alpha;
      int viol;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (sub_degree[i] == 0) continue;
      Vertex u = comp[i];
      int sa = (count(u, alpha) + count(u, beta)) / 2;
      for (bool fav : {true, false}) {
        int ca = fav ? sa + 1 : sa - 1, cb = fav ? sa - 1 : sa + 1;
        int viol = base_viol - viol_balanced[i] + (violates_with(u, alpha, ca, beta, cb) ? 1 : 0);
        cands.push_back({static_cast<int>(i), fav, viol});
      }
    }
    int best_viol = cands.front().viol;
    for (const auto& c : cands) best_viol = std::min(best_viol, c.viol);
    std::vector<Candidate> best;
    const bool improves = best_viol < cur_viol || (best_viol == cur_viol && new_sq < cur_sq);
    for (const auto& c : cands)
      if (c.viol == best_viol && (improves || c.index != 0)) best.push_back(c);
    if (best.empty()) best = cands;
    if (!improves) {
      // Sideways: prefer a start that has a third colour off balance so the
      // next step there can use a different pair.
      std::vector<Candidate> spread;
      for (const auto& c : best)
        if (third_colour_off(comp[static_cast<std::size_t>(c.index)], alpha, beta)) spread.push_back(c);
      if (!spread.empty()) best = std::move(spread);
    }
    // Sideways moves draw from the seeded generator even on the first attempt
    // so that repeated moves do not cycle.
    Candidate chosen = improves ? pick(best) : pick_any(best);
    recolour_along_tour(comp, comp_edges, {}, chosen.index, chosen.favour_alpha ? alpha : beta,
                        chosen.favour_alpha ? beta : alpha);
    if (!improves)
      taboo_[static_cast<std::size_t>(comp[static_cast<std::size_t>(chosen.index)])] = {static_cast<int>(alpha),
                                                                                        static_cast<int>(beta)};
  }

  bool third_colour_off(Vertex u, std::size_t alpha, std::size_t beta) const {
    int ref = (count(u, alpha) + count(u, beta)) / 2;
    for (std::size_t c = 0; c < x_; ++c)
      if (c != alpha && c != beta && count(u, c) != ref) return true;
    return false;
  }

  /// Euler tour of the component (plus a dummy vertex joined to every odd
  /// vertex when `odd` is non-empty) from local vertex `start`, colouring the
  /// real edges first, second, first, ... in tour order.
  void recolour_along_tour(const std::vector<Vertex>& comp, const std::vector<EdgeId>& comp_edges,
                           const std::vector<int>& odd, int start, std::size_t first, std::size_t second) {
    const std::size_t nv = comp.size() + (odd.empty() ? 0 : 1);
    const int dummy = static_cast<int>(comp.size());
    const std::size_t real = comp_edges.size();
    std::vector<std::pair<int, int>> ends(real + odd.size());
    for (std::size_t i = 0; i < real; ++i) {
      const Edge& e = g_.edge(comp_edges[i]);
      ends[i] = {local_[static_cast<std::size_t>(e.u)], local_[static_cast<std::size_t>(e.v)]};
    }
    for (std::size_t j = 0; j < odd.size(); ++j) ends[real + j] = {dummy, odd[j]};
    std::vector<std::vector<int>> adj(nv);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      adj[static_cast<std::size_t>(ends[i].first)].push_back(static_cast<int>(i));
      adj[static_cast<std::size_t>(ends[i].second)].push_back(static_cast<int>(i));
    }
    std::vector<char> used(ends.size(), 0);
    std::vector<std::size_t> ptr(nv, 0);
    std::vector<int> tour;
    tour.reserve(ends.size());
    std::vector<std::pair<int, int>> stack{{start, -1}};
    while (!stack.empty()) {
      auto [u, via] = stack.back();
      auto& p = ptr[static_cast<std::size_t>(u)];
      const auto& list = adj[static_cast<std::size_t>(u)];
      while (p < list.size() && used[static_cast<std::size_t>(list[p])]) ++p;
      if (p == list.size()) {
        stack.pop_back();
        if (via >= 0) tour.push_back(via);
        continue;
      }
      int e = list[p];
      used[static_cast<std::size_t>(e)] = 1;
      const auto& en = ends[static_cast<std::size_t>(e)];
      stack.push_back({en.first == u ? en.second : en.first, e});
    }
    for (std::size_t i = 0; i < tour.size(); ++i) {
      auto e = static_cast<std::size_t>(tour[i]);
      if (e >= real) continue;
      set_colour(comp_edges[e], static_cast<int>(i % 2 == 0 ? first : second));
    }
  }

  const SimpleGraph& g_;
  std::size_t x_;
  const std::vector<int>& targets_;
  std::mt19937_64 rng_;
  bool randomize_;
  std::vector<int> colour_;
  std::vector<int> counts_;
  std::vector<int> local_;
  std::vector<std::pair<int, int>> taboo_;
};

}  // namespace detail

/// Colours the edges with x colours so that the class-size gap at every vertex
/// v is at most targets[v] (each target >= 1). The first attempt is fully
/// deterministic; later attempts randomise tie-breaking from `opt.seed`.
/// Throws BalancingFailed once every attempt has spent its step budget.
inline EdgeColouring balance_colouring(const SimpleGraph& g, int x, const std::vector<int>& targets,
                                       const BalanceOptions& opt = {}) {
  if (x < 1) throw Error(ErrorKind::InvalidFactorCount, "need at least one colour");
  if (targets.size() != static_cast<std::size_t>(g.vertex_count()))
    throw Error(ErrorKind::InvalidParams, "one target per vertex required");
  for (int t : targets)
    if (t < 1) throw Error(ErrorKind::InvalidParams, "targets must be >= 1");
  const std::int64_t budget =
      std::max<std::int64_t>(1, opt.steps_per_edge_colour * x * static_cast<std::int64_t>(g.edge_count()));
  for (int attempt = 0; attempt < std::max(1, opt.retries); ++attempt) {
    detail::Balancer b(g, x, targets, opt.seed + static_cast<std::uint64_t>(attempt), attempt > 0);
    b.greedy_start();
    if (!b.run(budget)) continue;
    EdgeColouring col{x, b.colours()};
    const auto rep = imbalance(g, col);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (rep.per_vertex_gaps[static_cast<std::size_t>(v)] > targets[static_cast<std::size_t>(v)])
        throw Error(ErrorKind::BalancingFailed, "engine returned an unbalanced colouring");
    return col;
  }
  throw Error(ErrorKind::BalancingFailed, "no balanced " + std::to_string(x) + "-colouring after " +
                                              std::to_string(std::max(1, opt.retries)) + " attempts");
}

/// Equitable x-colouring of a bipartite graph: gap <= 1 at every vertex.
/// `side[v]` in {0, 1} must put the two ends of every edge on opposite sides.
inline EdgeColouring equitable_colour_bipartite(const SimpleGraph& g, const std::vector<int>& side, int x,
                                                const BalanceOptions& opt = {}) {
  if (side.size() != static_cast<std::size_t>(g.vertex_count()))
    throw Error(ErrorKind::NotBipartite, "bipartition size does not match vertex count");
  for (int s : side)
    if (s != 0 && s != 1) throw Error(ErrorKind::NotBipartite, "bipartition labels must be 0 or 1");
  for (const Edge& e : g.edges())
    if (side[static_cast<std::size_t>(e.u)] == side[static_cast<std::size_t>(e.v)])
      throw Error(ErrorKind::NotBipartite,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") inside one side");
  return balance_colouring(g, x, std::vector<int>(static_cast<std::size_t>(g.vertex_count()), 1), opt);
}

/// Gap <= 1 at vertices with x not dividing d(v), gap <= 2 elsewhere. Requires
/// that no two adjacent vertices both have degree divisible by x.
inline EdgeColouring equitable_colour_simple(const SimpleGraph& g, int x, const BalanceOptions& opt = {}) {
  if (x < 1) throw Error(ErrorKind::InvalidFactorCount, "need at least one colour");
  for (const Edge& e : g.edges())
    if (g.degree(e.u) % x == 0 && g.degree(e.v) % x == 0)
      throw ConditionViolated(e.u, e.v,
                              "adjacent vertices " + std::to_string(e.u) + " and " + std::to_string(e.v) +
                                  " both have degree divisible by " + std::to_string(x));
  std::vector<int> targets(static_cast<std::size_t>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) targets[static_cast<std::size_t>(v)] = g.degree(v) % x == 0 ? 2 : 1;
  return balance_colouring(g, x, targets, opt);
}

}  // namespace factor_forge
