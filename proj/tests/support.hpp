#pragma once

// Test-only reference implementations. Each is written from the definitions
// directly and shares no code with the library routine it checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "factor_forge/graph.hpp"

namespace ff_test {

using factor_forge::Edge;
using factor_forge::SimpleGraph;
using factor_forge::Vertex;

/// Window membership by cross-multiplied comparisons only.
/// `open_lo`/`open_hi` select strict inequalities at the two ends.
inline bool in_window(std::int64_t d, std::int64_t s, std::int64_t r, std::int64_t a, std::int64_t x, bool open_lo,
                      bool open_hi) {
  // lower: (d+s)/(r+a) vs x  <=>  d+s vs x(r+a)
  const bool lo_ok = open_lo ? (d + s < x * (r + a)) : (d + s <= x * (r + a));
  // upper: x vs d/r  <=>  x r vs d
  const bool hi_ok = open_hi ? (x * r < d) : (x * r <= d);
  return lo_ok && hi_ok;
}

/// Admissible factor counts at degree d, rebuilt from the case table:
/// endpoint openness and side condition per parity, plus the single-factor
/// rule when the side condition fails.
inline std::vector<std::int64_t> members_direct(std::int64_t d, std::int64_t s, std::int64_t r, std::int64_t a) {
  const bool r_odd = r % 2 != 0, a_odd = a % 2 != 0;
  bool open_lo = false, open_hi = false, side = true;
  if (!r_odd && !a_odd) {
  } else if (r_odd && !a_odd) {
    open_lo = open_hi = true;
    side = d > r && d > r + s - a;
  } else if (!r_odd && a_odd) {
    open_lo = true;
    side = d > r + a - s;
  } else {
    open_hi = true;
    side = d > r;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t x = 1; x <= d; ++x) {
    bool ok = in_window(d, s, r, a, x, open_lo, open_hi);
    if (!side && x == 1 && r <= d && d + s <= r + a) ok = true;
    if (ok) out.push_back(x);
  }
  return out;
}

/// Least d0 such that every d in [d0, cap] has at least t admissible counts:
/// one past the last failing d found by an upward scan over [1, cap].
inline std::optional<std::int64_t> sigma_direct(std::int64_t r, std::int64_t s, std::int64_t a, std::int64_t t,
                                                std::int64_t cap) {
  std::int64_t last_fail = 0;
  for (std::int64_t d = 1; d <= cap; ++d)
    if (static_cast<std::int64_t>(members_direct(d, s, r, a).size()) < t) last_fail = d;
  if (last_fail == cap) return std::nullopt;
  return last_fail + 1;
}

/// Plain enumeration of all x^m assignments. Only for tiny graphs.
inline bool factorization_exists_naive(const SimpleGraph& g, int r, int a, int x) {
  const std::size_t m = g.edge_count();
  std::vector<int> assign(m, 0);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  while (true) {
    std::vector<int> deg(n * static_cast<std::size_t>(x), 0);
    for (std::size_t i = 0; i < m; ++i) {
      const Edge& e = g.edges()[i];
      ++deg[static_cast<std::size_t>(e.u) * static_cast<std::size_t>(x) + static_cast<std::size_t>(assign[i])];
      ++deg[static_cast<std::size_t>(e.v) * static_cast<std::size_t>(x) + static_cast<std::size_t>(assign[i])];
    }
    bool ok = true;
    for (int d : deg)
      if (d < r || d > r + a) ok = false;
    if (ok) return true;
    std::size_t i = 0;
    while (i < m && ++assign[i] == x) assign[i++] = 0;
    if (i == m) return false;
  }
}

/// Every labelled graph on n vertices (n <= 6) passing `keep`.
inline std::vector<SimpleGraph> all_graphs(int n, const std::function<bool(const SimpleGraph&)>& keep) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  std::vector<SimpleGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask & (1u << i)) edges.push_back(pairs[i]);
    SimpleGraph g(n, std::move(edges));
    if (keep(g)) out.push_back(std::move(g));
  }
  return out;
}

/// Keeps one representative per isomorphism class (brute-force canonical
/// form; fine for n <= 7).
inline std::vector<SimpleGraph> up_to_isomorphism(const std::vector<SimpleGraph>& graphs) {
  std::vector<std::vector<Edge>> seen;
  std::vector<SimpleGraph> out;
  for (const auto& g : graphs) {
    const int n = g.vertex_count();
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::optional<std::vector<Edge>> best;
    do {
      std::vector<Edge> mapped;
      for (const Edge& e : g.edges()) {
        Vertex u = perm[static_cast<std::size_t>(e.u)], v = perm[static_cast<std::size_t>(e.v)];
        mapped.push_back({std::min(u, v), std::max(u, v)});
      }
      std::sort(mapped.begin(), mapped.end());
      if (!best || mapped < *best) best = mapped;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::find(seen.begin(), seen.end(), *best) == seen.end()) {
      seen.push_back(*best);
      out.push_back(g);
    }
  }
  return out;
}

inline SimpleGraph with_pendant_at(const SimpleGraph& g, Vertex v) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.push_back({v, g.vertex_count()});
  return SimpleGraph(g.vertex_count() + 1, std::move(edges));
}

}  // namespace ff_test
