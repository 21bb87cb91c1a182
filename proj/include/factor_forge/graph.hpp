#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "factor_forge/error.hpp"

namespace factor_forge {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbour;
  EdgeId edge;
};

/// Undirected simple graph on vertices 0..n-1. Edges are stored canonically
/// (u < v) in sorted order; an edge's index in that order is its EdgeId and is
/// what colourings and factorizations are keyed by. Immutable after
/// construction.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Throws InvalidGraph on a loop, a repeated pair or an endpoint outside
  /// [0, n). Edge orientation in the input is irrelevant.
  SimpleGraph(Vertex vertex_count, std::vector<Edge> edges, std::vector<std::string> labels = {})
      : n_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ < 0) throw Error(ErrorKind::InvalidGraph, "negative vertex count");
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n_))
      throw Error(ErrorKind::InvalidGraph, "label count does not match vertex count");
    for (auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
        throw Error(ErrorKind::InvalidGraph,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
      if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loop at " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw Error(ErrorKind::InvalidGraph,
                  "parallel edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
    incidence_.assign(static_cast<std::size_t>(n_), {});
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
      const Edge& e = edges_[static_cast<std::size_t>(id)];
      incidence_[static_cast<std::size_t>(e.u)].push_back({e.v, id});
      incidence_[static_cast<std::size_t>(e.v)].push_back({e.u, id});
    }
    for (auto& list : incidence_)
      std::sort(list.begin(), list.end(),
                [](const Incidence& a, const Incidence& b) { return a.neighbour < b.neighbour; });
  }

  Vertex vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }

  std::span<const Incidence> incident(Vertex v) const { return incidence_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(incidence_[static_cast<std::size_t>(v)].size()); }

  bool adjacent(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }

  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    Edge key{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Labels are decoration and do not take part in equality.
  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Incidence>> incidence_;
};

struct DegreeProfile {
  int d_min = 0;
  int d_max = 0;

  friend constexpr bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

inline DegreeProfile degree_profile(const SimpleGraph& g) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  DegreeProfile p{g.degree(0), g.degree(0)};
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    p.d_min = std::min(p.d_min, g.degree(v));
    p.d_max = std::max(p.d_max, g.degree(v));
  }
  return p;
}

/// True iff every degree lies in [d, d+s].
inline bool is_dds_graph(const SimpleGraph& g, int d, int s) {
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < d || g.degree(v) > d + s) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Edge-list text format:
//   n m
//   u v      (m lines)
// '#' starts a comment line; blank lines are skipped.

namespace detail {

inline std::vector<long long> parse_ints(std::string_view line, std::size_t line_no) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc{} || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r'))
      throw ParseError(line_no, "malformed token in '" + std::string(line) + "'");
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

/// Calls `fn(line_no, ints)` for every non-blank, non-comment line.
template <class Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') fn(line_no, parse_ints(line, line_no));
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace detail

inline SimpleGraph read_graph(std::string_view text) {
  std::optional<std::pair<long long, long long>> header;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  detail::for_each_record(text, [&](std::size_t line_no, const std::vector<long long>& ints) {
    if (ints.size() != 2) throw ParseError(line_no, "expected two integers");
    if (!header) {
      if (ints[0] < 1 || ints[1] < 0) throw ParseError(line_no, "header needs n >= 1 and m >= 0");
      header = {ints[0], ints[1]};
      return;
    }
    long long n = header->first;
    if (ints[0] < 0 || ints[1] < 0 || ints[0] >= n || ints[1] >= n)
      throw ParseError(line_no, "vertex index out of range [0, " + std::to_string(n) + ")");
    if (ints[0] == ints[1]) throw ParseError(line_no, "self-loop at vertex " + std::to_string(ints[0]));
    edges.push_back({static_cast<Vertex>(std::min(ints[0], ints[1])), static_cast<Vertex>(std::max(ints[0], ints[1]))});
    edge_lines.push_back(line_no);
  });
  if (!header) throw ParseError(1, "missing 'n m' header");
  if (static_cast<long long>(edges.size()) != header->second)
    throw ParseError(edge_lines.empty() ? 1 : edge_lines.back(),
                     "header declares " + std::to_string(header->second) + " edges, found " +
                         std::to_string(edges.size()));
  // Report duplicates against the line that repeats an earlier pair.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (edges[order[i]] == edges[order[i - 1]])
      throw ParseError(edge_lines[std::max(order[i], order[i - 1])],
                       "duplicate edge " + std::to_string(edges[order[i]].u) + " " + std::to_string(edges[order[i]].v));
  return SimpleGraph(static_cast<Vertex>(header->first), std::move(edges));
}

inline std::string write_graph(const SimpleGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Small named graphs used as fixtures throughout.

namespace graphs {

inline SimpleGraph cycle(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
  return SimpleGraph(n, std::move(edges));
}

inline SimpleGraph path(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, static_cast<Vertex>(i + 1)});
  return SimpleGraph(n, std::move(edges));
}

inline SimpleGraph complete(Vertex n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  return SimpleGraph(n, std::move(edges));
}

/// Parts are {0..p-1} and {p..p+q-1}.
inline SimpleGraph complete_bipartite(Vertex p, Vertex q) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < p; ++i)
    for (Vertex j = 0; j < q; ++j) edges.push_back({i, static_cast<Vertex>(p + j)});
  return SimpleGraph(p + q, std::move(edges));
}

/// Centre 0 joined to leaves 1..k.
inline SimpleGraph star(Vertex k) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= k; ++i) edges.push_back({0, i});
  return SimpleGraph(k + 1, std::move(edges));
}

inline SimpleGraph petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    edges.push_back({i, static_cast<Vertex>(i + 5)});
    edges.push_back({static_cast<Vertex>(i + 5), static_cast<Vertex>((i + 2) % 5 + 5)});
  }
  return SimpleGraph(10, std::move(edges));
}

inline SimpleGraph cube() {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 8; ++v)
    for (Vertex bit = 1; bit < 8; bit <<= 1)
      if ((v ^ bit) > v) edges.push_back({v, static_cast<Vertex>(v ^ bit)});
  return SimpleGraph(8, std::move(edges));
}

/// Circulant graph on n vertices joining i to i±k for every k in `jumps`.
inline SimpleGraph circulant(Vertex n, std::span<const Vertex> jumps) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex k : jumps) {
      Vertex j = static_cast<Vertex>((i + k) % n);
      Edge e{std::min(i, j), std::max(i, j)};
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
  return SimpleGraph(n, std::move(edges));
}

}  // namespace graphs

}  // namespace factor_forge
