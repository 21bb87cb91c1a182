#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factor_forge/error.hpp"
#include "factor_forge/graph.hpp"

namespace factor_forge {

// ---------------------------------------------------------------------------
// Regular graphs with no factorization at the upper end of the window.

namespace detail {

/// K_{k+2} minus the two edges at a centre and minus a perfect matching on the
/// k-1 vertices outside the removed path; k odd. Vertex `offset` is the
/// centre (degree k-1), the rest have degree k.
inline void append_bridged_half(std::vector<Edge>& edges, Vertex offset, int k) {
  const Vertex size = k + 2;
  auto removed = [&](Vertex i, Vertex j) {
    if (i == 0 && (j == 1 || j == 2)) return true;          // path 1-0-2
    if (i >= 3 && j == i + 1 && (i - 3) % 2 == 0) return true;  // matching 3-4, 5-6, ...
    return false;
  };
  for (Vertex i = 0; i < size; ++i)
    for (Vertex j = i + 1; j < size; ++j)
      if (!removed(i, j)) edges.push_back({static_cast<Vertex>(offset + i), static_cast<Vertex>(offset + j)});
}

/// k-regular graph with no k/q-factorization into q-regular pieces for odd q:
/// K_{k+1} when k is even, else two bridged halves.
inline SimpleGraph odd_obstruction(int k) {
  if (k % 2 == 0) return graphs::complete(k + 1);
  std::vector<Edge> edges;
  append_bridged_half(edges, 0, k);
  append_bridged_half(edges, k + 2, k);
  edges.push_back({0, static_cast<Vertex>(k + 2)});
  return SimpleGraph(2 * (k + 2), std::move(edges));
}

}  // namespace detail

/// d-regular graph with no (r, r+a)-factorization into d/r factors, for odd r
/// with r | d and d/r >= 2. Odd d gives a bridged graph on 2(d+2) vertices,
/// even d gives K_{d+1}.
inline SimpleGraph gen_lemma14_regular(int d, int r) {
  if (r < 1 || r % 2 == 0) throw Error(ErrorKind::InvalidParams, "r must be odd and positive");
  if (d < 1 || d % r != 0) throw Error(ErrorKind::InvalidParams, "r must divide d");
  if (d / r < 2) throw Error(ErrorKind::InvalidParams, "x = d/r must be at least 2");
  return detail::odd_obstruction(d);
}

/// dps-regular graph with no (r, r+a)-factorization into dps/(r+a) factors,
/// for odd r+a dividing dps with quotient >= 2. Even dps gives K_{dps+1}.
inline SimpleGraph gen_lemma14_topend(int dps, int r, int a) {
  if (r < 1 || a < 0) throw Error(ErrorKind::InvalidParams, "need r >= 1 and a >= 0");
  if ((r + a) % 2 == 0) throw Error(ErrorKind::InvalidParams, "r + a must be odd");
  if (dps < 1 || dps % (r + a) != 0) throw Error(ErrorKind::InvalidParams, "r + a must divide d + s");
  if (dps / (r + a) < 2) throw Error(ErrorKind::InvalidParams, "x = (d+s)/(r+a) must be at least 2");
  return detail::odd_obstruction(dps);
}

// ---------------------------------------------------------------------------
// Boundary graphs: (d+s)/(r+a) = x = d/r.

struct CountingCertificate {
  std::int64_t total_edges = 0;
  std::int64_t per_factor_lower_bound = 0;  // ceil(B/2), B = least degree sum of one factor
  std::int64_t aggregate_lower_bound = 0;   // least total edge count over x factors
  std::int64_t contradiction_margin = 0;    // aggregate - total, positive when valid
  std::int64_t odd_factors = 0;             // factors forced to an odd base degree sum
};

struct BoundaryInstance {
  std::string family;
  SimpleGraph graph;
  int r = 0, s = 0, a = 0, d = 0, x = 0;
  std::vector<Vertex> part_m;
  std::vector<Vertex> part_n;
  std::vector<Edge> h_edges;
  std::vector<int> expected_degrees;
  bool outside_stated_hypothesis = false;
  std::optional<CountingCertificate> certificate;
};

/// Handshake argument. At vertex v every factor has degree in
/// [lo_v, hi_v] = [max(r, d_v-(x-1)(r+a)), min(r+a, d_v-(x-1)r)]. Each factor
/// therefore has degree sum B + e_i with B = sum lo_v, 0 <= e_i <= sum(hi_v-lo_v)
/// and sum e_i = sum(d_v - x lo_v). Factors whose sum is forced odd need half
/// an edge more than they can have; their least number j gives
/// sum |E(F_i)| >= |E| + j/2.
inline CountingCertificate counting_certificate(const BoundaryInstance& inst) {
  const SimpleGraph& g = inst.graph;
  if (inst.expected_degrees.size() != static_cast<std::size_t>(g.vertex_count()))
    throw Error(ErrorKind::DegreeSpectrumMismatch, "expected degree list has the wrong length");
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != inst.expected_degrees[static_cast<std::size_t>(v)])
      throw Error(ErrorKind::DegreeSpectrumMismatch,
                  "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) + ", expected " +
                      std::to_string(inst.expected_degrees[static_cast<std::size_t>(v)]));
  const std::int64_t r = inst.r, top = inst.r + inst.a, x = inst.x;
  if (x < 1) throw Error(ErrorKind::InvalidParams, "x must be >= 1");
  std::int64_t base = 0, excess = 0, capacity = 0;
  bool window_empty = false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::int64_t dv = g.degree(v);
    const std::int64_t lo = std::max(r, dv - (x - 1) * top);
    const std::int64_t hi = std::min(top, dv - (x - 1) * r);
    if (lo > hi) window_empty = true;
    base += lo;
    excess += dv - x * lo;
    capacity += hi - lo;
  }
  // Most factors that can take an excess with the parity of `base`.
  std::int64_t odd = x;
  if (!window_empty && excess >= 0) {
    const std::int64_t good_min = base % 2;
    const std::int64_t good_max = capacity - ((capacity - good_min) % 2 + 2) % 2;
    const std::int64_t bad_min = 1 - good_min;
    const std::int64_t bad_max = capacity - ((capacity - bad_min) % 2 + 2) % 2;
    for (std::int64_t k = x; k >= 0; --k) {
      const std::int64_t bad = x - k;
      if (k > 0 && good_min > good_max) continue;
      if (bad > 0 && bad_min > bad_max) continue;
      const std::int64_t lo_sum = k * good_min + bad * bad_min;
      const std::int64_t hi_sum = k * (k > 0 ? good_max : 0) + bad * (bad > 0 ? bad_max : 0);
      if (excess < lo_sum || excess > hi_sum || (excess - lo_sum) % 2 != 0) continue;
      odd = bad;
      break;
    }
  }
  CountingCertificate cert;
  cert.total_edges = static_cast<std::int64_t>(g.edge_count());
  cert.per_factor_lower_bound = (base + 1) / 2;
  cert.odd_factors = odd;
  cert.aggregate_lower_bound = (2 * cert.total_edges + odd + 1) / 2;
  cert.contradiction_margin = cert.aggregate_lower_bound - cert.total_edges;
  if (cert.contradiction_margin <= 0)
    throw Error(ErrorKind::CertificateFailed, "edge count " + std::to_string(cert.total_edges) +
                                                  " is not below the aggregate bound " +
                                                  std::to_string(cert.aggregate_lower_bound));
  return cert;
}

namespace detail {

/// First `count` pairs of {0..size-1} in lexicographic order.
inline std::vector<std::pair<int, int>> lex_pairs(int size, std::int64_t count) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size && static_cast<std::int64_t>(out.size()) < count; ++i)
    for (int j = i + 1; j < size && static_cast<std::int64_t>(out.size()) < count; ++j) out.push_back({i, j});
  return out;
}

/// One entry per label: the H vertex that carries it. H vertex i takes the
/// next d_H(i) labels in order.
inline std::vector<int> label_slots(int size, const std::vector<std::pair<int, int>>& h) {
  std::vector<int> deg(static_cast<std::size_t>(size), 0);
  for (auto [i, j] : h) ++deg[static_cast<std::size_t>(i)], ++deg[static_cast<std::size_t>(j)];
  std::vector<int> slots;
  for (int i = 0; i < size; ++i)
    for (int k = 0; k < deg[static_cast<std::size_t>(i)]; ++k) slots.push_back(i);
  return slots;
}

inline void check_boundary_params(int r, int s, int a, int x) {
  if (x < 2) throw Error(ErrorKind::InvalidParams, "x must be >= 2");
  if (s != x * a)
    throw Error(ErrorKind::InvalidParams, "boundary identity needs s = x*a (got s=" + std::to_string(s) +
                                              ", x*a=" + std::to_string(x * a) + ")");
  if (r < 1 || a < 1) throw Error(ErrorKind::InvalidParams, "need r >= 1 and a >= 1");
}

inline void finish_instance(BoundaryInstance& inst, std::vector<Edge> edges, std::vector<std::string> labels) {
  const auto n = static_cast<Vertex>(labels.size());
  inst.graph = SimpleGraph(n, std::move(edges), std::move(labels));
  for (Vertex v = 0; v < n; ++v)
    if (inst.graph.degree(v) != inst.expected_degrees[static_cast<std::size_t>(v)])
      throw Error(ErrorKind::ConstructionFailed, "generator produced degree " + std::to_string(inst.graph.degree(v)) +
                                                     " at vertex " + std::to_string(v));
  inst.certificate = counting_certificate(inst);
}

}  // namespace detail

/// r even, a odd. M has xr+1 vertices and carries H; N has x(r+a) vertices,
/// each joined to all of M except the H vertex holding its label. For odd x
/// the last N vertex is unlabelled and joined to all of M.
inline BoundaryInstance gen_boundary_EO(int r, int s, int a, int x) {
  detail::check_boundary_params(r, s, a, x);
  if (r % 2 != 0 || a % 2 != 1) throw Error(ErrorKind::InvalidParams, "EO family needs r even and a odd");
  BoundaryInstance inst;
  inst.family = "EO";
  inst.r = r, inst.s = s, inst.a = a, inst.x = x, inst.d = x * r;
  inst.outside_stated_hypothesis = a < 3;
  const int m = x * r + 1;
  const int n = x * (r + a);
  const std::int64_t h_size = x % 2 == 0 ? n / 2 : (n - 1) / 2;
  if (std::int64_t{m} * (m - 1) / 2 < h_size)
    throw Error(ErrorKind::InfeasibleParams, "no room for " + std::to_string(h_size) + " edges of H on " +
                                                 std::to_string(m) + " vertices");
  const auto h = detail::lex_pairs(m, h_size);
  const auto slots = detail::label_slots(m, h);  // slot j = label of N vertex j
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) inst.part_m.push_back(i), labels.push_back("m" + std::to_string(i));
  for (int j = 0; j < n; ++j) inst.part_n.push_back(m + j), labels.push_back("n" + std::to_string(j));
  for (auto [i, j] : h) {
    edges.push_back({i, j});
    inst.h_edges.push_back({i, j});
  }
  for (int j = 0; j < n; ++j) {
    const int mate = j < static_cast<int>(slots.size()) ? slots[static_cast<std::size_t>(j)] : -1;
    for (int i = 0; i < m; ++i)
      if (i != mate) edges.push_back({i, m + j});
  }
  inst.expected_degrees.assign(static_cast<std::size_t>(m), n);
  for (int j = 0; j < n; ++j) inst.expected_degrees.push_back(j < static_cast<int>(slots.size()) ? m - 1 : m);
  detail::finish_instance(inst, std::move(edges), std::move(labels));
  return inst;
}

/// r odd, a odd. M has xr vertices, N has x(r+a)+1 vertices and carries H;
/// each M vertex is joined to all of N except the H vertex holding its label.
/// For odd x the last M vertex holds two labels on distinct H vertices.
inline BoundaryInstance gen_boundary_OO(int r, int s, int a, int x) {
  detail::check_boundary_params(r, s, a, x);
  if (r % 2 != 1 || a % 2 != 1) throw Error(ErrorKind::InvalidParams, "OO family needs r odd and a odd");
  BoundaryInstance inst;
  inst.family = "OO";
  inst.r = r, inst.s = s, inst.a = a, inst.x = x, inst.d = x * r;
  inst.outside_stated_hypothesis = a < 3;
  const int m = x * r;
  const int n = x * (r + a) + 1;
  const std::int64_t h_size = m % 2 == 0 ? m / 2 : (m + 1) / 2;
  if (std::int64_t{n} * (n - 1) / 2 < h_size)
    throw Error(ErrorKind::InfeasibleParams, "no room for " + std::to_string(h_size) + " edges of H on " +
                                                 std::to_string(n) + " vertices");
  const auto h = detail::lex_pairs(n, h_size);
  const auto slots = detail::label_slots(n, h);
  // owner[k] = M vertex holding label k.
  std::vector<int> owner(slots.size());
  if (m % 2 == 0) {
    for (std::size_t k = 0; k < slots.size(); ++k) owner[k] = static_cast<int>(k);
  } else {
    const std::size_t last = slots.size() - 1;
    std::size_t partner = last;
    while (partner > 0 && slots[partner - 1] == slots[last]) --partner;
    if (partner == 0) throw Error(ErrorKind::InfeasibleParams, "H has a single labelled vertex");
    --partner;
    int next = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) owner[k] = (k == last || k == partner) ? m - 1 : next++;
  }
  std::vector<std::vector<int>> mates(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < slots.size(); ++k) mates[static_cast<std::size_t>(owner[k])].push_back(slots[k]);

  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) inst.part_m.push_back(i), labels.push_back("m" + std::to_string(i));
  for (int j = 0; j < n; ++j) inst.part_n.push_back(m + j), labels.push_back("n" + std::to_string(j));
  for (auto [i, j] : h) {
    edges.push_back({m + i, m + j});
    inst.h_edges.push_back({m + i, m + j});
  }
  for (int i = 0; i < m; ++i) {
    const auto& own = mates[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j)
      if (std::find(own.begin(), own.end(), j) == own.end()) edges.push_back({i, m + j});
  }
  for (int i = 0; i < m; ++i)
    inst.expected_degrees.push_back(n - static_cast<int>(mates[static_cast<std::size_t>(i)].size()));
  inst.expected_degrees.insert(inst.expected_degrees.end(), static_cast<std::size_t>(n), m);
  detail::finish_instance(inst, std::move(edges), std::move(labels));
  return inst;
}

}  // namespace factor_forge
