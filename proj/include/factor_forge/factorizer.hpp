#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "factor_forge/colouring.hpp"
#include "factor_forge/error.hpp"
#include "factor_forge/graph.hpp"

namespace factor_forge {

/// Edge-to-factor assignment for a specific graph, indexed by EdgeId. A value
/// of -1 marks an edge the source left unassigned.
struct Factorization {
  int x = 1;
  int r = 0;
  int a = 0;
  std::vector<int> factor_of;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct FactorViolation {
  enum class Kind { WrongSize, Unassigned, FactorOutOfRange, DegreeTooLow, DegreeTooHigh };
  Kind kind;
  int factor = -1;
  Vertex vertex = -1;
  EdgeId edge = -1;
  int degree = 0;
  std::string message;
};

struct VerificationReport {
  std::vector<FactorViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that the factors partition E(G) and that every factor has degree in
/// [r, r+a] at every vertex. Reports every violation found.
inline VerificationReport verify_factorization(const SimpleGraph& g, const Factorization& f) {
  using K = FactorViolation::Kind;
  VerificationReport rep;
  if (f.x < 1 || f.r < 0 || f.a < 0) {
    rep.violations.push_back({K::WrongSize, -1, -1, -1, 0, "invalid header: need x >= 1, r >= 0, a >= 0"});
    return rep;
  }
  if (f.factor_of.size() != g.edge_count()) {
    rep.violations.push_back({K::WrongSize, -1, -1, -1, 0,
                              "assignment covers " + std::to_string(f.factor_of.size()) + " of " +
                                  std::to_string(g.edge_count()) + " edges"});
    return rep;
  }
  const auto x = static_cast<std::size_t>(f.x);
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()) * x, 0);
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
    int k = f.factor_of[static_cast<std::size_t>(id)];
    const Edge& e = g.edge(id);
    std::string where = "edge " + std::to_string(e.u) + " " + std::to_string(e.v);
    if (k == -1) {
      rep.violations.push_back({K::Unassigned, -1, -1, id, 0, where + " is not assigned"});
      continue;
    }
    if (k < 0 || k >= f.x) {
      rep.violations.push_back({K::FactorOutOfRange, k, -1, id, 0, where + " has factor " + std::to_string(k)});
      continue;
    }
    ++deg[static_cast<std::size_t>(e.u) * x + static_cast<std::size_t>(k)];
    ++deg[static_cast<std::size_t>(e.v) * x + static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < f.x; ++k)
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      int d = deg[static_cast<std::size_t>(v) * x + static_cast<std::size_t>(k)];
      std::string where = "factor " + std::to_string(k) + " has degree " + std::to_string(d) + " at vertex " +
                          std::to_string(v);
      if (d < f.r) rep.violations.push_back({K::DegreeTooLow, k, v, -1, d, where + " < " + std::to_string(f.r)});
      if (d > f.r + f.a)
        rep.violations.push_back({K::DegreeTooHigh, k, v, -1, d, where + " > " + std::to_string(f.r + f.a)});
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Pendant augmentation.

struct AugmentedGraph {
  SimpleGraph base;
  SimpleGraph combined;
  std::vector<Vertex> pendant_of;  // base vertex -> pendant vertex in combined, or -1

  std::size_t pendant_count() const {
    return static_cast<std::size_t>(std::count_if(pendant_of.begin(), pendant_of.end(), [](Vertex p) { return p >= 0; }));
  }
};

/// Joins a new degree-1 vertex to every v with x | d(v); afterwards no vertex
/// of the combined graph has degree divisible by x. Pendants are numbered
/// n, n+1, ... in base-vertex order.
inline AugmentedGraph augment_pendants(const SimpleGraph& g, int x) {
  if (x <= 1) throw Error(ErrorKind::InvalidFactorCount, "pendant augmentation needs x >= 2");
  AugmentedGraph out;
  out.base = g;
  out.pendant_of.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  Vertex next = g.vertex_count();
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) % x == 0) {
      out.pendant_of[static_cast<std::size_t>(v)] = next;
      edges.push_back({v, next++});
    }
  out.combined = SimpleGraph(next, std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------
// Construction.

struct FactorizeOptions {
  std::size_t exact_edge_cap = 40;
  BalanceOptions balance;
};

namespace detail {

inline void check_window_args(int r, int a, int x) {
  if (r < 1) throw Error(ErrorKind::InvalidParams, "r must be >= 1");
  if (a < 0) throw Error(ErrorKind::InvalidParams, "a must be >= 0");
  if (x < 1) throw Error(ErrorKind::InvalidFactorCount, "x must be >= 1");
}

inline Factorization checked(const SimpleGraph& g, Factorization f, const char* who) {
  auto rep = verify_factorization(g, f);
  if (!rep.ok())
    throw Error(ErrorKind::ConstructionFailed,
                std::string(who) + " produced an invalid factorization: " + rep.violations.front().message);
  return f;
}

/// Backtracking over edge -> factor assignments. Edges are taken vertex by
/// vertex in descending degree order so constraints close early.
class ExactSearch {
 public:
  ExactSearch(const SimpleGraph& g, int r, int a, int x)
      : g_(g), r_(r), top_(r + a), x_(static_cast<std::size_t>(x)) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    deg_.assign(n * x_, 0);
    remaining_.resize(n);
    deficit_.resize(n);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      remaining_[static_cast<std::size_t>(v)] = g.degree(v);
      deficit_[static_cast<std::size_t>(v)] = x * r;
    }
    std::vector<Vertex> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i);
    std::stable_sort(order.begin(), order.end(), [&](Vertex p, Vertex q) { return g.degree(p) > g.degree(q); });
    std::vector<char> taken(g.edge_count(), 0);
    for (Vertex v : order)
      for (const auto& inc : g.incident(v))
        if (!taken[static_cast<std::size_t>(inc.edge)]) {
          taken[static_cast<std::size_t>(inc.edge)] = 1;
          edges_.push_back(inc.edge);
        }
    assign_.assign(g.edge_count(), -1);
  }

  bool solve() {
    for (Vertex v = 0; v < g_.vertex_count(); ++v)
      if (deficit_[static_cast<std::size_t>(v)] > remaining_[static_cast<std::size_t>(v)] ||
          static_cast<std::int64_t>(x_) * top_ < g_.degree(v))
        return false;
    return place(0, 0);
  }

  const std::vector<int>& assignment() const { return assign_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  int& deg(Vertex v, std::size_t k) { return deg_[static_cast<std::size_t>(v) * x_ + k]; }

  void add(Vertex v, std::size_t k, int delta) {
    int before = deg(v, k);
    deg(v, k) += delta;
    remaining_[static_cast<std::size_t>(v)] -= delta;
    if (delta > 0 && before < r_) --deficit_[static_cast<std::size_t>(v)];
    if (delta < 0 && before <= r_) ++deficit_[static_cast<std::size_t>(v)];
  }

  bool feasible(Vertex v) const {
    return deficit_[static_cast<std::size_t>(v)] <= remaining_[static_cast<std::size_t>(v)];
  }

  bool place(std::size_t i, std::size_t used) {
    ++nodes_;
    if (i == edges_.size()) return true;
    const EdgeId id = edges_[i];
    const Edge& e = g_.edge(id);
    const std::size_t limit = std::min(x_, used + 1);
    for (std::size_t k = 0; k < limit; ++k) {
      if (deg(e.u, k) >= top_ || deg(e.v, k) >= top_) continue;
      add(e.u, k, 1);
      add(e.v, k, 1);
      assign_[static_cast<std::size_t>(id)] = static_cast<int>(k);
      if (feasible(e.u) && feasible(e.v) && place(i + 1, std::max(used, k + 1))) return true;
      add(e.u, k, -1);
      add(e.v, k, -1);
    }
    assign_[static_cast<std::size_t>(id)] = -1;
    return false;
  }

  const SimpleGraph& g_;
  int r_;
  int top_;
  std::size_t x_;
  std::vector<int> deg_;
  std::vector<int> remaining_;
  std::vector<int> deficit_;  // sum over factors of max(0, r - deg)
  std::vector<EdgeId> edges_;
  std::vector<int> assign_;
  std::int64_t nodes_ = 0;
};

}  // namespace detail

/// Complete search. Returns nullopt when no (r, r+a)-factorization with x
/// factors exists. Throws TooLarge above `opt.exact_edge_cap` edges.
inline std::optional<Factorization> factorize_exact(const SimpleGraph& g, int r, int a, int x,
                                                    const FactorizeOptions& opt = {}) {
  detail::check_window_args(r, a, x);
  if (g.edge_count() > opt.exact_edge_cap)
    throw Error(ErrorKind::TooLarge, std::to_string(g.edge_count()) + " edges exceeds the exact-search cap of " +
                                         std::to_string(opt.exact_edge_cap));
  detail::ExactSearch search(g, r, a, x);
  if (!search.solve()) return std::nullopt;
  return detail::checked(g, Factorization{x, r, a, search.assignment()}, "exact search");
}

/// Pendant augmentation, equitable colouring of the augmented graph and
/// restriction to G. Needs x*r < d(v) < x*(r+a) at every vertex.
inline Factorization factorize_interior(const SimpleGraph& g, int r, int a, int x, const FactorizeOptions& opt = {}) {
  detail::check_window_args(r, a, x);
  const auto prof = degree_profile(g);
  const std::int64_t lo = std::int64_t{x} * r;
  const std::int64_t hi = std::int64_t{x} * (r + a);
  if (!(lo < prof.d_min && prof.d_max < hi))
    throw Error(ErrorKind::XOutOfRange, "x = " + std::to_string(x) + " is not strictly inside the degree window: need " +
                                            std::to_string(lo) + " < d_min = " + std::to_string(prof.d_min) +
                                            " and d_max = " + std::to_string(prof.d_max) + " < " + std::to_string(hi));
  if (x == 1) return detail::checked(g, Factorization{1, r, a, std::vector<int>(g.edge_count(), 0)}, "single factor");
  const auto aug = augment_pendants(g, x);
  try {
    const auto col = equitable_colour_simple(aug.combined, x, opt.balance);
    Factorization f{x, r, a, std::vector<int>(g.edge_count())};
    for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
      const Edge& e = g.edge(id);
      f.factor_of[static_cast<std::size_t>(id)] = col.colour_of[static_cast<std::size_t>(*aug.combined.edge_id(e.u, e.v))];
    }
    return detail::checked(g, std::move(f), "pendant pipeline");
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::BalancingFailed) throw;
    if (g.edge_count() > opt.exact_edge_cap)
      throw Error(ErrorKind::ConstructionFailed, std::string("balancing stalled and graph exceeds exact cap: ") + err.what());
    auto exact = factorize_exact(g, r, a, x, opt);
    if (!exact) throw Error(ErrorKind::ConstructionFailed, "balancing stalled and exact search found no factorization");
    return *exact;
  }
}

/// Dispatches on the actual degree profile: strictly interior x uses the
/// pendant pipeline; otherwise an equitable x-colouring of G is tried (it is a
/// factorization whenever every degree lies in [x*r, x*(r+a)]) before exact
/// search. nullopt means no factorization exists.
inline std::optional<Factorization> factorize(const SimpleGraph& g, int r, int a, int x, const FactorizeOptions& opt = {}) {
  detail::check_window_args(r, a, x);
  const auto prof = degree_profile(g);
  const std::int64_t lo = std::int64_t{x} * r;
  const std::int64_t hi = std::int64_t{x} * (r + a);
  // Every factor needs degree >= r and <= r+a at each vertex.
  if (prof.d_min < lo || prof.d_max > hi) return std::nullopt;
  if (x == 1) return detail::checked(g, Factorization{1, r, a, std::vector<int>(g.edge_count(), 0)}, "single factor");
  if (lo < prof.d_min && prof.d_max < hi) return factorize_interior(g, r, a, x, opt);
  try {
    BalanceOptions quick = opt.balance;
    quick.retries = std::min(quick.retries, 2);
    const auto col = balance_colouring(g, x, std::vector<int>(static_cast<std::size_t>(g.vertex_count()), 1), quick);
    Factorization f{x, r, a, col.colour_of};
    if (verify_factorization(g, f).ok()) return f;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::BalancingFailed) throw;
  }
  return factorize_exact(g, r, a, x, opt);
}

// ---------------------------------------------------------------------------
// Text format:
//   x r a
//   u v factor    (one line per edge)

inline std::string write_factorization(const SimpleGraph& g, const Factorization& f) {
  std::ostringstream out;
  out << f.x << ' ' << f.r << ' ' << f.a << '\n';
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
    const Edge& e = g.edge(id);
    out << e.u << ' ' << e.v << ' ' << f.factor_of[static_cast<std::size_t>(id)] << '\n';
  }
  return out.str();
}

/// Binds a factorization file to `g`. Edges of g missing from the file are
/// left as -1 so verification can report them.
inline Factorization read_factorization(std::string_view text, const SimpleGraph& g) {
  std::optional<Factorization> f;
  detail::for_each_record(text, [&](std::size_t line_no, const std::vector<long long>& ints) {
    if (ints.size() != 3) throw ParseError(line_no, "expected three integers");
    if (!f) {
      if (ints[0] < 1 || ints[1] < 0 || ints[2] < 0) throw ParseError(line_no, "header needs x >= 1, r >= 0, a >= 0");
      f = Factorization{static_cast<int>(ints[0]), static_cast<int>(ints[1]), static_cast<int>(ints[2]),
                        std::vector<int>(g.edge_count(), -1)};
      return;
    }
    auto in_range = [&](long long v) { return v >= 0 && v < g.vertex_count(); };
    if (!in_range(ints[0]) || !in_range(ints[1])) throw ParseError(line_no, "vertex index out of range");
    auto id = g.edge_id(static_cast<Vertex>(ints[0]), static_cast<Vertex>(ints[1]));
    if (!id) throw ParseError(line_no, "no edge " + std::to_string(ints[0]) + " " + std::to_string(ints[1]) + " in graph");
    if (ints[2] < 0 || ints[2] >= f->x)
      throw ParseError(line_no, "factor index " + std::to_string(ints[2]) + " outside [0, " + std::to_string(f->x) + ")");
    auto& slot = f->factor_of[static_cast<std::size_t>(*id)];
    if (slot != -1) throw ParseError(line_no, "edge assigned twice");
    slot = static_cast<int>(ints[2]);
  });
  if (!f) throw ParseError(1, "missing 'x r a' header");
  return *f;
}

}  // namespace factor_forge
