#include <gtest/gtest.h>

#include <queue>
#include <set>

#include "factor_forge/extremal.hpp"
#include "factor_forge/oracle.hpp"
#include "support.hpp"

using namespace factor_forge;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidParams;
}

// Component sizes after deleting edge `skip` (or none when skip < 0).
std::vector<int> component_sizes(const SimpleGraph& g, EdgeId skip) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<Vertex>> adj(n);
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
    if (id == skip) continue;
    const Edge& e = g.edge(id);
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> sizes;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int size = 0;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      ++size;
      for (Vertex w : adj[u])
        if (!seen[static_cast<std::size_t>(w)]) seen[static_cast<std::size_t>(w)] = true, q.push(static_cast<std::size_t>(w));
    }
    sizes.push_back(size);
  }
  return sizes;
}

// True when some edge is a bridge whose removal leaves two odd components.
bool has_odd_bridge(const SimpleGraph& g) {
  for (EdgeId id = 0; id < static_cast<EdgeId>(g.edge_count()); ++id) {
    const auto sizes = component_sizes(g, id);
    if (sizes.size() == 2 && sizes[0] % 2 == 1 && sizes[1] % 2 == 1) return true;
  }
  return false;
}

// Handshake bound recomputed from the degree list: each factor needs at least
// max(r, d(v) - (x-1)(r+a)) at every vertex, and a factor's degree sum is even.
std::int64_t handshake_total(const SimpleGraph& g, int r, int a, int x) {
  std::int64_t sum = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    sum += std::max<std::int64_t>(r, g.degree(v) - std::int64_t{x - 1} * (r + a));
  return std::int64_t{x} * ((sum + 1) / 2);
}

// Whether each d(v) splits into x parts in [r, r+a] so that every part index
// has an even total over all vertices. A DP over the parity mask of the
// running per-factor sums; infeasible means no factorization can exist.
bool parity_split_feasible(const SimpleGraph& g, int r, int a, int x) {
  auto masks_for = [&](int d) {
    std::set<unsigned> out;
    std::vector<int> part(static_cast<std::size_t>(x), r);
    while (true) {
      int sum = 0;
      unsigned mask = 0;
      for (int i = 0; i < x; ++i) {
        sum += part[static_cast<std::size_t>(i)];
        if (part[static_cast<std::size_t>(i)] % 2) mask |= 1u << i;
      }
      if (sum == d) out.insert(mask);
      int i = 0;
      while (i < x && ++part[static_cast<std::size_t>(i)] > r + a) part[static_cast<std::size_t>(i++)] = r;
      if (i == x) return out;
    }
  };
  std::set<unsigned> reach = {0};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::set<unsigned> next;
    for (unsigned m : masks_for(g.degree(v)))
      for (unsigned cur : reach) next.insert(cur ^ m);
    reach = std::move(next);
  }
  return reach.count(0) > 0;
}

void expect_h_placement(const BoundaryInstance& inst) {
  const std::set<Vertex> m(inst.part_m.begin(), inst.part_m.end()), n(inst.part_n.begin(), inst.part_n.end());
  const auto& host = inst.family == "EO" ? m : n;
  for (const Edge& e : inst.h_edges) {
    EXPECT_TRUE(host.count(e.u) && host.count(e.v));
    EXPECT_TRUE(inst.graph.adjacent(e.u, e.v));
  }
  // Every other edge crosses between the parts.
  std::size_t inside = 0;
  for (const Edge& e : inst.graph.edges())
    if (m.count(e.u) == m.count(e.v)) ++inside;
  EXPECT_EQ(inside, inst.h_edges.size());
}

}  // namespace

TEST(BridgedRegular, OddDegreeBridgedGraph) {
  const auto g = gen_lemma14_regular(3, 1);
  EXPECT_EQ(g.vertex_count(), 10);
  EXPECT_EQ(degree_profile(g), (DegreeProfile{3, 3}));
  EXPECT_TRUE(has_odd_bridge(g));
  const auto v = exists_factorization(g, 1, 0, 3);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_FALSE(v.exists);
}

TEST(BridgedRegular, EvenDegreeIsOddComplete) {
  EXPECT_EQ(gen_lemma14_regular(4, 1), graphs::complete(5));
  EXPECT_EQ(gen_lemma14_regular(2, 1), graphs::complete(3));
  EXPECT_FALSE(exists_factorization(graphs::complete(5), 1, 0, 4).exists);
  EXPECT_FALSE(exists_factorization(graphs::complete(3), 1, 0, 2).exists);
}

TEST(BridgedRegular, LargerOddCases) {
  for (int d : {5, 7, 9, 15}) {
    const auto g = gen_lemma14_regular(d, d % 3 == 0 ? 3 : 1);
    EXPECT_EQ(degree_profile(g), (DegreeProfile{d, d}));
    EXPECT_EQ(g.vertex_count(), 2 * (d + 2));
    EXPECT_TRUE(has_odd_bridge(g));
  }
  const auto g = gen_lemma14_regular(5, 1);
  EXPECT_FALSE(exists_factorization(g, 1, 0, 5, 40).exists);
}

TEST(BridgedRegular, Preconditions) {
  EXPECT_EQ(kind_of([] { gen_lemma14_regular(4, 2); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { gen_lemma14_regular(5, 3); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { gen_lemma14_regular(3, 3); }), ErrorKind::InvalidParams);
}

TEST(TopEndObstruction, Examples) {
  EXPECT_EQ(kind_of([] { gen_lemma14_topend(3, 2, 1); }), ErrorKind::InvalidParams);
  const auto six = gen_lemma14_topend(6, 2, 1);
  EXPECT_EQ(degree_profile(six), (DegreeProfile{6, 6}));
  EXPECT_EQ(six.vertex_count() % 2, 1);
  const auto nine = gen_lemma14_topend(9, 2, 1);
  EXPECT_EQ(degree_profile(nine), (DegreeProfile{9, 9}));
  EXPECT_TRUE(has_odd_bridge(nine));
}

TEST(TopEndObstruction, SmallInstanceHasNoFactorization) {
  // Even d+s gives an odd complete graph; two (2,3)-factors would split each degree 6 as 3+3.
  const auto g = gen_lemma14_topend(6, 2, 1);
  EXPECT_FALSE(exists_factorization(g, 2, 1, 2, 30).exists);
}

TEST(TopEndObstruction, Preconditions) {
  EXPECT_EQ(kind_of([] { gen_lemma14_topend(8, 2, 2); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { gen_lemma14_topend(7, 2, 1); }), ErrorKind::InvalidParams);
}

TEST(BoundaryEO, SmallestFamily) {
  const auto inst = gen_boundary_EO(2, 2, 1, 2);
  EXPECT_EQ(inst.part_m.size(), 5u);
  EXPECT_EQ(inst.part_n.size(), 6u);
  EXPECT_EQ(inst.graph.edge_count(), 27u);
  EXPECT_EQ(degree_profile(inst.graph), (DegreeProfile{4, 6}));
  EXPECT_TRUE(is_dds_graph(inst.graph, 4, 2));
  EXPECT_TRUE(inst.outside_stated_hypothesis);
  ASSERT_TRUE(inst.certificate.has_value());
  EXPECT_EQ(inst.certificate->total_edges, 27);
  EXPECT_EQ(inst.certificate->aggregate_lower_bound, 28);
  EXPECT_EQ(inst.certificate->contradiction_margin, 1);
  EXPECT_EQ(handshake_total(inst.graph, 2, 1, 2), 28);
  const auto v = exists_factorization(inst.graph, 2, 1, 2);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_FALSE(v.exists);
  expect_h_placement(inst);
}

TEST(BoundaryEO, OddCountFamily) {
  const auto inst = gen_boundary_EO(2, 3, 1, 3);
  // |M| = 7, |N| = 9, H has 4 edges, 8 labelled N vertices miss one M vertex.
  EXPECT_EQ(inst.graph.edge_count(), 59u);
  EXPECT_EQ(degree_profile(inst.graph), (DegreeProfile{6, 9}));
  EXPECT_TRUE(is_dds_graph(inst.graph, 6, 3));
  ASSERT_TRUE(inst.certificate.has_value());
  EXPECT_GT(inst.certificate->contradiction_margin, 0);
  EXPECT_FALSE(parity_split_feasible(inst.graph, 2, 1, 3));
  expect_h_placement(inst);
}

TEST(BoundaryOO, SmallestFamily) {
  const auto inst = gen_boundary_OO(1, 2, 1, 2);
  EXPECT_EQ(inst.part_m.size(), 2u);
  EXPECT_EQ(inst.part_n.size(), 5u);
  EXPECT_EQ(inst.graph.edge_count(), 9u);
  EXPECT_EQ(degree_profile(inst.graph), (DegreeProfile{2, 4}));
  ASSERT_TRUE(inst.certificate.has_value());
  EXPECT_GE(inst.certificate->contradiction_margin, 1);
  const auto v = exists_factorization(inst.graph, 1, 1, 2);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_FALSE(v.exists);
  expect_h_placement(inst);
}

TEST(BoundaryOO, OddCountFamily) {
  const auto inst = gen_boundary_OO(1, 3, 1, 3);
  // |M| = 3, |N| = 7, H has 2 edges; the last M vertex carries two labels.
  EXPECT_EQ(inst.graph.edge_count(), 19u);
  EXPECT_EQ(degree_profile(inst.graph), (DegreeProfile{3, 6}));
  std::vector<int> m_degrees;
  for (Vertex v : inst.part_m) m_degrees.push_back(inst.graph.degree(v));
  EXPECT_EQ(m_degrees, (std::vector<int>{6, 6, 5}));
  EXPECT_FALSE(exists_factorization(inst.graph, 1, 1, 3).exists);
  expect_h_placement(inst);
}

TEST(Boundary, SmallInstancesAgreeWithOracle) {
  std::vector<BoundaryInstance> insts;
  for (int x = 2; x <= 3; ++x) {
    insts.push_back(gen_boundary_EO(2, x, 1, x));
    insts.push_back(gen_boundary_OO(1, x, 1, x));
    insts.push_back(gen_boundary_OO(3, x, 1, x));
  }
  insts.push_back(gen_boundary_OO(1, 6, 3, 2));
  for (const auto& inst : insts) {
    ASSERT_TRUE(inst.certificate.has_value());
    EXPECT_GT(inst.certificate->contradiction_margin, 0);
    EXPECT_EQ(inst.d, inst.x * inst.r);
    EXPECT_EQ(inst.d + inst.s, inst.x * (inst.r + inst.a));
    EXPECT_TRUE(is_dds_graph(inst.graph, inst.d, inst.s));
    EXPECT_FALSE(parity_split_feasible(inst.graph, inst.r, inst.a, inst.x));
    if (inst.graph.edge_count() <= 30) {
      const auto v = exists_factorization(inst.graph, inst.r, inst.a, inst.x);
      EXPECT_FALSE(v.exists) << inst.family << " r=" << inst.r << " x=" << inst.x;
    }
  }
}

TEST(Boundary, LargerParametersStillCertified) {
  for (int r : {2, 4})
    for (int a : {1, 3, 5})
      for (int x = 2; x <= 5; ++x) {
        const auto inst = gen_boundary_EO(r, x * a, a, x);
        EXPECT_EQ(inst.outside_stated_hypothesis, a < 3);
        EXPECT_GT(inst.certificate->contradiction_margin, 0);
        EXPECT_FALSE(parity_split_feasible(inst.graph, r, a, x)) << inst.family << ' ' << r << ' ' << a << ' ' << x;
      }
  for (int r : {1, 3, 5})
    for (int a : {1, 3})
      for (int x = 2; x <= 5; ++x) {
        const auto inst = gen_boundary_OO(r, x * a, a, x);
        EXPECT_GT(inst.certificate->contradiction_margin, 0);
        EXPECT_FALSE(parity_split_feasible(inst.graph, r, a, x)) << inst.family << ' ' << r << ' ' << a << ' ' << x;
      }
}

TEST(Boundary, TamperedInstanceRejected) {
  auto inst = gen_boundary_EO(2, 2, 1, 2);
  std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
  edges.pop_back();
  inst.graph = SimpleGraph(inst.graph.vertex_count(), std::move(edges));
  EXPECT_EQ(kind_of([&] { counting_certificate(inst); }), ErrorKind::DegreeSpectrumMismatch);
}

TEST(Boundary, ParameterChecks) {
  EXPECT_EQ(kind_of([] { gen_boundary_EO(2, 3, 1, 2); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { gen_boundary_EO(3, 2, 1, 2); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { gen_boundary_OO(2, 2, 1, 2); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { gen_boundary_OO(1, 1, 1, 1); }), ErrorKind::InvalidParams);
}

TEST(Boundary, NoRoomForH) {
  // |M| = 5 holds at most 10 edges, but x(r+a)/2 = 11 are needed.
  EXPECT_EQ(kind_of([] { gen_boundary_EO(2, 18, 9, 2); }), ErrorKind::InfeasibleParams);
}
