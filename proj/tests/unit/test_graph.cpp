#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "structctl/digraph.hpp"
#include "structctl/pattern.hpp"

namespace structctl {
namespace {

using testing::pattern_1based;
using testing::six_agent;

TEST(StructPattern, SortsAndRejectsDuplicates) {
  const StructPattern p(2, 3, {{1, 2}, {0, 1}});
  EXPECT_EQ(p.nonzeros(), (std::vector<StructPattern::Entry>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(p.contains(1, 2));
  EXPECT_FALSE(p.contains(1, 1));
  EXPECT_THROW(StructPattern(2, 2, {{0, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(StructPattern(2, 2, {{2, 0}}), std::out_of_range);
  EXPECT_EQ(StructPattern::deduplicated(2, 2, {{0, 0}, {0, 0}}).nnz(), 1u);
}

TEST(StructPattern, Transpose) {
  const StructPattern p(2, 3, {{0, 2}, {1, 0}});
  const auto t = p.transposed();
  EXPECT_EQ(t.n_rows(), 3u);
  EXPECT_EQ(t.n_cols(), 2u);
  EXPECT_TRUE(t.contains(2, 0));
  EXPECT_TRUE(t.contains(0, 1));
  EXPECT_EQ(t.transposed(), p);
}

TEST(BuildDigraph, SixAgentEdges) {
  const auto g = build_digraph(six_agent());
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.edge_count(), 10u);
  // gamma_k is vertex k - 1.
  const std::set<std::pair<Vertex, Vertex>> expected{{0, 0}, {1, 1}, {0, 2}, {1, 2}, {3, 2},
                                                     {2, 3}, {4, 3}, {5, 3}, {3, 4}, {3, 5}};
  const auto edges = g.edges();
  EXPECT_EQ((std::set<std::pair<Vertex, Vertex>>(edges.begin(), edges.end())), expected);
}

TEST(BuildDigraph, EmptyOneByOne) {
  const auto g = build_digraph(StructPattern(1, 1, {}));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildDigraph, ShiftPatternIsAPath) {
  const auto g = build_digraph(pattern_1based(3, 3, {{2, 1}, {3, 2}}));
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(BuildDigraph, RejectsNonSquare) {
  EXPECT_THROW(build_digraph(StructPattern(2, 3, {})), ShapeError);
}

TEST(BuildDigraph, RoundTripsThroughPattern) {
  EXPECT_EQ(to_pattern(build_digraph(six_agent())), six_agent());
}

TEST(Scc, SixAgent) {
  const auto c = strongly_connected_components(build_digraph(six_agent()));
  ASSERT_EQ(c.scc_count(), 3u);
  EXPECT_EQ(c.scc_members[0], (std::vector<Vertex>{0}));
  EXPECT_EQ(c.scc_members[1], (std::vector<Vertex>{1}));
  EXPECT_EQ(c.scc_members[2], (std::vector<Vertex>{2, 3, 4, 5}));
  EXPECT_EQ(c.non_top_linked, (std::vector<SccId>{0, 1}));
  EXPECT_EQ(c.beta(), 2u);
}

TEST(Scc, SelfLoop) {
  const auto c = strongly_connected_components(testing::self_loop());
  EXPECT_EQ(c.scc_count(), 1u);
  EXPECT_EQ(c.beta(), 1u);
}

TEST(Scc, Path) {
  const auto c = strongly_connected_components(testing::path3());
  EXPECT_EQ(c.scc_count(), 3u);
  EXPECT_EQ(c.non_top_linked, (std::vector<SccId>{c.scc_of[0]}));
}

TEST(Reachability, Examples) {
  const auto g = build_digraph(six_agent());
  const std::vector<Vertex> from_gamma1{0};
  EXPECT_EQ(reachable_from(g, from_gamma1), (std::vector<Vertex>{0, 2, 3, 4, 5}));
  const std::vector<Vertex> all{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(reachable_from(g, all), all);
  const std::vector<Vertex> sink{2};
  EXPECT_EQ(reachable_from(testing::path3(), sink), sink);
  const std::vector<Vertex> bad{7};
  EXPECT_THROW(reachable_from(g, bad), std::out_of_range);
}

// Condensation invariants against a transitive-closure reference.
TEST(SccProperty, MatchesClosureAndFormsDag) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(9);
    const auto g = build_digraph(testing::random_pattern(rng, n, testing::sweep_density(trial, 300, 0.02, 0.6)));
    const auto c = strongly_connected_components(g);
    const auto reach = testing::closure(g);

    std::vector<int> seen(n, 0);
    for (const auto& members : c.scc_members) {
      for (Vertex v : members) ++seen[v];
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        EXPECT_EQ(c.scc_of[u] == c.scc_of[v], reach[u][v] && reach[v][u]);
      }
    }
    // dag_edges exactly the crossing edges, and acyclic by a topological peel.
    std::set<std::pair<SccId, SccId>> crossing;
    for (auto [u, v] : g.edges()) {
      if (c.scc_of[u] != c.scc_of[v]) crossing.emplace(c.scc_of[u], c.scc_of[v]);
    }
    EXPECT_EQ((std::set<std::pair<SccId, SccId>>(c.dag_edges.begin(), c.dag_edges.end())), crossing);
    std::vector<int> indeg(c.scc_count(), 0);
    for (auto [a, b] : crossing) ++indeg[b];
    std::vector<SccId> sources;
    for (SccId s = 0; s < c.scc_count(); ++s) {
      if (indeg[s] == 0) sources.push_back(s);
    }
    EXPECT_EQ(sources, c.non_top_linked);
    std::size_t peeled = 0;
    auto queue = sources;
    while (!queue.empty()) {
      const SccId s = queue.back();
      queue.pop_back();
      ++peeled;
      for (auto [a, b] : crossing) {
        if (a == s && --indeg[b] == 0) queue.push_back(b);
      }
    }
    EXPECT_EQ(peeled, c.scc_count());
  }
}

TEST(ReachabilityProperty, MonotoneAndMatchesClosure) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(9);
    const auto g = build_digraph(testing::random_pattern(rng, n, 0.15));
    const auto reach = testing::closure(g);
    std::vector<Vertex> small;
    std::vector<Vertex> large;
    for (Vertex v = 0; v < n; ++v) {
      const auto r = rng.below(3);
      if (r == 0) small.push_back(v);
      if (r <= 1) large.push_back(v);
    }
    const auto rs = reachable_from(g, small);
    const auto rl = reachable_from(g, large);
    EXPECT_TRUE(std::includes(rl.begin(), rl.end(), rs.begin(), rs.end()));
    for (Vertex v = 0; v < n; ++v) {
      bool expected = false;
      for (Vertex s : small) expected = expected || reach[s][v];
      EXPECT_EQ(std::binary_search(rs.begin(), rs.end(), v), expected);
    }
  }
}

TEST(SccProperty, StronglyConnectedHasOneComponent) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = build_digraph(testing::random_strongly_connected(rng, 1 + rng.below(10), 0.1));
    const auto c = strongly_connected_components(g);
    EXPECT_EQ(c.scc_count(), 1u);
    EXPECT_EQ(c.beta(), 1u);
  }
}

}  // namespace
}  // namespace structctl
