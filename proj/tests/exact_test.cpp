#include <gtest/gtest.h>

#include "dptest/exact.hpp"
#include "dptest/generators.hpp"
#include "reference.hpp"

using namespace dptest;

namespace {

DirectedGraph in3_star() { return build_graph(4, 3, {{1, 0}, {2, 0}, {3, 0}}); }

DirectedGraph two_triangles() {
  return build_graph(6, 1, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
}

}  // namespace

TEST(SccSummary, CycleIsOneComponent) {
  const auto s = exact_scc_summary(gen_cycle(3));
  EXPECT_EQ(s.components.size(), 1u);
  EXPECT_EQ(s.dead_end_count, 0u);
  EXPECT_TRUE(s.strongly_connected());
}

TEST(SccSummary, TwoDisjointTriangles) {
  const auto s = exact_scc_summary(two_triangles());
  EXPECT_EQ(s.components.size(), 2u);
  EXPECT_EQ(s.source_ids.size(), 2u);
  EXPECT_EQ(s.sink_ids.size(), 2u);
  EXPECT_EQ(s.dead_end_count, 2u);
  EXPECT_EQ(s.components[0], (std::vector<Vertex>{0, 1, 2}));
}

TEST(SccSummary, BenderRonInstance) {
  const auto g = gen_bender_ron_far(20, 0.1, 3);
  const auto s = exact_scc_summary(g);
  EXPECT_EQ(s.components.size(), 8u);
  EXPECT_EQ(s.source_ids.size(), 7u);
  EXPECT_EQ(s.sink_ids.size(), 1u);
  EXPECT_EQ(s.components[s.sink_ids[0]].size(), 13u);
}

TEST(SccSummary, MatchesReachabilityOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto n = 5 + seed % 20;
    const auto g = gen_random_bounded(n, 2, std::min<std::size_t>(2 * n, n + seed % 7), Seed{seed});
    const auto s = exact_scc_summary(g);
    const auto r = ref::scc_counts(g);
    EXPECT_EQ(s.components.size(), r.components);
    EXPECT_EQ(s.source_ids.size(), r.sources);
    EXPECT_EQ(s.sink_ids.size(), r.sinks);
    EXPECT_EQ(s.dead_end_count, r.dead_ends);
  }
}

TEST(SccLabels, SinkComponentsComeFirst) {
  // 0 -> 1 <-> 2: component of {1,2} is a sink and gets label 0.
  const auto g = build_graph(3, 2, {{0, 1}, {1, 2}, {2, 1}});
  std::size_t count = 0;
  const auto label = scc_labels(adjacency_of(g), &count);
  EXPECT_EQ(count, 2u);
  EXPECT_EQ(label[1], label[2]);
  EXPECT_EQ(label[1], 0u);
}

TEST(Histogram, Examples) {
  const auto edgeless = exact_indegree_histogram(build_graph(5, 1, {}));
  EXPECT_EQ(edgeless.counts, (std::vector<std::uint64_t>{5, 0}));
  EXPECT_EQ(edgeless.reachable(), 0u);

  EXPECT_EQ(exact_indegree_histogram(gen_cycle(4)).counts, (std::vector<std::uint64_t>{0, 4}));

  const auto star = exact_indegree_histogram(in3_star());
  EXPECT_EQ(star.counts, (std::vector<std::uint64_t>{3, 0, 0, 1}));
  EXPECT_EQ(star.reachable(), 1u);
}

TEST(Histogram, ConservationOnGeneratedGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = gen_random_bounded(50, 3, 20 + 3 * seed, Seed{seed});
    const auto h = exact_indegree_histogram(g);
    EXPECT_EQ(h.vertices(), g.vertex_count());
    EXPECT_EQ(h.edges(), g.edge_count());
  }
}

TEST(Balance, Examples) {
  EXPECT_EQ(exact_balance(gen_cycle(12)), 0u);
  EXPECT_EQ(exact_balance(build_graph(3, 2, {{0, 1}, {2, 1}})), 1u);
  EXPECT_EQ(exact_balance(build_graph(4, 3, {{0, 1}, {0, 2}, {0, 3}})), 1u);
}

TEST(Census, Examples) {
  const auto cyc = exact_star_census(gen_cycle(6));
  EXPECT_EQ(cyc.in2 + cyc.out2 + cyc.in3 + cyc.out3 + cyc.any3, 0u);

  const auto star = exact_star_census(in3_star());
  EXPECT_EQ(star.in2, 1u);
  EXPECT_EQ(star.in3, 1u);
  EXPECT_EQ(star.any3, 1u);
  EXPECT_EQ(star.out2 + star.out3, 0u);

  // (v,a), (b,v), (c,v) with v = 0.
  const auto mixed = exact_star_census(build_graph(4, 2, {{0, 1}, {2, 0}, {3, 0}}));
  EXPECT_EQ(mixed.any3, 1u);
  EXPECT_EQ(mixed.in2, 1u);
  EXPECT_EQ(mixed.out2, 0u);
}

TEST(Census, DoubleEdgesMergeInUndirectedDegree) {
  // 0 <-> 1, 0 -> 2: two distinct neighbours, although three incident edges.
  const auto c = exact_star_census(build_graph(3, 2, {{0, 1}, {1, 0}, {0, 2}}));
  EXPECT_EQ(c.any3, 0u);
  EXPECT_EQ(c.out2, 1u);
}

TEST(Occurrences, Examples) {
  const auto edge = build_graph(2, 1, {{0, 1}});
  const auto tri = exact_count_disjoint_occurrences(gen_cycle(3), edge);
  EXPECT_TRUE(tri.contains);
  EXPECT_GE(tri.greedy_disjoint, 1u);

  EXPECT_FALSE(exact_count_disjoint_occurrences(gen_cycle(30), in3_star()).contains);

  std::vector<Edge> edges;
  for (Vertex c = 0; c < 10; ++c)
    for (Vertex leaf = 1; leaf <= 3; ++leaf) edges.emplace_back(4 * c + leaf, 4 * c);
  const auto planted = build_graph(40, 3, edges);
  EXPECT_EQ(exact_count_disjoint_occurrences(planted, in3_star()).greedy_disjoint, 10u);
}

TEST(Occurrences, PatternTooLarge) {
  EXPECT_THROW(exact_count_disjoint_occurrences(gen_cycle(20), gen_cycle(9)), std::invalid_argument);
}

TEST(Occurrences, ContainsMatchesPermutationSearch) {
  const std::vector<DirectedGraph> patterns = {
      in3_star(),
      build_graph(4, 3, {{0, 1}, {0, 2}, {0, 3}}),
      build_graph(3, 1, {{0, 1}, {1, 2}}),
      build_graph(3, 2, {{0, 1}, {2, 1}}),
      gen_cycle(3),
      build_graph(2, 1, {{0, 1}, {1, 0}}),
      build_graph(4, 1, {{0, 1}, {2, 3}}),
  };
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto n = 5 + seed % 4;
    const auto g = gen_random_bounded(n, 3, n + seed % 6, Seed{100 + seed});
    for (const auto& h : patterns)
      EXPECT_EQ(exact_count_disjoint_occurrences(g, h).contains, ref::contains(g, h))
          << serialize_graph(g) << "pattern\n" << serialize_graph(h);
  }
}

TEST(Occurrences, GreedySetIsVertexDisjoint) {
  const auto g = gen_random_bounded(30, 3, 60, Seed{7});
  const auto h = build_graph(3, 1, {{0, 1}, {1, 2}});
  const auto c = exact_count_disjoint_occurrences(g, h);
  EXPECT_LE(c.greedy_disjoint * 3, 30u);
  EXPECT_GE(c.greedy_disjoint, 1u);
}

TEST(Matcher, FindThroughEdgeUsesThatEdge) {
  LocalDigraph host;
  host.add_edge(10, 20);
  host.add_edge(30, 20);
  host.add_edge(40, 20);
  const auto star = in3_star();
  OccurrenceMatcher m(star);
  const auto occ = m.find_through_edge(host, 30, 20);
  ASSERT_TRUE(occ);
  EXPECT_EQ((*occ)[0], 20u);
  EXPECT_FALSE(m.find_through_edge(host, 20, 30));
}

TEST(CompactComponent, GlobalEvaluationMatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto n = 4 + seed % 9;
    const auto g = gen_random_bounded(n, 2, n + seed % 5, Seed{300 + seed});
    for (std::size_t L : {1, 2, 3, 5})
      for (Vertex v = 0; v < n; ++v)
        EXPECT_EQ(exact_compact_component(g, v, L), ref::compact_by_subsets(g, v, L))
            << "L=" << L << " v=" << v << "\n" << serialize_graph(g);
  }
}

TEST(CompactComponent, Examples) {
  EXPECT_EQ(exact_compact_component(build_graph(3, 1, {}), 1, 5), (std::vector<Vertex>{1}));
  // Source triangle {0,1,2} with one edge leaving to a long path.
  std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 0}, {2, 3}};
  for (Vertex v = 3; v < 9; ++v) edges.emplace_back(v, v + 1);
  const auto g = build_graph(10, 2, edges);
  for (Vertex v = 0; v < 3; ++v)
    EXPECT_EQ(exact_compact_component(g, v, 3), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(exact_compact_component(gen_cycle(100), 17, 5), (std::vector<Vertex>{17}));
}

TEST(Contraction, StronglyConnectedGivesNoIndegreeZero) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto edges = gen_random_bounded(30, 2, 25, Seed{seed}).edges();
    // Closing cycle guarantees strong connectivity.
    std::vector<Edge> all;
    for (Vertex v = 0; v < 30; ++v) all.emplace_back(v, (v + 1) % 30);
    for (auto e : edges)
      if (e.second != (e.first + 1) % 30) all.push_back(e);
    const auto g = build_graph(30, 3, all);
    ASSERT_TRUE(exact_scc_summary(g).strongly_connected());
    for (std::size_t L : {1, 2, 3, 5}) {
      const auto c = exact_contraction(g, L);
      EXPECT_EQ(exact_indegree_histogram(c.graph).counts[0], 0u) << "L=" << L;
    }
  }
}

TEST(Contraction, TwoTrianglesJoined) {
  auto edges = two_triangles().edges();
  edges.emplace_back(0, 3);
  const auto g = build_graph(6, 2, edges);
  const auto c = exact_contraction(g, 3);
  ASSERT_EQ(c.components.size(), 2u);
  EXPECT_EQ(c.graph.edges(), (std::vector<Edge>{{0, 1}}));
}
