#include <gtest/gtest.h>

#include "dptest/exact.hpp"
#include "dptest/generators.hpp"
#include "dptest/subgraph_freeness.hpp"

using namespace dptest;

TEST(AnalyzePattern, Examples) {
  const auto in3 = analyze_pattern(star_pattern(StarOrientation::In3));
  EXPECT_EQ(in3.k, 3u);
  EXPECT_EQ(in3.m, 4u);
  EXPECT_EQ(in3.l, 1u);

  const auto single = analyze_pattern(build_graph(1, 1, {}));
  EXPECT_EQ(single.k, 1u);

  const auto two_edges = analyze_pattern(build_graph(4, 1, {{0, 1}, {2, 3}}));
  EXPECT_EQ(two_edges.l, 2u);
  EXPECT_EQ(two_edges.k, 2u);
  EXPECT_EQ(two_edges.k_min, 1u);
  EXPECT_EQ(two_edges.k_max, 1u);

  EXPECT_THROW(analyze_pattern(build_graph(0, 1, {})), std::invalid_argument);
}

TEST(AnalyzePattern, OrientationSourceCounts) {
  EXPECT_EQ(analyze_pattern(star_pattern(StarOrientation::In2Out1)).k, 2u);
  EXPECT_EQ(analyze_pattern(star_pattern(StarOrientation::In1Out2)).k, 1u);
  EXPECT_EQ(analyze_pattern(star_pattern(StarOrientation::Out3)).k, 1u);
}

TEST(Amplification, RunCounts) {
  EXPECT_EQ(amplification_runs(1.0 / 3.0), 1u);
  EXPECT_EQ(amplification_runs(1.0 / 27.0), 3u);
  EXPECT_EQ(amplification_runs(1.0 / 6.0), 2u);
  EXPECT_THROW(amplification_runs(0.5), std::invalid_argument);
}

TEST(SubgraphTester, NeverRejectsPatternFreeInput) {
  const auto g = gen_cycle(200);
  for (int k = 0; k <= 3; ++k) {
    const auto info = analyze_pattern(star_pattern(static_cast<StarOrientation>(k)));
    for (std::uint64_t s = 0; s < 50; ++s) {
      OutEdgeOracle o(g);
      const auto v = test_subgraph_freeness(o, 200, info, 0.1, Seed{s});
      EXPECT_TRUE(v.accepted());
      EXPECT_EQ(v.queries_used, o.query_count());
      EXPECT_LE(v.queries_used, subgraph_query_cap(200, 1, info, 0.1));
    }
  }
}

TEST(SubgraphTester, FullSamplingAgreesWithExactContainment) {
  // p clamps to 1 for tiny n, so every vertex is a root.
  const std::vector<DirectedGraph> patterns = {
      star_pattern(StarOrientation::Out3), star_pattern(StarOrientation::In3),
      star_pattern(StarOrientation::In2Out1), gen_cycle(3), build_graph(3, 1, {{0, 1}, {1, 2}})};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen_random_bounded(12, 3, 14 + seed % 10, Seed{seed});
    for (const auto& h : patterns) {
      const auto info = analyze_pattern(h);
      ASSERT_GE(subgraph_sampling(12, info, 0.5).p, 1.0);
      OutEdgeOracle o(g);
      const auto v = test_subgraph_freeness(o, 12, info, 0.5, Seed{seed});
      if (v.reason == Reason::Oversample) continue;
      EXPECT_EQ(v.rejected(), exact_count_disjoint_occurrences(g, h).contains)
          << serialize_graph(g) << serialize_graph(h);
    }
  }
}

TEST(SubgraphTester, OccurrenceSpanningTwoExplorationsIsFound) {
  // In-3-star with center 0: from any leaf the depth-4 exploration reaches 0,
  // but a single exploration only sees one leaf. All roots together see the star.
  const auto g = build_graph(4, 3, {{1, 0}, {2, 0}, {3, 0}});
  const auto info = analyze_pattern(star_pattern(StarOrientation::In3));
  OutEdgeOracle o(g);
  const auto v = test_subgraph_freeness(o, 4, info, 0.5, Seed{1});
  EXPECT_TRUE(v.rejected());
  EXPECT_EQ(v.reason, Reason::OccurrenceFound);
}

TEST(SubgraphTester, RequiresConnectedPattern) {
  const auto g = gen_cycle(10);
  OutEdgeOracle o(g);
  EXPECT_THROW(test_subgraph_freeness(o, 10, analyze_pattern(build_graph(4, 1, {{0, 1}, {2, 3}})),
                                      0.1, Seed{0}),
               std::invalid_argument);
}

TEST(SubgraphTester, AmplifiedIsOneSided) {
  const auto g = gen_cycle(300);
  const auto info = analyze_pattern(star_pattern(StarOrientation::In2Out1));
  for (std::uint64_t s = 0; s < 30; ++s) {
    OutEdgeOracle o(g);
    EXPECT_TRUE(test_subgraph_freeness_amplified(o, 300, info, 0.2, 1.0 / 27.0, Seed{s}).accepted());
  }
}

TEST(SubgraphTester, MultiWithSingleComponentMatchesAmplified) {
  const auto out3 = star_pattern(StarOrientation::Out3);
  const auto g = gen_planted_stars(400, 3, 20, out3, Seed{2});
  for (std::uint64_t s = 0; s < 20; ++s) {
    OutEdgeOracle a(g), b(g);
    const auto multi = test_h_freeness_multi(a, 400, out3, 0.2, Seed{s});
    const auto amp =
        test_subgraph_freeness_amplified(b, 400, analyze_pattern(out3), 0.2, 1.0 / 3.0, split(Seed{s}, 0));
    EXPECT_EQ(multi.decision, amp.decision);
    EXPECT_EQ(a.query_count(), b.query_count());
  }
}

TEST(SubgraphTester, MultiOnEdgelessGraphAccepts) {
  const auto g = build_graph(100, 1, {});
  const auto two = build_graph(4, 1, {{0, 1}, {2, 3}});
  for (std::uint64_t s = 0; s < 20; ++s) {
    OutEdgeOracle o(g);
    EXPECT_TRUE(test_h_freeness_multi(o, 100, two, 0.2, Seed{s}).accepted());
  }
}

TEST(SubgraphTester, MultiDetectsPlantedDisconnectedPattern) {
  const auto two = build_graph(4, 1, {{0, 1}, {2, 3}});
  const auto g = gen_planted_stars(400, 1, 40, two, Seed{3});
  int rejects = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    OutEdgeOracle o(g);
    rejects += test_h_freeness_multi(o, 400, two, 0.2, Seed{s}).rejected();
  }
  EXPECT_GE(rejects, 67);
}

TEST(SubgraphTester, MonotoneInPlantedCopiesAtFixedSeeds) {
  const auto out3 = star_pattern(StarOrientation::Out3);
  const auto info = analyze_pattern(out3);
  int prev = -1;
  for (std::size_t copies : {5u, 20u, 60u}) {
    const auto g = gen_planted_stars(1000, 3, copies, out3, Seed{11});
    int rejects = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      OutEdgeOracle o(g);
      rejects += test_subgraph_freeness(o, 1000, info, 0.2, Seed{s}).rejected();
    }
    EXPECT_GE(rejects, prev - 20) << copies;  // sampling noise allowance
    prev = rejects;
  }
}
