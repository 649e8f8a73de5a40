#include <gtest/gtest.h>

#include "dptest/exact.hpp"
#include "dptest/generators.hpp"

using namespace dptest;

TEST(Cycle, Examples) {
  EXPECT_EQ(gen_cycle(3).edges(), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_TRUE(exact_scc_summary(gen_cycle(5)).strongly_connected());
  EXPECT_EQ(exact_balance(gen_cycle(12)), 0u);
  EXPECT_EQ(exact_star_census(gen_cycle(12)).any3, 0u);
  EXPECT_THROW(gen_cycle(1), GeneratorError);
}

TEST(BenderRon, SmallInstance) {
  const auto g = gen_bender_ron_far(20, 0.1, 3);
  EXPECT_EQ(bender_ron_outer_count(20, 0.1, 3), 7u);
  const auto s = exact_scc_summary(g);
  EXPECT_EQ(s.source_ids.size(), 7u);
  for (Vertex v = 13; v < 20; ++v) {
    EXPECT_EQ(g.out_degree(v), 1u);
    EXPECT_EQ(g.in_degree(v), 0u);
  }
  // Each cycle vertex receives at most one edge from outside.
  for (Vertex v = 0; v < 13; ++v) EXPECT_LE(g.in_degree(v), 2u);
}

TEST(BenderRon, SourceCountEqualsOuterCount) {
  for (double eps : {0.05, 0.1, 0.15}) {
    const auto g = gen_bender_ron_far(300, eps, 3);
    EXPECT_EQ(exact_scc_summary(g).source_ids.size(), bender_ron_outer_count(300, eps, 3));
  }
}

TEST(BenderRon, InfeasibleParameters) {
  EXPECT_THROW(gen_bender_ron_far(10, 0.9, 3), GeneratorError);
  EXPECT_THROW(gen_bender_ron_far(100, 0.1, 1), GeneratorError);
  try {
    gen_bender_ron_far(10, 0.9, 3);
  } catch (const GeneratorError& e) {
    EXPECT_EQ(e.code(), "parameter-infeasible");
  }
}

TEST(RandomBounded, Examples) {
  EXPECT_EQ(gen_random_bounded(10, 2, 0, Seed{1}).edge_count(), 0u);
  const auto full = gen_random_bounded(10, 2, 20, Seed{1});
  for (Vertex v = 0; v < 10; ++v) {
    EXPECT_EQ(full.out_degree(v), 2u);
    EXPECT_EQ(full.in_degree(v), 2u);
  }
  EXPECT_EQ(serialize_graph(gen_random_bounded(50, 3, 80, Seed{9})),
            serialize_graph(gen_random_bounded(50, 3, 80, Seed{9})));
  EXPECT_NE(serialize_graph(gen_random_bounded(50, 3, 80, Seed{9})),
            serialize_graph(gen_random_bounded(50, 3, 80, Seed{10})));
}

TEST(RandomBounded, SaturatedSmallCases) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = gen_random_bounded(4, 3, 12, Seed{s});  // complete digraph
    EXPECT_EQ(g.edge_count(), 12u);
  }
  EXPECT_THROW(gen_random_bounded(3, 3, 7, Seed{0}), GeneratorError);
}

TEST(Orientations, LineAndTree) {
  const auto two = gen_line_orientation(2, Seed{3});
  EXPECT_EQ(two.edge_count(), 1u);
  EXPECT_EQ(exact_balance(two), 0u);
  for (std::uint64_t s = 0; s < 200; ++s) {
    EXPECT_LE(exact_balance(gen_line_orientation(10, Seed{s})), 1u);
    const auto t = gen_tree_orientation(10, Seed{s});
    EXPECT_EQ(t.edge_count(), 9u);
    EXPECT_TRUE(is_weakly_connected(t));
    std::uint64_t leaves = 0;
    for (Vertex v = 0; v < 10; ++v) leaves += undirected_degree(t, v) == 1;
    EXPECT_LE(exact_balance(t), leaves - 1);
  }
}

TEST(Sequences, ClassMoments) {
  const auto a = frequency_moments(gen_sequence_class_A(32));
  EXPECT_EQ(a.values, 16u);
  EXPECT_DOUBLE_EQ(a.mean(), 2.0);
  EXPECT_DOUBLE_EQ(a.second(), 4.0);

  const auto b = frequency_moments(gen_sequence_class_B(32));
  EXPECT_EQ(b.values, 17u);
  EXPECT_EQ(b.sum, 32u);
  EXPECT_EQ(b.sum_sq, 64u);
  // E[X_A]/E[X_B] = (sumA/valuesA)/(sumB/valuesB) = 17/16, checked without rounding.
  EXPECT_EQ(16 * a.sum * b.values, 17 * b.sum * a.values);
  EXPECT_EQ(16 * a.sum_sq * b.values, 17 * b.sum_sq * a.values);
}

TEST(Sequences, CanonicalPerN) {
  EXPECT_EQ(gen_sequence_class_B(64).items, gen_sequence_class_B(64).items);
  EXPECT_THROW(gen_sequence_class_A(33), GeneratorError);
}

TEST(StarForest, Examples) {
  const auto g = gen_star_forest(ValueSequence{{1, 1, 2}});
  EXPECT_EQ(g.vertex_count(), 6u);
  EXPECT_EQ(g.in_degree(0), 2u);
  EXPECT_EQ(g.in_degree(1), 1u);
  EXPECT_EQ(g.in_degree(2), 0u);
  EXPECT_EQ(exact_star_census(gen_star_forest(ValueSequence{{3, 1, 2, 4}})).any3, 0u);
  EXPECT_EQ(exact_star_census(gen_star_forest(gen_sequence_class_B(32))).in3, 1u);
  EXPECT_THROW(gen_star_forest(ValueSequence{{1, 5}}), GeneratorError);
}

TEST(StarPatterns, Orientations) {
  for (int k = 0; k <= 3; ++k) {
    const auto s = star_pattern(static_cast<StarOrientation>(k));
    EXPECT_EQ(s.out_degree(0), std::size_t(k));
    EXPECT_EQ(s.in_degree(0), std::size_t(3 - k));
  }
}

TEST(Planted, Examples) {
  const auto in3 = star_pattern(StarOrientation::In3);
  const auto none = gen_planted_stars(100, 3, 0, in3, Seed{1});
  EXPECT_FALSE(exact_count_disjoint_occurrences(none, in3).contains);

  const auto ten = gen_planted_stars(100, 3, 10, in3, Seed{1});
  EXPECT_GE(exact_star_census(ten).in3, 10u);
  EXPECT_EQ(exact_count_disjoint_occurrences(ten, in3).greedy_disjoint, 10u);

  EXPECT_THROW(gen_planted_stars(10, 3, 3, in3, Seed{1}), GeneratorError);
}

TEST(Planted, FillerIsSkippedWhenItWouldCreateOccurrences) {
  const auto path = build_graph(3, 1, {{0, 1}, {1, 2}});
  const auto g = gen_planted_stars(30, 1, 2, path, Seed{4});
  EXPECT_EQ(g.edge_count(), 4u);
  const auto out3 = star_pattern(StarOrientation::Out3);
  EXPECT_EQ(gen_planted_stars(30, 3, 2, out3, Seed{4}).edge_count(), 6u + 22u);
}
