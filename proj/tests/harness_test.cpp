#include <gtest/gtest.h>

#include <set>

#include "dptest/generators.hpp"
#include "dptest/harness.hpp"

using namespace dptest;

namespace {

TrialConfig sink_config(std::size_t trials) {
  TrialConfig cfg;
  cfg.property = Property::Sink;
  cfg.beta = 0.1;
  cfg.trials = trials;
  cfg.base_seed = Seed{77};
  return cfg;
}

std::vector<std::pair<Decision, std::uint64_t>> outcomes(const TrialReport& r) {
  std::vector<std::pair<Decision, std::uint64_t>> out;
  for (const auto& rec : r.records) out.emplace_back(rec.verdict.decision, rec.verdict.queries_used);
  return out;
}

/**
 * A graph that answers every logged query the same way but differs elsewhere:
 * unqueried slots are cleared, and vertices never queried gain edges to other
 * unqueried vertices where the degree bounds allow.
 */
DirectedGraph perturb_outside(const DirectedGraph& g, const std::vector<QueryRecord>& log, Seed seed) {
  const auto n = g.vertex_count();
  const auto D = g.degree_bound();
  std::vector<std::size_t> last_slot(n, 0);
  for (const auto& q : log) last_slot[q.vertex] = std::max(last_slot[q.vertex], q.slot);
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<std::size_t> indeg(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const auto& out = g.out_neighbors(v);
    for (std::size_t i = 0; i < std::min(out.size(), last_slot[v]); ++i) {
      adj[v].push_back(out[i]);
      ++indeg[out[i]];
    }
  }
  auto rng = make_rng(seed);
  std::set<Edge> present;
  for (Vertex v = 0; v < n; ++v)
    for (auto w : adj[v]) present.emplace(v, w);
  for (int attempt = 0; attempt < int(4 * n); ++attempt) {
    const auto u = static_cast<Vertex>(uniform_index(rng, n));
    const auto w = static_cast<Vertex>(uniform_index(rng, n));
    if (u == w || last_slot[u] != 0 || adj[u].size() >= D || indeg[w] >= D) continue;
    if (!present.emplace(u, w).second) continue;
    adj[u].push_back(w);
    ++indeg[w];
  }
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (auto w : adj[v]) edges.emplace_back(v, w);
  return build_graph(n, D, edges);
}

template <class Run>
void expect_opaque(const DirectedGraph& g, Run run) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    OutEdgeOracle first(g);
    first.enable_log();
    const auto a = run(first, Seed{s});
    const auto h = perturb_outside(g, first.log(), Seed{1000 + s});
    OutEdgeOracle second(h);
    second.enable_log();
    const auto b = run(second, Seed{s});
    EXPECT_EQ(a.decision, b.decision);
    EXPECT_EQ(a.reason, b.reason);
    EXPECT_EQ(a.queries_used, b.queries_used);
    EXPECT_EQ(first.log(), second.log());
  }
}

}  // namespace

TEST(Harness, PropertyNamesRoundTrip) {
  for (auto p : {Property::Subgraph, Property::Star3, Property::Sink, Property::StrongConn,
                 Property::StrongConnD1})
    EXPECT_EQ(parse_property(to_string(p)), p);
  EXPECT_FALSE(parse_property("nope"));
}

TEST(Harness, SingleTrialOnCycleAccepts) {
  const auto r = run_trials(gen_cycle(500, 2), sink_config(1));
  EXPECT_EQ(r.accept_rate, 1.0);
  EXPECT_EQ(r.accept_count + r.reject_count, 1u);
}

TEST(Harness, OneSidedSubgraphNeverRejects) {
  TrialConfig cfg;
  cfg.property = Property::Subgraph;
  cfg.pattern = star_pattern(StarOrientation::In2Out1);
  cfg.eps = 0.2;
  cfg.trials = 1000;
  const auto r = run_trials(gen_cycle(300), cfg);
  EXPECT_EQ(r.reject_count, 0u);
  EXPECT_EQ(r.cap_violations, 0u);
}

TEST(Harness, DeterministicAndThreadIndependent) {
  const auto g = gen_random_bounded(300, 2, 330, Seed{5});
  auto cfg = sink_config(64);
  cfg.threads = 1;
  const auto serial = run_trials(g, cfg);
  cfg.threads = 8;
  const auto parallel = run_trials(g, cfg);
  const auto again = run_trials(g, cfg);
  EXPECT_EQ(outcomes(serial), outcomes(parallel));
  EXPECT_EQ(outcomes(parallel), outcomes(again));
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].index, i);
    EXPECT_EQ(serial.records[i].seed, split(cfg.base_seed, i));
  }
  EXPECT_EQ(serial.query_mean, parallel.query_mean);
}

TEST(Harness, BudgetExhaustionUsesAbortVerdict) {
  const auto g = gen_cycle(400, 3);
  auto cfg = sink_config(5);
  cfg.query_budget = 3;
  const auto r = run_trials(g, cfg);
  EXPECT_EQ(r.aborted_count, 5u);
  EXPECT_EQ(r.accept_count, 5u);
  for (const auto& rec : r.records) {
    EXPECT_TRUE(rec.aborted);
    EXPECT_EQ(rec.verdict.reason, Reason::BudgetExhausted);
    EXPECT_EQ(rec.verdict.queries_used, 3u);
  }

  cfg.property = Property::Star3;
  cfg.eps = 0.3;
  const auto s = run_trials(g, cfg);
  EXPECT_EQ(s.reject_count, 5u);
  EXPECT_EQ(s.aborted_count, 5u);
}

TEST(Harness, ConfigValidation) {
  const auto g = gen_cycle(10, 2);
  auto cfg = sink_config(0);
  EXPECT_THROW(run_trials(g, cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.property = Property::Subgraph;
  EXPECT_THROW(run_trials(g, cfg), std::invalid_argument);
  cfg.property = Property::StrongConnD1;
  EXPECT_THROW(run_trials(g, cfg), std::invalid_argument);
}

TEST(Harness, QueryCapsHoldAcrossTesters) {
  const auto g = gen_random_bounded(200, 3, 260, Seed{3});
  for (auto p : {Property::Subgraph, Property::Star3, Property::Sink, Property::StrongConn}) {
    TrialConfig cfg;
    cfg.property = p;
    cfg.eps = 0.3;
    cfg.beta = 0.2;
    cfg.pattern = star_pattern(StarOrientation::Out3);
    cfg.trials = 20;
    const auto r = run_trials(g, cfg);
    EXPECT_EQ(r.cap_violations, 0u) << to_string(p);
    EXPECT_LE(r.query_max, r.query_cap) << to_string(p);
  }
}

TEST(Harness, WorkerCountHonoursEnvironment) {
  EXPECT_EQ(worker_count(4, 2), 2u);
  EXPECT_EQ(worker_count(4, 100), 4u);
  setenv("DPTEST_THREADS", "3", 1);
  EXPECT_EQ(worker_count(8, 100), 3u);
  EXPECT_EQ(worker_count(0, 100) <= 3, true);
  unsetenv("DPTEST_THREADS");
}

TEST(Opacity, SinkTester) {
  const auto g = gen_random_bounded(200, 2, 230, Seed{1});
  expect_opaque(g, [](OutEdgeOracle& o, Seed s) { return test_sink_freeness(o, 200, 0.1, s); });
}

TEST(Opacity, SubgraphTester) {
  const auto g = gen_planted_stars(300, 3, 10, star_pattern(StarOrientation::Out3), Seed{2});
  const auto info = analyze_pattern(star_pattern(StarOrientation::Out3));
  expect_opaque(g, [&](OutEdgeOracle& o, Seed s) { return test_subgraph_freeness(o, 300, info, 0.3, s); });
}

TEST(Opacity, StarTester) {
  const auto g = gen_random_bounded(400, 3, 420, Seed{3});
  expect_opaque(g, [](OutEdgeOracle& o, Seed s) {
    return test_3star_freeness(o, 400, 0.6, s, ExactFallback::Off);
  });
}

TEST(Opacity, StrongConnectivity) {
  const auto g = gen_bender_ron_far(300, 0.15, 3);
  expect_opaque(g, [](OutEdgeOracle& o, Seed s) { return test_strong_connectivity(o, 300, 0.6, 1.0, s); });
}

TEST(Opacity, DegreeOne) {
  const auto g = gen_random_bounded(300, 1, 280, Seed{4});
  expect_opaque(g, [](OutEdgeOracle& o, Seed s) { return test_strong_connectivity_deg1(o, 300, 0.1, s); });
}
