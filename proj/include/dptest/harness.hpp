#pragma once

// Monte Carlo trials: many independent runs of one tester on one graph, each
// with its own oracle and a seed split from the base seed.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dptest/connectivity.hpp"
#include "dptest/graph.hpp"
#include "dptest/oracle.hpp"
#include "dptest/random.hpp"
#include "dptest/star_freeness.hpp"
#include "dptest/subgraph_freeness.hpp"

namespace dptest {

enum class Property { Subgraph, Star3, Sink, StrongConn, StrongConnD1 };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::Subgraph: return "subgraph";
    case Property::Star3: return "star3";
    case Property::Sink: return "sink";
    case Property::StrongConn: return "strong-conn";
    case Property::StrongConnD1: return "strong-conn-d1";
  }
  return "unknown";
}

inline std::optional<Property> parse_property(const std::string& s) {
  for (auto p : {Property::Subgraph, Property::Star3, Property::Sink, Property::StrongConn,
                 Property::StrongConnD1})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

struct TrialConfig {
  Property property = Property::Sink;
  double eps = 0.1;
  double alpha = 1.0;
  double beta = 0.1;
  double scale = 1.0;
  /// Subgraph tester: amplify a weakly connected pattern to this failure probability.
  std::optional<double> amplify;
  std::optional<DirectedGraph> pattern;
  ExactFallback fallback = ExactFallback::Auto;
  std::size_t trials = 1;
  Seed base_seed{0};
  std::optional<std::uint64_t> query_budget;
  /// 0 picks the hardware concurrency; DPTEST_THREADS caps either way.
  std::size_t threads = 0;
};

struct TrialRecord {
  std::size_t index = 0;
  Seed seed;
  Verdict verdict;
  /// The oracle budget ran out and the documented abort verdict was used.
  bool aborted = false;
};

struct TrialReport {
  std::size_t accept_count = 0;
  std::size_t reject_count = 0;
  double accept_rate = 0;
  double query_mean = 0;
  std::uint64_t query_max = 0;
  std::uint64_t query_cap = 0;
  std::size_t cap_violations = 0;
  std::size_t aborted_count = 0;
  std::vector<TrialRecord> records;
  double wall_seconds = 0;
};

/// Verdict used when the budget runs out, per tester.
inline Decision abort_decision(Property p) {
  return p == Property::Star3 ? Decision::Reject : Decision::Accept;
}

inline void validate(const TrialConfig& cfg, const DirectedGraph& g) {
  if (cfg.trials < 1) throw std::invalid_argument("config-invalid: trials must be >= 1");
  if (g.vertex_count() == 0) throw std::invalid_argument("config-invalid: empty graph");
  if (cfg.property == Property::Subgraph && !cfg.pattern)
    throw std::invalid_argument("config-invalid: subgraph testing needs a pattern");
  if (cfg.property == Property::StrongConnD1 && g.degree_bound() != 1)
    throw std::invalid_argument("config-invalid: strong-conn-d1 needs degree bound 1");
}

inline std::uint64_t subgraph_config_cap(std::size_t n, std::size_t degree_bound,
                                         const TrialConfig& cfg) {
  const auto info = analyze_pattern(*cfg.pattern);
  if (info.l == 1 && !cfg.amplify) return subgraph_query_cap(n, degree_bound, info, cfg.eps);
  const double p_fail = info.l == 1 ? *cfg.amplify : 1.0 / (3.0 * info.l);
  std::uint64_t total = 0;
  for (const auto& comp : info.components)
    total += amplification_runs(p_fail) *
             subgraph_query_cap(n, degree_bound, analyze_pattern(comp), cfg.eps);
  return total;
}

/// Closed-form bound on the queries of one trial.
inline std::uint64_t query_cap(const DirectedGraph& g, const TrialConfig& cfg) {
  const auto n = g.vertex_count();
  const auto D = g.degree_bound();
  switch (cfg.property) {
    case Property::Subgraph: return subgraph_config_cap(n, D, cfg);
    case Property::Star3: return star3_query_cap(n, D, cfg.eps, cfg.fallback);
    case Property::Sink: return sink_query_cap(n, D, cfg.beta);
    case Property::StrongConn: return strong_connectivity_query_cap(n, D, cfg.eps, cfg.alpha, cfg.scale);
    case Property::StrongConnD1: return degree1_query_cap(n, cfg.eps);
  }
  return 0;
}

/// One tester run on a fresh oracle. A budget overrun yields the abort verdict.
inline TrialRecord run_single(const DirectedGraph& g, const TrialConfig& cfg, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = split(cfg.base_seed, index);
  OutEdgeOracle oracle(g, cfg.query_budget);
  const auto n = g.vertex_count();
  try {
    switch (cfg.property) {
      case Property::Subgraph: {
        const auto info = analyze_pattern(*cfg.pattern);
        if (info.l > 1)
          rec.verdict = test_h_freeness_multi(oracle, n, *cfg.pattern, cfg.eps, rec.seed);
        else if (cfg.amplify)
          rec.verdict =
              test_subgraph_freeness_amplified(oracle, n, info, cfg.eps, *cfg.amplify, rec.seed);
        else
          rec.verdict = test_subgraph_freeness(oracle, n, info, cfg.eps, rec.seed);
        break;
      }
      case Property::Star3:
        rec.verdict = test_3star_freeness(oracle, n, cfg.eps, rec.seed, cfg.fallback);
        break;
      case Property::Sink:
        rec.verdict = test_sink_freeness(oracle, n, cfg.beta, rec.seed);
        break;
      case Property::StrongConn:
        rec.verdict = test_strong_connectivity(oracle, n, cfg.eps, cfg.alpha, rec.seed, cfg.scale);
        break;
      case Property::StrongConnD1:
        rec.verdict = test_strong_connectivity_deg1(oracle, n, cfg.eps, rec.seed);
        break;
    }
  } catch (const BudgetExhausted&) {
    rec.aborted = true;
    rec.verdict = make_verdict(abort_decision(cfg.property), Reason::BudgetExhausted,
                               oracle.query_count());
  }
  return rec;
}

/// Worker count: requested (or hardware) threads, capped by DPTEST_THREADS and by `jobs`.
inline std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DPTEST_THREADS")) {
    char* end = nullptr;
    const auto cap = std::strtoull(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

/**
 * Runs cfg.trials trials. Records are ordered by trial index, so the report
 * does not depend on the number of threads.
 */
inline TrialReport run_trials(const DirectedGraph& g, const TrialConfig& cfg) {
  validate(cfg, g);
  const auto started = std::chrono::steady_clock::now();
  TrialReport report;
  report.records.resize(cfg.trials);
  report.query_cap = query_cap(g, cfg);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (auto i = next++; i < cfg.trials; i = next++) report.records[i] = run_single(g, cfg, i);
  };
  const auto workers = worker_count(cfg.threads, cfg.trials);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  double sum = 0;
  for (const auto& r : report.records) {
    (r.verdict.accepted() ? report.accept_count : report.reject_count) += 1;
    report.aborted_count += r.aborted;
    sum += double(r.verdict.queries_used);
    report.query_max = std::max(report.query_max, r.verdict.queries_used);
    report.cap_violations += r.verdict.queries_used > report.query_cap;
  }
  report.accept_rate = double(report.accept_count) / double(cfg.trials);
  report.query_mean = sum / double(cfg.trials);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace dptest
