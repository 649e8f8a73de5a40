#pragma once

// One-sided tester for H-freeness: sample vertices, explore each to a fixed
// depth along out-edges, reject on an occurrence of H inside everything
// explored so far.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dptest/exact.hpp"
#include "dptest/graph.hpp"
#include "dptest/oracle.hpp"
#include "dptest/random.hpp"

namespace dptest {

struct PatternInfo {
  DirectedGraph pattern;
  std::size_t m = 0;  ///< vertices of H
  std::size_t k = 0;  ///< source components of H
  std::size_t l = 0;  ///< weak components of H
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  /// Weak components of H, each relabelled from 0.
  std::vector<DirectedGraph> components;
};

/// Components without an edge entering from another component; a strongly connected graph has one.
inline std::size_t count_source_components(const DirectedGraph& g) {
  std::size_t count = 0;
  const auto label = scc_labels(adjacency_of(g), &count);
  std::vector<bool> entered(count, false);
  for (auto [u, v] : g.edges())
    if (label[u] != label[v]) entered[label[v]] = true;
  return static_cast<std::size_t>(std::count(entered.begin(), entered.end(), false));
}

inline PatternInfo analyze_pattern(const DirectedGraph& h) {
  if (h.vertex_count() == 0) throw std::invalid_argument("empty-pattern");
  PatternInfo info;
  info.pattern = h;
  info.m = h.vertex_count();
  info.k = count_source_components(h);
  info.k_min = SIZE_MAX;
  for (const auto& comp : weak_components(h)) {
    auto part = induced_subgraph(h, comp);
    const auto kc = count_source_components(part);
    info.k_min = std::min(info.k_min, kc);
    info.k_max = std::max(info.k_max, kc);
    info.components.push_back(std::move(part));
  }
  info.l = info.components.size();
  return info;
}

struct SubgraphSampling {
  double p;    ///< per-vertex inclusion probability, clamped to 1
  double cap;  ///< more sampled vertices than this means accept
};

inline SubgraphSampling subgraph_sampling(std::size_t n, const PatternInfo& info, double eps) {
  const double k = static_cast<double>(info.k);
  const double m = static_cast<double>(info.m);
  SubgraphSampling s;
  s.p = std::min(1.0, std::pow(6.0 * m / (eps * n), 1.0 / k));
  s.cap = 4.0 * std::pow(6.0 * m / eps, 1.0 / k) * std::pow(static_cast<double>(n), 1.0 - 1.0 / k);
  return s;
}

/// Vertices expanded by one depth-m exploration: 1 + D + ... + D^(m-1).
inline double bfs_tree_size(std::size_t degree_bound, std::size_t depth) {
  double total = 0, level = 1;
  for (std::size_t j = 0; j < depth; ++j, level *= degree_bound) total += level;
  return total;
}

/// Upper bound on the queries of one run: every expansion costs at most D probes.
inline std::uint64_t subgraph_query_cap(std::size_t n, std::size_t degree_bound,
                                        const PatternInfo& info, double eps) {
  const auto s = subgraph_sampling(n, info, eps);
  const double sampled = std::min(std::floor(s.cap), static_cast<double>(n));
  const double bound = sampled * degree_bound * bfs_tree_size(degree_bound, info.m);
  return static_cast<std::uint64_t>(std::min(bound, static_cast<double>(n) * degree_bound));
}

template <QueryOracle O>
Verdict test_subgraph_freeness(O& oracle, std::size_t n, const PatternInfo& info, double eps,
                               Seed seed) {
  if (info.l != 1) throw std::invalid_argument("pattern must be weakly connected");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const auto start = oracle.query_count();
  const auto sampling = subgraph_sampling(n, info, eps);
  auto rng = make_rng(seed);

  const auto drawn = binomial(rng, n, sampling.p);
  auto finish = [&](Decision d, Reason r) {
    auto v = make_verdict(d, r, oracle.query_count() - start);
    v.details = {{"p", sampling.p}, {"cap", sampling.cap}, {"sampled", double(drawn)}};
    return v;
  };
  if (static_cast<double>(drawn) > sampling.cap) return finish(Decision::Accept, Reason::Oversample);

  const auto roots = sample_distinct(rng, n, drawn);
  SlotCache<O> cache(oracle);
  LocalDigraph explored;
  const OccurrenceMatcher matcher(info.pattern);
  const auto depth_limit = info.m;

  for (auto r : roots) {
    const auto root = static_cast<Vertex>(r);
    explored.add_vertex(root);
    if (info.pattern.edge_count() == 0 && matcher.find_through_vertex(explored, root))
      return finish(Decision::Reject, Reason::OccurrenceFound);

    std::unordered_map<Vertex, std::size_t> depth{{root, 0}};
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      const auto dv = depth[v];
      if (dv >= depth_limit) continue;
      for (auto w : cache.out_neighbors(v)) {
        if (explored.add_edge(v, w) && matcher.find_through_edge(explored, v, w))
          return finish(Decision::Reject, Reason::OccurrenceFound);
        if (depth.try_emplace(w, dv + 1).second) queue.push_back(w);
      }
    }
  }
  return finish(Decision::Accept, Reason::NoWitness);
}

/// ceil(log_3(1 / p_fail)).
inline std::size_t amplification_runs(double p_fail) {
  if (!(p_fail > 0.0 && p_fail <= 1.0 / 3.0 + 1e-12))
    throw std::invalid_argument("p_fail must lie in (0, 1/3]");
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / p_fail) / std::log(3.0) - 1e-9));
}

template <QueryOracle O>
Verdict test_subgraph_freeness_amplified(O& oracle, std::size_t n, const PatternInfo& info,
                                         double eps, double p_fail, Seed seed) {
  const auto start = oracle.query_count();
  const auto runs = amplification_runs(p_fail);
  for (std::size_t r = 0; r < runs; ++r) {
    auto v = test_subgraph_freeness(oracle, n, info, eps, split(seed, r));
    if (v.rejected()) {
      v.queries_used = oracle.query_count() - start;
      v.details.emplace_back("runs", double(r + 1));
      return v;
    }
  }
  auto v = make_verdict(Decision::Accept, Reason::NoWitness, oracle.query_count() - start);
  v.details.emplace_back("runs", double(runs));
  return v;
}

/// Tests each weak component of h; rejects only if every component is found.
template <QueryOracle O>
Verdict test_h_freeness_multi(O& oracle, std::size_t n, const DirectedGraph& h, double eps,
                              Seed seed) {
  const auto start = oracle.query_count();
  const auto info = analyze_pattern(h);
  const double p_fail = 1.0 / (3.0 * info.l);
  for (std::size_t c = 0; c < info.l; ++c) {
    const auto part = analyze_pattern(info.components[c]);
    const auto v = test_subgraph_freeness_amplified(oracle, n, part, eps, p_fail, split(seed, c));
    if (v.accepted()) {
      auto out = make_verdict(Decision::Accept, v.reason, oracle.query_count() - start);
      out.details.emplace_back("component", double(c));
      return out;
    }
  }
  return make_verdict(Decision::Reject, Reason::OccurrenceFound, oracle.query_count() - start);
}

}  // namespace dptest
