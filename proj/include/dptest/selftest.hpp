#pragma once

// Exhaustive and randomized structural checks behind `dptest selftest`.
// Each suite reports how many cases it ran and how many violated the claim.

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dptest/connectivity.hpp"
#include "dptest/exact.hpp"
#include "dptest/generators.hpp"

namespace dptest::selftest {

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  bool passed() const { return violations == 0; }
};

/// Orientation of the undirected cycle 0-1-...-(n-1)-0 given by the bits of `mask`.
inline DirectedGraph oriented_cycle(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % n);
    edges.push_back((mask >> i) & 1 ? Edge{b, a} : Edge{a, b});
  }
  return build_graph(n, 2, edges);
}

/// Every orientation of every cycle with 3 <= n <= max_n has balance 0.
inline SuiteResult cycle_balance(std::size_t max_n = 12) {
  SuiteResult r{"cycle-balance"};
  for (std::size_t n = 3; n <= max_n; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      ++r.cases;
      r.violations += exact_balance(oriented_cycle(n, mask)) != 0;
    }
  return r;
}

/// Tree orientations: balance <= leaves - 1 and the leaf-count formula.
inline SuiteResult tree_balance(std::size_t count = 1000, std::size_t max_n = 10, Seed seed = Seed{1}) {
  SuiteResult r{"tree-balance"};
  for (std::size_t c = 0; c < count; ++c) {
    const auto n = 2 + c % (max_n - 1);
    const auto t = gen_tree_orientation(n, split(seed, c));
    std::int64_t leaves = 0;
    for (Vertex v = 0; v < n; ++v) leaves += undirected_degree(t, v) == 1;
    ++r.cases;
    r.violations += std::int64_t(exact_balance(t)) > leaves - 1 || tree_leaf_formula(t) != leaves;
  }
  return r;
}

/**
 * Random simple orientation of a weakly connected graph with n vertices and
 * m >= n - 1 edges: a random spanning tree plus random extra pairs.
 */
inline DirectedGraph random_connected_orientation(std::size_t n, std::size_t m, Seed seed) {
  auto rng = make_rng(seed);
  std::set<std::pair<Vertex, Vertex>> pairs;
  std::vector<Edge> edges;
  auto add = [&](Vertex a, Vertex b) {
    if (a == b || !pairs.emplace(std::min(a, b), std::max(a, b)).second) return;
    edges.push_back(coin(rng, 0.5) ? Edge{a, b} : Edge{b, a});
  };
  for (Vertex v = 1; v < n; ++v) add(v, static_cast<Vertex>(uniform_index(rng, v)));
  const auto max_pairs = n * (n - 1) / 2;
  while (edges.size() < std::min(m, max_pairs))
    add(static_cast<Vertex>(uniform_index(rng, n)), static_cast<Vertex>(uniform_index(rng, n)));
  return build_graph(n, std::max<std::size_t>(1, minimal_degree_bound(n, edges)), edges);
}

/// Weakly connected graphs with m >= n edges: balance <= 2 + (m - n) - 2|C3| + sum of C3 degrees.
inline SuiteResult general_balance(std::size_t count = 1000, Seed seed = Seed{2}) {
  SuiteResult r{"general-balance"};
  for (std::size_t c = 0; c < count; ++c) {
    auto rng = make_rng(split(seed, 2 * c));
    const auto n = 3 + uniform_index(rng, 18);
    const auto m = n + uniform_index(rng, n / 2 + 1);
    const auto g = random_connected_orientation(n, m, split(seed, 2 * c + 1));
    std::int64_t bound = 2 + std::int64_t(g.edge_count()) - std::int64_t(n);
    for (Vertex v = 0; v < n; ++v) {
      const auto d = std::int64_t(undirected_degree(g, v));
      if (d >= 3) bound += d - 2;
    }
    ++r.cases;
    r.violations += std::int64_t(exact_balance(g)) > bound;
  }
  return r;
}

/// Local compact components agree with the whole-graph evaluation.
inline SuiteResult compact_locality(std::size_t count = 100, Seed seed = Seed{3}) {
  SuiteResult r{"compact-locality"};
  for (std::size_t c = 0; c < count; ++c) {
    const auto n = 6 + c % 40;
    const auto D = 1 + c % 3;
    const auto g = gen_random_bounded(n, D, std::min(n * D, n + c % 13), split(seed, c));
    for (std::size_t L : {1, 2, 3, 5}) {
      CompactComponentParams p;
      p.eps = 0.5;
      p.alpha = 1.0;
      p.size_bound = L;
      p.verify_depth = 2 * L;
      for (Vertex v = 0; v < n; ++v) {
        OutEdgeOracle o(g);
        ++r.cases;
        r.violations += compact_component(o, v, p) != exact_compact_component(g, v, L);
      }
    }
  }
  return r;
}

/// Exact expected collision counts fed into the recursion give back the histogram.
inline SuiteResult recursion_identity(std::size_t count = 100, Seed seed = Seed{4}) {
  SuiteResult r{"recursion-identity"};
  auto rng = make_rng(seed);
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t D = 1 + c % 4;
    std::vector<double> n(D + 1), p(D + 1), e(D + 1, 0.0);
    for (std::size_t j = 1; j <= D; ++j) n[j] = double(uniform_index(rng, 5000));
    for (std::size_t i = 1; i <= D; ++i) p[i] = 0.02 + 0.98 * std::uniform_real_distribution<>()(rng);
    for (std::size_t i = 1; i <= D; ++i)
      for (std::size_t j = i; j <= D; ++j)
        e[i] += n[j] * std::exp(log_binomial(j, i)) * std::pow(p[i], double(i)) *
                std::pow(1 - p[i], double(j - i));
    const auto est = reachable_recursion(e, p);
    ++r.cases;
    for (std::size_t i = 1; i <= D; ++i)
      r.violations += std::abs(est[i] - n[i]) > 1e-9 * std::max(1.0, n[i]);
  }
  return r;
}

/// Classes A and B share the ratio of first to second frequency moments.
inline SuiteResult sequence_moments() {
  SuiteResult r{"sequence-moments"};
  for (std::size_t n = 32; n <= 640; n += 32) {
    const auto a = frequency_moments(gen_sequence_class_A(n));
    const auto b = frequency_moments(gen_sequence_class_B(n));
    ++r.cases;
    r.violations += a.sum * b.sum_sq != b.sum * a.sum_sq;
  }
  return r;
}

inline std::vector<SuiteResult> run_all() {
  return {cycle_balance(), tree_balance(), general_balance(), compact_locality(),
          recursion_identity(), sequence_moments()};
}

}  // namespace dptest::selftest
