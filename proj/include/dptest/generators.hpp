#pragma once

// Instance families: positive instances, constructively far instances,
// balance fixtures and the 3-value sequence classes. Every generator is a
// pure function of its parameters and seed.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dptest/exact.hpp"
#include "dptest/graph.hpp"
#include "dptest/random.hpp"

namespace dptest {

class GeneratorError : public std::invalid_argument {
 public:
  GeneratorError(std::string code, const std::string& what)
      : std::invalid_argument(code + ": " + what), code_(std::move(code)) {}
  /// Stable kebab-case tag such as "parameter-infeasible".
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0.
inline DirectedGraph gen_cycle(std::size_t n, std::size_t degree_bound = 1) {
  if (n < 2) throw GeneratorError("parameter-infeasible", "cycle needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return build_graph(n, degree_bound, edges);
}

/// t = floor(eps*D*n) + 1, guarding against representation error in eps.
inline std::size_t bender_ron_outer_count(std::size_t n, double eps, std::size_t degree_bound) {
  return static_cast<std::size_t>(std::floor(eps * degree_bound * n + 1e-9)) + 1;
}

/**
 * A directed cycle on vertices 0..n-t-1 and outer vertices n-t..n-1. Outer
 * vertex j has a single edge into cycle vertex j, so no cycle vertex gets
 * more than one edge from outside.
 */
inline DirectedGraph gen_bender_ron_far(std::size_t n, double eps, std::size_t degree_bound) {
  if (!(eps > 0.0 && eps < 1.0))
    throw GeneratorError("parameter-infeasible", "eps must lie in (0, 1)");
  if (degree_bound < 2) throw GeneratorError("parameter-infeasible", "degree bound must be >= 2");
  const auto t = bender_ron_outer_count(n, eps, degree_bound);
  if (t + 2 > n || t > n - t)
    throw GeneratorError("parameter-infeasible",
                         "need floor(eps*D*n)+1 distinct attachment points on a cycle of "
                         "length n - t >= 2; got t=" + std::to_string(t) + ", n=" +
                             std::to_string(n));
  const auto cycle = n - t;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cycle; ++i)
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % cycle));
  for (std::size_t j = 0; j < t; ++j)
    edges.emplace_back(static_cast<Vertex>(cycle + j), static_cast<Vertex>(j % cycle));
  return build_graph(n, degree_bound, edges);
}

/**
 * m distinct edges drawn by rejection from pairs that keep both degree caps
 * and avoid self-loops. A run that gets stuck restarts from scratch.
 */
inline DirectedGraph gen_random_bounded(std::size_t n, std::size_t degree_bound, std::size_t m,
                                        Seed seed, std::size_t max_restarts = 1000) {
  if (degree_bound < 1) throw GeneratorError("parameter-infeasible", "degree bound must be >= 1");
  if (m > degree_bound * n || (n > 0 && m > n * (n - 1)))
    throw GeneratorError("parameter-infeasible", "too many edges for n and D");
  if (m == 0) return build_graph(n, degree_bound, {});

  std::uint64_t attempts = 0;
  for (std::size_t restart = 0; restart < max_restarts; ++restart) {
    auto rng = make_rng(split(seed, restart));
    std::vector<std::size_t> outd(n, 0), ind(n, 0);
    std::vector<std::vector<bool>> present;  // dense only for small n
    std::map<std::pair<Vertex, Vertex>, bool> sparse;
    const bool dense = n <= 4096;
    if (dense) present.assign(n, std::vector<bool>(n, false));
    auto has = [&](Vertex u, Vertex v) { return dense ? present[u][v] : sparse.count({u, v}) > 0; };

    std::vector<Vertex> open_out(n), open_in(n);  // vertices below the cap
    std::iota(open_out.begin(), open_out.end(), 0u);
    std::iota(open_in.begin(), open_in.end(), 0u);
    auto close = [](std::vector<Vertex>& open, Vertex x) {
      for (auto& y : open)
        if (y == x) {
          y = open.back();
          open.pop_back();
          return;
        }
    };

    std::vector<Edge> edges;
    std::size_t misses = 0;
    bool stuck = false;
    while (edges.size() < m && !stuck) {
      ++attempts;
      const auto u = open_out[uniform_index(rng, open_out.size())];
      const auto v = open_in[uniform_index(rng, open_in.size())];
      if (u != v && !has(u, v)) {
        edges.emplace_back(u, v);
        if (dense) present[u][v] = true; else sparse[{u, v}] = true;
        if (++outd[u] == degree_bound) close(open_out, u);
        if (++ind[v] == degree_bound) close(open_in, v);
        misses = 0;
        continue;
      }
      if (++misses < 64 * (open_out.size() * open_in.size() + 1)) continue;
      // Many misses in a row: check whether any admissible pair is left.
      stuck = true;
      for (auto a : open_out)
        for (auto b : open_in)
          if (a != b && !has(a, b)) stuck = false;
      misses = 0;
    }
    if (!stuck) return build_graph(n, degree_bound, edges);
  }
  throw GeneratorError("infeasible-after-max-retries",
                       "gave up after " + std::to_string(max_restarts) + " restarts and " +
                           std::to_string(attempts) + " attempts");
}

/// Path 0 - 1 - ... - n-1 with each edge oriented by a fair coin.
inline DirectedGraph gen_line_orientation(std::size_t n, Seed seed) {
  if (n < 2) throw GeneratorError("parameter-infeasible", "line needs n >= 2");
  auto rng = make_rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i)
    edges.push_back(coin(rng, 0.5) ? Edge{i, i + 1} : Edge{i + 1, i});
  return build_graph(n, minimal_degree_bound(n, edges), edges);
}

/// Uniform-attachment tree (vertex i joins a uniform earlier vertex), coin-oriented.
inline DirectedGraph gen_tree_orientation(std::size_t n, Seed seed) {
  if (n < 2) throw GeneratorError("parameter-infeasible", "tree needs n >= 2");
  auto rng = make_rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) {
    const auto parent = static_cast<Vertex>(uniform_index(rng, i));
    edges.push_back(coin(rng, 0.5) ? Edge{parent, i} : Edge{i, parent});
  }
  return build_graph(n, minimal_degree_bound(n, edges), edges);
}

// ---------------------------------------------------------------------------

/// Items A_1..A_m over values 1..l.
struct ValueSequence {
  std::vector<std::uint32_t> items;
};

/**
 * Frequency moments of X = multiplicity of a uniformly random distinct value,
 * kept as exact integer sums: E[X] = sum/values, E[X^2] = sum_sq/values.
 */
struct FrequencyMoments {
  std::uint64_t values = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;

  double mean() const { return static_cast<double>(sum) / values; }
  double second() const { return static_cast<double>(sum_sq) / values; }
};

inline FrequencyMoments frequency_moments(const ValueSequence& a) {
  std::map<std::uint32_t, std::uint64_t> freq;
  for (auto x : a.items) ++freq[x];
  FrequencyMoments fm;
  for (auto [value, f] : freq) {
    ++fm.values;
    fm.sum += f;
    fm.sum_sq += f * f;
  }
  return fm;
}

namespace detail {

inline ValueSequence canonical_shuffle(std::vector<std::uint32_t> items, std::size_t n) {
  auto rng = make_rng(Seed{0x5eed0000ULL ^ n});
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform_index(rng, i)]);
  return ValueSequence{std::move(items)};
}

inline void require_multiple_of_32(std::size_t n) {
  if (n == 0 || n % 32 != 0)
    throw GeneratorError("n-not-multiple-of-32", "n=" + std::to_string(n));
}

}  // namespace detail

/// n/2 distinct values, each exactly twice.
inline ValueSequence gen_sequence_class_A(std::size_t n) {
  detail::require_multiple_of_32(n);
  std::vector<std::uint32_t> items;
  for (std::uint32_t v = 1; v <= n / 2; ++v) items.insert(items.end(), 2, v);
  return detail::canonical_shuffle(std::move(items), n);
}

/// 17n/32 distinct values: n/32 three times, 13n/32 twice, 3n/32 once.
inline ValueSequence gen_sequence_class_B(std::size_t n) {
  detail::require_multiple_of_32(n);
  const std::size_t unit = n / 32;
  std::vector<std::uint32_t> items;
  std::uint32_t v = 1;
  for (std::size_t i = 0; i < unit; ++i, ++v) items.insert(items.end(), 3, v);
  for (std::size_t i = 0; i < 13 * unit; ++i, ++v) items.insert(items.end(), 2, v);
  for (std::size_t i = 0; i < 3 * unit; ++i, ++v) items.push_back(v);
  return detail::canonical_shuffle(std::move(items), n);
}

/**
 * Centers 0..n'-1 stand for v_1..v_n', outers n'..2n'-1 for u_1..u_n'.
 * Item i becomes the edge u_i -> v_{A_i}.
 */
inline DirectedGraph gen_star_forest(const ValueSequence& a) {
  const auto np = a.items.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < np; ++i) {
    const auto value = a.items[i];
    if (value < 1 || value > np)
      throw GeneratorError("value-out-of-range",
                           "item " + std::to_string(i + 1) + " = " + std::to_string(value));
    edges.emplace_back(static_cast<Vertex>(np + i), value - 1);
  }
  return build_graph(2 * np, minimal_degree_bound(2 * np, edges), edges);
}

// ---------------------------------------------------------------------------

/// The four orientations of a 3-star, indexed by the number of outgoing edges.
enum class StarOrientation { In3 = 0, In2Out1 = 1, In1Out2 = 2, Out3 = 3 };

inline const char* to_string(StarOrientation s) {
  switch (s) {
    case StarOrientation::In3: return "in3";
    case StarOrientation::In2Out1: return "in2out1";
    case StarOrientation::In1Out2: return "in1out2";
    case StarOrientation::Out3: return "out3";
  }
  return "unknown";
}

/// Center 0, leaves 1..3; the first `outgoing` leaves are pointed at.
inline DirectedGraph star_pattern(StarOrientation s) {
  const int outgoing = static_cast<int>(s);
  std::vector<Edge> edges;
  for (Vertex leaf = 1; leaf <= 3; ++leaf)
    edges.push_back(static_cast<int>(leaf) <= outgoing ? Edge{0, leaf} : Edge{leaf, 0});
  return build_graph(4, 3, edges);
}

/**
 * `copies` disjoint embeddings of `pattern` on randomly chosen vertex ids.
 * The remaining vertices form a directed cycle, which is kept only when no
 * weak component of the pattern occurs in it, so the filler adds no
 * occurrence.
 */
inline DirectedGraph gen_planted_stars(std::size_t n, std::size_t degree_bound, std::size_t copies,
                                       const DirectedGraph& pattern, Seed seed) {
  const auto m = pattern.vertex_count();
  if (copies * m > n)
    throw GeneratorError("capacity-exceeded", std::to_string(copies) + " copies of a " +
                                                  std::to_string(m) + "-vertex pattern need more than n=" +
                                                  std::to_string(n) + " vertices");
  for (Vertex a = 0; a < m; ++a)
    if (pattern.out_degree(a) > degree_bound || pattern.in_degree(a) > degree_bound)
      throw GeneratorError("parameter-infeasible", "pattern exceeds degree bound");

  auto rng = make_rng(seed);
  std::vector<Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), 0u);
  for (std::size_t i = n; i > 1; --i) std::swap(ids[i - 1], ids[uniform_index(rng, i)]);

  std::vector<Edge> edges;
  for (std::size_t c = 0; c < copies; ++c)
    for (auto [a, b] : pattern.edges()) edges.emplace_back(ids[c * m + a], ids[c * m + b]);

  const std::size_t rest = n - copies * m;
  if (rest >= 2 && degree_bound >= 1) {
    const auto filler = gen_cycle(rest);
    const auto host = to_local(filler);
    bool clean = true;
    for (const auto& comp : weak_components(pattern)) {
      const auto part = induced_subgraph(pattern, comp);
      if (OccurrenceMatcher(part).find(host)) clean = false;
    }
    if (clean)
      for (std::size_t i = 0; i < rest; ++i)
        edges.emplace_back(ids[copies * m + i], ids[copies * m + (i + 1) % rest]);
  }
  return build_graph(n, degree_bound, edges);
}

}  // namespace dptest
