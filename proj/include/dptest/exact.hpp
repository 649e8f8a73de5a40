#pragma once

// Whole-graph reference computations. These read the full graph and are the
// ground truth that the sublinear testers are checked against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dptest/graph.hpp"

namespace dptest {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

/**
 * Tarjan's algorithm, iterative. Returns the component index of every
 * vertex; indices are in reverse topological order of the condensation
 * (sink components first).
 */
inline std::vector<std::uint32_t> scc_labels(const Adjacency& adj, std::size_t* count = nullptr) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<std::uint32_t, std::size_t>> call;  // vertex, next edge
  std::uint32_t next_index = 0, next_comp = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0 && index[v] == kUnset) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < adj[v].size()) {
        const auto w = adj[v][edge++];
        if (index[w] == kUnset) {
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      const auto finished = v;
      call.pop_back();
      if (!call.empty()) {
        auto parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  if (count) *count = next_comp;
  return comp;
}

inline Adjacency adjacency_of(const DirectedGraph& g) {
  Adjacency adj(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    adj[v].assign(g.out_neighbors(v).begin(), g.out_neighbors(v).end());
  return adj;
}

struct SccSummary {
  /// Components sorted by smallest member; members ascending.
  std::vector<std::vector<Vertex>> components;
  /// Empty when the graph is strongly connected.
  std::vector<std::size_t> source_ids;
  std::vector<std::size_t> sink_ids;
  std::size_t dead_end_count = 0;

  bool strongly_connected() const { return components.size() == 1; }
};

inline SccSummary exact_scc_summary(const DirectedGraph& g) {
  const auto n = g.vertex_count();
  std::size_t count = 0;
  const auto label = scc_labels(adjacency_of(g), &count);

  // Renumber so components are ordered by their smallest vertex.
  std::vector<std::size_t> order(count, SIZE_MAX);
  SccSummary s;
  for (Vertex v = 0; v < n; ++v) {
    if (order[label[v]] == SIZE_MAX) {
      order[label[v]] = s.components.size();
      s.components.emplace_back();
    }
    s.components[order[label[v]]].push_back(v);
  }
  std::vector<bool> has_in(count, false), has_out(count, false);
  for (auto [u, v] : g.edges()) {
    if (label[u] == label[v]) continue;
    has_out[order[label[u]]] = true;
    has_in[order[label[v]]] = true;
  }
  // A strongly connected graph has no dead ends.
  if (s.components.size() == 1) return s;
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    if (!has_in[c]) s.source_ids.push_back(c);
    if (!has_out[c]) s.sink_ids.push_back(c);
    if (!has_in[c] || !has_out[c]) ++s.dead_end_count;
  }
  return s;
}

inline bool is_weakly_connected(const DirectedGraph& g) {
  const auto n = g.vertex_count();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<Vertex> todo{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const auto v = todo.back();
    todo.pop_back();
    for (const auto* list : {&g.out_neighbors(v), &g.in_neighbors(v)})
      for (Vertex w : *list)
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          todo.push_back(w);
        }
  }
  return reached == n;
}

/// Weakly connected components, each ascending, ordered by smallest member.
inline std::vector<std::vector<Vertex>> weak_components(const DirectedGraph& g) {
  const auto n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Vertex>> result;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp, todo{s};
    seen[s] = true;
    while (!todo.empty()) {
      const auto v = todo.back();
      todo.pop_back();
      comp.push_back(v);
      for (const auto* list : {&g.out_neighbors(v), &g.in_neighbors(v)})
        for (Vertex w : *list)
          if (!seen[w]) {
            seen[w] = true;
            todo.push_back(w);
          }
    }
    std::sort(comp.begin(), comp.end());
    result.push_back(std::move(comp));
  }
  return result;
}

/// Subgraph of g induced by `vertices`, relabelled 0..k-1 in the given order.
inline DirectedGraph induced_subgraph(const DirectedGraph& g, const std::vector<Vertex>& vertices) {
  std::unordered_map<Vertex, Vertex> local;
  for (Vertex i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  std::vector<Edge> edges;
  for (Vertex u : vertices)
    for (Vertex v : g.out_neighbors(u))
      if (auto it = local.find(v); it != local.end()) edges.emplace_back(local[u], it->second);
  return build_graph(vertices.size(), g.degree_bound(), edges);
}

// ---------------------------------------------------------------------------

/// Counts n_0..n_D of vertices with exactly i incoming edges.
struct IndegreeHistogram {
  std::vector<std::uint64_t> counts;

  /// Vertices with at least one incoming edge.
  std::uint64_t reachable() const {
    return std::accumulate(counts.begin() + (counts.empty() ? 0 : 1), counts.end(),
                           std::uint64_t{0});
  }
  std::uint64_t vertices() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  }
  std::uint64_t edges() const {
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) e += i * counts[i];
    return e;
  }
};

inline IndegreeHistogram exact_indegree_histogram(const DirectedGraph& g) {
  IndegreeHistogram h;
  h.counts.assign(g.degree_bound() + 1, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++h.counts[g.in_degree(v)];
  return h;
}

/// Number of distinct vertices adjacent to v in either direction.
inline std::size_t undirected_degree(const DirectedGraph& g, Vertex v) {
  std::vector<Vertex> nb(g.out_neighbors(v).begin(), g.out_neighbors(v).end());
  nb.insert(nb.end(), g.in_neighbors(v).begin(), g.in_neighbors(v).end());
  std::sort(nb.begin(), nb.end());
  return static_cast<std::size_t>(std::unique(nb.begin(), nb.end()) - nb.begin());
}

inline std::uint64_t exact_balance(const DirectedGraph& g) {
  std::int64_t out2 = 0, in2 = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out2 += g.out_degree(v) >= 2;
    in2 += g.in_degree(v) >= 2;
  }
  return static_cast<std::uint64_t>(out2 > in2 ? out2 - in2 : in2 - out2);
}

struct StarCensus {
  std::uint64_t in2 = 0;
  std::uint64_t out2 = 0;
  std::uint64_t in3 = 0;
  std::uint64_t out3 = 0;
  /// Vertices with undirected degree >= 3 (double edges merged).
  std::uint64_t any3 = 0;
};

inline StarCensus exact_star_census(const DirectedGraph& g) {
  StarCensus c;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    c.in2 += g.in_degree(v) >= 2;
    c.out2 += g.out_degree(v) >= 2;
    c.in3 += g.in_degree(v) >= 3;
    c.out3 += g.out_degree(v) >= 3;
    c.any3 += undirected_degree(g, v) >= 3;
  }
  return c;
}

/// Number of leaves predicted for a tree: 2 - 2|C3| + sum of deg over C3.
inline std::int64_t tree_leaf_formula(const DirectedGraph& g) {
  std::int64_t value = 2;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto d = static_cast<std::int64_t>(undirected_degree(g, v));
    if (d >= 3) value += d - 2;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Subgraph occurrences (injective, not necessarily induced).

/**
 * Sparse digraph over arbitrary vertex ids with both adjacency directions.
 * Used for explored parts of a large graph; local indices are dense.
 */
class LocalDigraph {
 public:
  std::uint32_t add_vertex(Vertex v) {
    auto [it, fresh] = index_.try_emplace(v, static_cast<std::uint32_t>(ids_.size()));
    if (fresh) {
      ids_.push_back(v);
      out_.emplace_back();
      in_.emplace_back();
    }
    return it->second;
  }

  /// Returns false when the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    const auto a = add_vertex(u);
    const auto b = add_vertex(v);
    for (auto x : out_[a])
      if (x == b) return false;
    out_[a].push_back(b);
    in_[b].push_back(a);
    return true;
  }

  std::optional<std::uint32_t> local(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_local_edge(std::uint32_t a, std::uint32_t b) const {
    for (auto x : out_[a])
      if (x == b) return true;
    return false;
  }

  std::size_t size() const { return ids_.size(); }
  Vertex id(std::uint32_t local) const { return ids_[local]; }
  const std::vector<std::uint32_t>& out(std::uint32_t a) const { return out_[a]; }
  const std::vector<std::uint32_t>& in(std::uint32_t a) const { return in_[a]; }
  const Adjacency& out_adjacency() const { return out_; }

 private:
  std::unordered_map<Vertex, std::uint32_t> index_;
  std::vector<Vertex> ids_;
  Adjacency out_, in_;
};

inline LocalDigraph to_local(const DirectedGraph& g) {
  LocalDigraph h;
  for (Vertex v = 0; v < g.vertex_count(); ++v) h.add_vertex(v);
  for (auto [u, v] : g.edges()) h.add_edge(u, v);
  return h;
}

/**
 * Backtracking search for an injective homomorphism pattern -> host.
 * Candidates are tried in ascending host id, so results are deterministic.
 */
class OccurrenceMatcher {
 public:
  explicit OccurrenceMatcher(const DirectedGraph& pattern) : pattern_(&pattern) {
    const auto m = pattern.vertex_count();
    undirected_.assign(m, {});
    for (auto [a, b] : pattern.edges()) {
      undirected_[a].push_back(b);
      undirected_[b].push_back(a);
    }
  }

  /// First occurrence (pattern vertex -> host id), avoiding `excluded` host ids.
  std::optional<std::vector<Vertex>> find(const LocalDigraph& host,
                                          const std::unordered_set<Vertex>* excluded = nullptr) const {
    const auto m = pattern_->vertex_count();
    if (m == 0) return std::vector<Vertex>{};
    // Root at the highest-degree pattern vertex.
    std::uint32_t root = 0;
    for (std::uint32_t a = 1; a < m; ++a)
      if (undirected_[a].size() > undirected_[root].size()) root = a;
    Search s(*this, host, excluded, order_from({root}));
    return s.run({});
  }

  /// Some occurrence that maps at least one pattern edge onto host edge (u, w).
  std::optional<std::vector<Vertex>> find_through_edge(const LocalDigraph& host, Vertex u,
                                                       Vertex w) const {
    const auto lu = host.local(u), lw = host.local(w);
    if (!lu || !lw) return std::nullopt;
    for (auto [a, b] : pattern_->edges()) {
      Search s(*this, host, nullptr, order_from({a, b}));
      if (auto r = s.run({*lu, *lw})) return r;
    }
    return std::nullopt;
  }

  /// Some occurrence using host vertex v (useful for edgeless patterns).
  std::optional<std::vector<Vertex>> find_through_vertex(const LocalDigraph& host, Vertex v) const {
    const auto lv = host.local(v);
    if (!lv) return std::nullopt;
    for (std::uint32_t a = 0; a < pattern_->vertex_count(); ++a) {
      Search s(*this, host, nullptr, order_from({a}));
      if (auto r = s.run({*lv})) return r;
    }
    return std::nullopt;
  }

 private:
  // Pattern vertices in search order: the given prefix, then BFS over the
  // undirected pattern, then remaining components.
  std::vector<std::uint32_t> order_from(std::vector<std::uint32_t> prefix) const {
    const auto m = pattern_->vertex_count();
    std::vector<bool> placed(m, false);
    for (auto a : prefix) placed[a] = true;
    std::vector<std::uint32_t> order = prefix;
    for (std::size_t head = 0; order.size() < m; ++head) {
      if (head == order.size()) {
        for (std::uint32_t a = 0; a < m; ++a)
          if (!placed[a]) {
            placed[a] = true;
            order.push_back(a);
            break;
          }
      }
      for (auto b : undirected_[order[head]])
        if (!placed[b]) {
          placed[b] = true;
          order.push_back(b);
        }
    }
    return order;
  }

  struct Search {
    const OccurrenceMatcher& self;
    const LocalDigraph& host;
    const std::unordered_set<Vertex>* excluded;
    std::vector<std::uint32_t> order;
    std::vector<std::int64_t> image;  // pattern vertex -> host local, -1 unset
    std::vector<bool> used;

    Search(const OccurrenceMatcher& m, const LocalDigraph& h, const std::unordered_set<Vertex>* ex,
           std::vector<std::uint32_t> ord)
        : self(m), host(h), excluded(ex), order(std::move(ord)),
          image(m.pattern_->vertex_count(), -1), used(h.size(), false) {}

    bool fits(std::uint32_t a, std::uint32_t x) const {
      if (used[x]) return false;
      if (excluded && excluded->count(host.id(x))) return false;
      const auto& p = *self.pattern_;
      if (host.out(x).size() < p.out_degree(a) || host.in(x).size() < p.in_degree(a)) return false;
      for (auto b : p.out_neighbors(a))
        if (image[b] >= 0 && !host.has_local_edge(x, static_cast<std::uint32_t>(image[b])))
          return false;
      for (auto b : p.in_neighbors(a))
        if (image[b] >= 0 && !host.has_local_edge(static_cast<std::uint32_t>(image[b]), x))
          return false;
      return true;
    }

    std::vector<std::uint32_t> candidates(std::uint32_t a) const {
      const auto& p = *self.pattern_;
      std::vector<std::uint32_t> c;
      bool anchored = false;
      for (auto b : p.out_neighbors(a))
        if (image[b] >= 0) {
          c = host.in(static_cast<std::uint32_t>(image[b]));
          anchored = true;
          break;
        }
      if (!anchored)
        for (auto b : p.in_neighbors(a))
          if (image[b] >= 0) {
            c = host.out(static_cast<std::uint32_t>(image[b]));
            anchored = true;
            break;
          }
      if (!anchored) {
        c.resize(host.size());
        std::iota(c.begin(), c.end(), 0u);
      }
      std::sort(c.begin(), c.end(),
                [&](std::uint32_t x, std::uint32_t y) { return host.id(x) < host.id(y); });
      return c;
    }

    std::optional<std::vector<Vertex>> run(const std::vector<std::uint32_t>& fixed) {
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (!fits(order[i], fixed[i])) return std::nullopt;
        image[order[i]] = fixed[i];
        used[fixed[i]] = true;
      }
      if (!extend(fixed.size())) return std::nullopt;
      std::vector<Vertex> result(image.size());
      for (std::size_t a = 0; a < image.size(); ++a)
        result[a] = host.id(static_cast<std::uint32_t>(image[a]));
      return result;
    }

    bool extend(std::size_t depth) {
      if (depth == order.size()) return true;
      const auto a = order[depth];
      for (auto x : candidates(a)) {
        if (!fits(a, x)) continue;
        image[a] = x;
        used[x] = true;
        if (extend(depth + 1)) return true;
        used[x] = false;
        image[a] = -1;
      }
      return false;
    }
  };

  const DirectedGraph* pattern_;
  Adjacency undirected_;
};

struct OccurrenceCount {
  bool contains = false;
  /// Size of a greedily built vertex-disjoint occurrence set.
  std::uint64_t greedy_disjoint = 0;
};

inline constexpr std::size_t kMaxExactPatternSize = 8;

/// Throws std::invalid_argument (pattern-too-large) above 8 pattern vertices.
inline OccurrenceCount exact_count_disjoint_occurrences(const DirectedGraph& g,
                                                        const DirectedGraph& h) {
  if (h.vertex_count() > kMaxExactPatternSize)
    throw std::invalid_argument("pattern-too-large: at most 8 pattern vertices supported");
  const auto host = to_local(g);
  OccurrenceMatcher matcher(h);
  OccurrenceCount result;
  std::unordered_set<Vertex> used;
  while (auto occ = matcher.find(host, &used)) {
    ++result.greedy_disjoint;
    used.insert(occ->begin(), occ->end());
    if (h.vertex_count() == 0) break;
  }
  result.contains = result.greedy_disjoint > 0;
  return result;
}

// ---------------------------------------------------------------------------
// Compact components, evaluated on the whole graph.

/// BFS distances from (or, reversed, to) a set of sources; SIZE_MAX if unreachable.
inline std::vector<std::size_t> bfs_distances(const DirectedGraph& g,
                                              const std::vector<Vertex>& sources, bool reverse) {
  std::vector<std::size_t> dist(g.vertex_count(), SIZE_MAX);
  std::vector<Vertex> frontier;
  for (auto s : sources)
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const auto v = frontier[head];
    for (auto w : reverse ? g.in_neighbors(v) : g.out_neighbors(v))
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        frontier.push_back(w);
      }
  }
  return dist;
}

inline bool is_strongly_connected(const DirectedGraph& g) {
  std::size_t count = 0;
  scc_labels(adjacency_of(g), &count);
  return count <= 1;
}

/**
 * C(v) for paths of length at most `size_bound`. The only possible compact
 * component containing v is R(v) = {w : d(v,w) <= L and d(w,v) <= L}; it is
 * returned when it satisfies the three conditions, otherwise {v}.
 */
inline std::vector<Vertex> exact_compact_component(const DirectedGraph& g, Vertex v,
                                                   std::size_t size_bound) {
  const auto L = size_bound;
  if (L == 0) return {v};
  const auto from = bfs_distances(g, {v}, false);
  const auto to = bfs_distances(g, {v}, true);
  std::vector<Vertex> r;
  for (Vertex w = 0; w < g.vertex_count(); ++w)
    if (from[w] <= L && to[w] <= L) r.push_back(w);
  if (r.size() > L || !is_strongly_connected(induced_subgraph(g, r))) return {v};
  const auto out_of = bfs_distances(g, r, false);
  const auto into = bfs_distances(g, r, true);
  for (Vertex w = 0; w < g.vertex_count(); ++w)
    if (out_of[w] != 0 && out_of[w] <= L && into[w] <= L) return {v};
  return r;
}

struct Contraction {
  /// Compact components ordered by representative (smallest member).
  std::vector<std::vector<Vertex>> components;
  /// Vertex -> index into `components`.
  std::vector<std::size_t> index;
  /// C(G) on vertices 0..components.size()-1.
  DirectedGraph graph;
};

inline Contraction exact_contraction(const DirectedGraph& g, std::size_t size_bound) {
  const auto n = g.vertex_count();
  Contraction c;
  c.index.assign(n, SIZE_MAX);
  for (Vertex v = 0; v < n; ++v) {
    if (c.index[v] != SIZE_MAX) continue;
    auto comp = exact_compact_component(g, v, size_bound);
    for (auto u : comp) c.index[u] = c.components.size();
    c.components.push_back(std::move(comp));
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < c.components.size(); ++a) {
    std::vector<Vertex> targets;
    for (auto u : c.components[a])
      for (auto w : g.out_neighbors(u))
        if (c.index[w] != a) targets.push_back(static_cast<Vertex>(c.index[w]));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (auto b : targets) edges.emplace_back(static_cast<Vertex>(a), b);
  }
  const auto k = c.components.size();
  c.graph = build_graph(k, minimal_degree_bound(k, edges), edges);
  return c;
}

}  // namespace dptest
