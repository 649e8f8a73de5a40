#pragma once

// Bounded-degree directed graphs stored as ordered adjacency lists, plus the
// plain-text graph file format.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dptest {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class GraphErrorKind {
  DegreeViolation,
  IdOutOfRange,
  SelfLoop,
  DuplicateEdge,
  InvalidParameter,
  ParseError,
};

inline const char* to_string(GraphErrorKind k) {
  switch (k) {
    case GraphErrorKind::DegreeViolation: return "degree-violation";
    case GraphErrorKind::IdOutOfRange: return "id-out-of-range";
    case GraphErrorKind::SelfLoop: return "self-loop";
    case GraphErrorKind::DuplicateEdge: return "duplicate-edge";
    case GraphErrorKind::InvalidParameter: return "invalid-parameter";
    case GraphErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, const std::string& what,
             std::optional<Edge> edge = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        edge_(edge) {}

  GraphErrorKind kind() const noexcept { return kind_; }
  /// The offending edge, when the error is tied to one.
  const std::optional<Edge>& edge() const noexcept { return edge_; }

 private:
  GraphErrorKind kind_;
  std::optional<Edge> edge_;
};

/**
 * Immutable digraph on vertices 0..n-1 where every vertex has in- and
 * outdegree at most `degree_bound()`. The order of each adjacency list is
 * part of the value: slot i of vertex v is the i-th edge inserted with
 * source v.
 */
class DirectedGraph {
 public:
  DirectedGraph() = default;

  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t degree_bound() const noexcept { return degree_bound_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[v]; }
  const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  bool has_edge(Vertex u, Vertex v) const {
    for (Vertex w : out_[u])
      if (w == v) return true;
    return false;
  }

  /// Edges in canonical order: by source, then adjacency slot.
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (Vertex u = 0; u < out_.size(); ++u)
      for (Vertex v : out_[u]) result.emplace_back(u, v);
    return result;
  }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.degree_bound_ == b.degree_bound_ && a.out_ == b.out_;
  }

  friend DirectedGraph build_graph(std::size_t n, std::size_t degree_bound,
                                   const std::vector<Edge>& edges);

 private:
  std::size_t degree_bound_ = 1;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/**
 * Validates and builds a graph. Adjacency order follows `edges`. Throws
 * GraphError naming the offending edge on degree overflow, out-of-range ids,
 * self-loops and repeated identical edges. Opposite edges u->v, v->u are
 * allowed.
 */
inline DirectedGraph build_graph(std::size_t n, std::size_t degree_bound,
                                 const std::vector<Edge>& edges) {
  if (degree_bound < 1)
    throw GraphError(GraphErrorKind::InvalidParameter, "degree bound must be >= 1");
  DirectedGraph g;
  g.degree_bound_ = degree_bound;
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  for (const auto& e : edges) {
    const auto [u, v] = e;
    const std::string tag = "(" + std::to_string(u) + "," + std::to_string(v) + ")";
    if (u >= n || v >= n)
      throw GraphError(GraphErrorKind::IdOutOfRange, "edge " + tag, e);
    if (u == v) throw GraphError(GraphErrorKind::SelfLoop, "edge " + tag, e);
    if (g.has_edge(u, v))
      throw GraphError(GraphErrorKind::DuplicateEdge, "edge " + tag, e);
    if (g.out_[u].size() >= degree_bound)
      throw GraphError(GraphErrorKind::DegreeViolation,
                       "outdegree of " + std::to_string(u) + " exceeds bound at edge " + tag, e);
    if (g.in_[v].size() >= degree_bound)
      throw GraphError(GraphErrorKind::DegreeViolation,
                       "indegree of " + std::to_string(v) + " exceeds bound at edge " + tag, e);
    g.out_[u].push_back(v);
    g.in_[v].push_back(u);
    ++g.edge_count_;
  }
  return g;
}

/// Smallest degree bound (>= 1) that admits `edges` on n vertices.
inline std::size_t minimal_degree_bound(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> outd(n, 0), ind(n, 0);
  std::size_t best = 1;
  for (auto [u, v] : edges) {
    if (u < n) best = std::max(best, ++outd[u]);
    if (v < n) best = std::max(best, ++ind[v]);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Text format: first line "n D", then one "u v" per line in adjacency order.
// Lines whose first non-blank character is '#' are comments.

inline std::string serialize_graph(const DirectedGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.degree_bound() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline DirectedGraph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& msg) {
    throw GraphError(GraphErrorKind::ParseError,
                     "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long a = -1, b = -1;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) fail("expected two integers");
    if (a < 0 || b < 0) fail("negative value");
    if (!header) {
      header = {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    } else {
      if (a > UINT32_MAX || b > UINT32_MAX) fail("vertex id too large");
      edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
  }
  if (!header) throw GraphError(GraphErrorKind::ParseError, "missing header line");
  return build_graph(header->first, header->second, edges);
}

inline DirectedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

}  // namespace dptest
