#pragma once

// Two-sided tester for freeness of all 3-star orientations in weakly
// connected graphs, with its estimators: edge count, out-2-star count and
// in-edge collisions of a Bernoulli edge sample.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dptest/exact.hpp"
#include "dptest/generators.hpp"
#include "dptest/graph.hpp"
#include "dptest/oracle.hpp"
#include "dptest/random.hpp"
#include "dptest/subgraph_freeness.hpp"

namespace dptest {

/**
 * Oracle over G', the graph without the larger-source half of every double
 * edge: u -> w is hidden when u > w and w -> u exists. Slots of G' are the
 * surviving base entries, compacted in base order. Base answers are cached,
 * so each base slot is queried at most once per view.
 */
template <QueryOracle O>
class DedupView {
 public:
  explicit DedupView(O& base) : base_(base) {}

  std::optional<Vertex> out_neighbor(Vertex v, std::size_t i) {
    if (i < 1 || i > degree_bound()) throw std::invalid_argument("slot out of range");
    auto& e = entries_[v];
    while (e.kept.size() < i && !e.done) {
      const auto w = base_.out_neighbor(v, e.next_slot);
      if (!w) {
        e.done = true;
        break;
      }
      if (!(*w < v && points_to(*w, v))) e.kept.push_back(*w);
      if (++e.next_slot > degree_bound()) e.done = true;
    }
    if (i <= e.kept.size()) return e.kept[i - 1];
    return std::nullopt;
  }

  std::size_t degree_bound() const { return base_.degree_bound(); }
  std::uint64_t query_count() const { return base_.query_count(); }

 private:
  bool points_to(Vertex w, Vertex v) {
    for (std::size_t j = 1; j <= degree_bound(); ++j) {
      const auto x = base_.out_neighbor(w, j);
      if (!x) return false;
      if (*x == v) return true;
    }
    return false;
  }

  struct Entry {
    std::vector<Vertex> kept;
    std::size_t next_slot = 1;
    bool done = false;
  };

  SlotCache<O> base_;
  std::unordered_map<Vertex, Entry> entries_;
};

// ---------------------------------------------------------------------------

inline std::size_t edge_count_samples(std::size_t degree_bound, double eps) {
  return static_cast<std::size_t>(std::ceil(2.0 * degree_bound / eps - 1e-9));
}

/// (Dn/s) times the number of filled slots among s uniform (vertex, slot) probes.
template <QueryOracle O>
double estimate_edge_count(O& oracle, std::size_t n, double eps, Seed seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const auto D = oracle.degree_bound();
  const auto s = edge_count_samples(D, eps);
  auto rng = make_rng(seed);
  std::uint64_t hits = 0;
  for (std::size_t j = 0; j < s; ++j) {
    const auto v = static_cast<Vertex>(uniform_index(rng, n));
    const auto slot = 1 + uniform_index(rng, D);
    hits += oracle.out_neighbor(v, slot).has_value();
  }
  return static_cast<double>(D) * n / s * hits;
}

/// Sampled edges; every edge of the graph is included independently with probability p.
struct EdgeSample {
  std::vector<Edge> edges;
  double p = 0;
  std::uint64_t slots_probed = 0;
};

struct EdgeSampleResult {
  EdgeSample sample;
  /// More than `edge_cap` edges, or more than `slot_cap` slots, were drawn.
  bool oversample = false;
};

/**
 * K ~ Binomial(nD, p) distinct uniform slots, each probed once. Since every
 * edge occupies exactly one slot this is exact per-edge Bernoulli(p).
 * Sampling stops as soon as either cap is exceeded.
 */
template <QueryOracle O>
EdgeSampleResult sample_edges(O& oracle, std::size_t n, double p, double edge_cap, double slot_cap,
                              Seed seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
  const auto D = oracle.degree_bound();
  const std::uint64_t slots = static_cast<std::uint64_t>(n) * D;
  auto rng = make_rng(seed);
  EdgeSampleResult r;
  r.sample.p = p;
  const auto k = binomial(rng, slots, p);
  if (static_cast<double>(k) > slot_cap) {
    r.oversample = true;
    return r;
  }
  for (auto code : sample_distinct(rng, slots, k)) {
    const auto v = static_cast<Vertex>(code / D);
    const auto w = oracle.out_neighbor(v, 1 + code % D);
    ++r.sample.slots_probed;
    if (!w) continue;
    r.sample.edges.emplace_back(v, *w);
    if (static_cast<double>(r.sample.edges.size()) > edge_cap) {
      r.oversample = true;
      return r;
    }
  }
  return r;
}

template <QueryOracle O>
EdgeSample sample_edges(O& oracle, std::size_t n, double p, Seed seed) {
  return sample_edges(oracle, n, p, INFINITY, INFINITY, seed).sample;
}

struct CollisionHistogram {
  /// Target vertex -> number of sampled edges pointing at it.
  std::map<Vertex, std::uint64_t> multiplicity;
  /// Targets hit at least twice, each counted once.
  std::uint64_t collisions = 0;

  /// Number of targets hit exactly i times.
  std::uint64_t exactly(std::uint64_t i) const {
    std::uint64_t c = 0;
    for (const auto& [t, k] : multiplicity) c += k == i;
    return c;
  }
};

inline CollisionHistogram collision_histogram(const EdgeSample& sample) {
  CollisionHistogram h;
  for (auto [u, v] : sample.edges) ++h.multiplicity[v];
  for (const auto& [t, k] : h.multiplicity) h.collisions += k >= 2;
  return h;
}

inline std::size_t out2star_samples(double eps) {
  return static_cast<std::size_t>(std::ceil(48.0 / eps - 1e-9));
}

/// (n/s1) times the sampled vertices with a second out-neighbour, plus eps*n/12.
template <QueryOracle O>
double estimate_out_2stars(O& oracle, std::size_t n, double eps, Seed seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const auto s1 = out2star_samples(eps);
  auto rng = make_rng(seed);
  std::uint64_t count = 0;
  for (std::size_t j = 0; j < s1; ++j) {
    const auto v = static_cast<Vertex>(uniform_index(rng, n));
    if (oracle.degree_bound() >= 2) count += oracle.out_neighbor(v, 2).has_value();
  }
  return static_cast<double>(n) / s1 * count + eps * n / 12.0;
}

// ---------------------------------------------------------------------------

enum class ExactFallback { Auto, On, Off };

struct StarTestPlan {
  double eps_edges;       ///< proximity handed to the edge-count estimate
  double eps_subgraph;    ///< proximity handed to each subgraph tester
  double p;               ///< edge sampling probability
  double edge_cap;        ///< sampled edges above this reject
  double slot_cap;        ///< sampled slots above this reject
  bool exact;             ///< read the whole graph instead
};

inline StarTestPlan star_test_plan(std::size_t n, std::size_t degree_bound, double eps,
                                   ExactFallback mode) {
  StarTestPlan plan;
  const double D = static_cast<double>(degree_bound);
  const double root_n = std::sqrt(static_cast<double>(n));
  plan.eps_edges = eps / 16.0;
  plan.eps_subgraph = eps / (192.0 * D);
  plan.p = std::min(1.0, 128.0 * D / (std::pow(eps, 1.5) * root_n));
  plan.edge_cap = 2048.0 * D * root_n / std::pow(eps, 1.5);
  plan.slot_cap = D * plan.edge_cap;
  plan.exact = mode == ExactFallback::On ||
               (mode == ExactFallback::Auto && plan.edge_cap >= D * static_cast<double>(n));
  return plan;
}

inline constexpr std::array<StarOrientation, 3> kStarsWithOutEdge = {
    StarOrientation::In2Out1, StarOrientation::In1Out2, StarOrientation::Out3};

/// Closed-form bound on base-oracle queries for one run.
inline std::uint64_t star3_query_cap(std::size_t n, std::size_t degree_bound, double eps,
                                     ExactFallback mode) {
  const auto plan = star_test_plan(n, degree_bound, eps, mode);
  const double D = static_cast<double>(degree_bound);
  const double whole = static_cast<double>(n) * D;
  if (plan.exact) return static_cast<std::uint64_t>(whole);
  double view = edge_count_samples(degree_bound, plan.eps_edges) + out2star_samples(eps) +
                std::min(std::floor(plan.slot_cap), whole);
  for (auto s : kStarsWithOutEdge)
    view += amplification_runs(1.0 / 6.0) *
            static_cast<double>(subgraph_query_cap(n, degree_bound, analyze_pattern(star_pattern(s)),
                                                   plan.eps_subgraph));
  // One view probe resolves at most D base slots of v and D of each smaller neighbour.
  return static_cast<std::uint64_t>(std::min(whole, view * D * (D + 1)));
}

/**
 * Reads every adjacency list and rejects iff some vertex has at least three
 * distinct neighbours.
 */
template <QueryOracle O>
bool exact_any_3star(O& oracle, std::size_t n) {
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 1; i <= oracle.degree_bound(); ++i) {
      const auto w = oracle.out_neighbor(v, i);
      if (!w) break;
      adj[v].push_back(*w);
      adj[*w].push_back(v);
    }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    if (std::unique(list.begin(), list.end()) - list.begin() >= 3) return true;
  }
  return false;
}

/// Expects a weakly connected input; that precondition is not checked.
template <QueryOracle O>
Verdict test_3star_freeness(O& oracle, std::size_t n, double eps, Seed seed,
                            ExactFallback mode = ExactFallback::Auto) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const auto start = oracle.query_count();
  const auto plan = star_test_plan(n, oracle.degree_bound(), eps, mode);
  std::vector<std::pair<std::string, double>> details;
  auto finish = [&](Decision d, Reason r) {
    auto v = make_verdict(d, r, oracle.query_count() - start);
    v.details = details;
    return v;
  };

  if (plan.exact) {
    details.emplace_back("exact", 1);
    return finish(exact_any_3star(oracle, n) ? Decision::Reject : Decision::Accept,
                  Reason::ExactCensus);
  }

  DedupView<O> view(oracle);
  const double nn = static_cast<double>(n);

  const double m_hat = estimate_edge_count(view, n, plan.eps_edges, split(seed, 0));
  details.emplace_back("m_hat", m_hat);
  if (m_hat > nn + eps * nn / 16.0) return finish(Decision::Reject, Reason::EdgeCountExcess);

  for (std::size_t j = 0; j < kStarsWithOutEdge.size(); ++j) {
    const auto info = analyze_pattern(star_pattern(kStarsWithOutEdge[j]));
    const auto v = test_subgraph_freeness_amplified(view, n, info, plan.eps_subgraph, 1.0 / 6.0,
                                                    split(seed, 1 + j));
    if (v.rejected()) {
      details.emplace_back("orientation", double(kStarsWithOutEdge[j]));
      return finish(Decision::Reject, Reason::OccurrenceFound);
    }
  }

  const double k_hat = estimate_out_2stars(view, n, eps, split(seed, 4));
  details.emplace_back("k_hat", k_hat);

  const auto drawn = sample_edges(view, n, plan.p, plan.edge_cap, plan.slot_cap, split(seed, 5));
  details.emplace_back("p", plan.p);
  details.emplace_back("sampled_edges", double(drawn.sample.edges.size()));
  if (drawn.oversample) return finish(Decision::Reject, Reason::Oversample);

  const auto hist = collision_histogram(drawn.sample);
  const double c_hat = static_cast<double>(hist.collisions) / (plan.p * plan.p);
  details.emplace_back("c_hat", c_hat);
  if (c_hat < 1.5 * eps * nn) return finish(Decision::Accept, Reason::FewCollisions);

  const double ratio = c_hat / k_hat;
  details.emplace_back("ratio", ratio);
  if (ratio > 1.0 + eps / 24.0) return finish(Decision::Reject, Reason::RatioExcess);
  return finish(Decision::Accept, Reason::RatioWithinBound);
}

}  // namespace dptest
