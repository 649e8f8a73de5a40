#pragma once

// Strong connectivity under out-edge queries: sink detection, compact
// components and the contracted graph, vertex-count and reachable-vertex
// estimators, and the D = 1 special case.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dptest/exact.hpp"
#include "dptest/graph.hpp"
#include "dptest/oracle.hpp"
#include "dptest/random.hpp"

namespace dptest {

namespace detail {

inline std::size_t ceil_div(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }
inline std::size_t floor_of(double x) { return static_cast<std::size_t>(std::floor(x + 1e-9)); }

inline void require_proximity(double eps, const char* name) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sink components.

struct SinkTestPlan {
  std::size_t samples;  ///< ceil(4 / (beta D))
  std::size_t budget;   ///< vertices expanded per exploration, ceil(2 / (beta D))
};

inline SinkTestPlan sink_test_plan(std::size_t degree_bound, double beta) {
  const double bd = beta * degree_bound;
  return {detail::ceil_div(4.0 / bd), detail::ceil_div(2.0 / bd)};
}

inline std::uint64_t sink_query_cap(std::size_t n, std::size_t degree_bound, double beta) {
  const auto plan = sink_test_plan(degree_bound, beta);
  const double bound = double(plan.samples) * plan.budget * degree_bound;
  return static_cast<std::uint64_t>(std::min(bound, double(n) * degree_bound));
}

/**
 * Rejects iff some bounded exploration runs out of frontier and the explored
 * set is strongly connected, i.e. it is a whole sink component.
 */
template <QueryOracle O>
Verdict test_sink_freeness(O& oracle, std::size_t n, double beta, Seed seed) {
  detail::require_proximity(beta, "beta");
  const auto start = oracle.query_count();
  const auto plan = sink_test_plan(oracle.degree_bound(), beta);
  auto rng = make_rng(seed);
  SlotCache<O> cache(oracle);

  for (std::size_t j = 0; j < plan.samples; ++j) {
    const auto root = static_cast<Vertex>(uniform_index(rng, n));
    LocalDigraph explored;
    explored.add_vertex(root);
    std::deque<Vertex> queue{root};
    std::unordered_set<Vertex> seen{root};
    std::size_t expanded = 0;
    while (!queue.empty() && expanded < plan.budget) {
      const auto v = queue.front();
      queue.pop_front();
      ++expanded;
      for (auto w : cache.out_neighbors(v)) {
        explored.add_edge(v, w);
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
    if (!queue.empty()) continue;
    std::size_t components = 0;
    scc_labels(explored.out_adjacency(), &components);
    if (components == 1) {
      auto v = make_verdict(Decision::Reject, Reason::SinkFound, oracle.query_count() - start);
      v.details = {{"sink_size", double(explored.size())}, {"sample", double(j)}};
      return v;
    }
  }
  return make_verdict(Decision::Accept, Reason::NoWitness, oracle.query_count() - start);
}

// ---------------------------------------------------------------------------
// Compact components.

struct CompactComponentParams {
  double eps = 0;
  double alpha = 0;
  std::size_t size_bound = 0;    ///< floor((3+alpha)/(eps D))
  std::size_t verify_depth = 0;  ///< floor((6+2alpha)/(eps D)), always >= 2 size_bound
};

inline CompactComponentParams make_compact_params(double eps, double alpha,
                                                  std::size_t degree_bound) {
  if (!(eps > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("eps and alpha must be positive");
  CompactComponentParams p;
  p.eps = eps;
  p.alpha = alpha;
  p.size_bound = detail::floor_of((3.0 + alpha) / (eps * degree_bound));
  p.verify_depth = std::max(detail::floor_of((6.0 + 2.0 * alpha) / (eps * degree_bound)),
                            2 * p.size_bound);
  return p;
}

/// Upper bound on queries to compute one C(v) from scratch.
inline double compact_component_cost(std::size_t degree_bound, const CompactComponentParams& p) {
  double first = 0, second = 0, level = 1;
  for (std::size_t j = 0; j < p.verify_depth; ++j, level *= degree_bound) {
    if (j < p.size_bound) first += level;
    second += level;
  }
  return degree_bound * (first + double(p.size_bound) * second);
}

/**
 * C(v) from local exploration. Explore from v expanding depth <= L-1; the
 * candidate U is the strongly connected component of v in what was seen. If
 * |U| <= L, explore from U expanding depth < verify_depth and look for an
 * outside vertex with paths of length <= L from U and back into U. Returns U
 * sorted ascending, or {v}.
 */
template <QueryOracle O>
std::vector<Vertex> compact_component(SlotCache<O>& cache, Vertex v, const CompactComponentParams& p) {
  const auto L = p.size_bound;
  if (L == 0) return {v};

  LocalDigraph near;
  near.add_vertex(v);
  std::unordered_map<Vertex, std::size_t> depth{{v, 0}};
  std::deque<Vertex> queue{v};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    if (depth[x] + 1 > L) continue;
    for (auto w : cache.out_neighbors(x)) {
      near.add_edge(x, w);
      if (depth.try_emplace(w, depth[x] + 1).second) queue.push_back(w);
    }
  }
  const auto label = scc_labels(near.out_adjacency());
  const auto own = label[*near.local(v)];
  std::vector<Vertex> u;
  for (std::uint32_t a = 0; a < near.size(); ++a)
    if (label[a] == own) u.push_back(near.id(a));
  if (u.size() > L) return {v};
  std::sort(u.begin(), u.end());

  LocalDigraph around;
  depth.clear();
  for (auto x : u) {
    around.add_vertex(x);
    depth[x] = 0;
    queue.push_back(x);
  }
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    if (depth[x] >= p.verify_depth) continue;
    for (auto w : cache.out_neighbors(x)) {
      around.add_edge(x, w);
      if (depth.try_emplace(w, depth[x] + 1).second) queue.push_back(w);
    }
  }
  // Distance back into U inside the explored part, up to L.
  std::vector<std::size_t> back(around.size(), SIZE_MAX);
  std::vector<std::uint32_t> frontier;
  for (auto x : u) {
    const auto a = *around.local(x);
    back[a] = 0;
    frontier.push_back(a);
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const auto a = frontier[head];
    if (back[a] >= L) continue;
    for (auto b : around.in(a))
      if (back[b] == SIZE_MAX) {
        back[b] = back[a] + 1;
        frontier.push_back(b);
      }
  }
  for (std::uint32_t a = 0; a < around.size(); ++a) {
    const auto d = depth[around.id(a)];
    if (back[a] != SIZE_MAX && d != 0 && d <= L) return {v};
  }
  return u;
}

template <QueryOracle O>
std::vector<Vertex> compact_component(O& oracle, Vertex v, const CompactComponentParams& p) {
  SlotCache<O> cache(oracle);
  return compact_component(cache, v, p);
}

class RedrawBudgetExhausted : public std::runtime_error {
 public:
  RedrawBudgetExhausted() : std::runtime_error("redraw-budget-exhausted") {}
};

/**
 * Query access to C(G) built on the fly from the base oracle. Components are
 * memoized per instance and every member of a computed component shares it.
 */
template <QueryOracle O>
class ContractedOracle {
 public:
  ContractedOracle(O& base, std::size_t n, CompactComponentParams params,
                   std::uint64_t max_draws = std::uint64_t{1} << 24)
      : cache_(base), n_(n), params_(params), max_draws_(max_draws) {}

  const std::vector<Vertex>& component(Vertex v) {
    if (auto it = memo_.find(v); it != memo_.end()) return *it->second;
    auto comp = std::make_shared<const std::vector<Vertex>>(compact_component(cache_, v, params_));
    for (auto u : *comp) memo_.emplace(u, comp);
    memo_.emplace(v, comp);
    return *memo_.at(v);
  }

  /// Smallest member of C(v).
  Vertex representative(Vertex v) { return component(v).front(); }

  /// Uniform vertex of C(G), as its representative.
  Vertex sample_vertex(Rng& rng) {
    for (std::uint64_t draw = 0; draw < max_draws_; ++draw) {
      const auto v = static_cast<Vertex>(uniform_index(rng, n_));
      const auto size = component(v).size();
      if (size == 1 || coin(rng, 1.0 / double(size))) return representative(v);
    }
    throw RedrawBudgetExhausted();
  }

  /// Representatives of components reached by an edge leaving C(rep), ascending.
  std::vector<Vertex> out_components(Vertex rep) {
    const auto comp = component(rep);
    std::vector<Vertex> out;
    for (auto u : comp)
      for (auto w : cache_.out_neighbors(u))
        if (!std::binary_search(comp.begin(), comp.end(), w)) out.push_back(representative(w));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /**
   * Whether base slot (u, i) is the canonical slot of the contracted edge it
   * realizes: the smallest (vertex, slot) in C(u) pointing into C(target).
   */
  bool canonical_slot(Vertex u, std::size_t i, Vertex target) {
    const auto& from = component(u);
    const auto& into = component(target);
    for (auto x : from)
      for (std::size_t j = 1; j <= base_degree_bound(); ++j) {
        const auto y = cache_.out_neighbor(x, j);
        if (!y) break;
        if (std::binary_search(into.begin(), into.end(), *y)) return x == u && j == i;
      }
    return false;
  }

  /// Degree bound of C(G): ceil((3+alpha)/eps).
  std::size_t degree_bound() const { return detail::ceil_div((3.0 + params_.alpha) / params_.eps); }
  std::size_t base_degree_bound() const { return cache_.degree_bound(); }
  std::size_t base_vertex_count() const { return n_; }
  std::uint64_t query_count() const { return cache_.query_count(); }
  const CompactComponentParams& params() const { return params_; }
  SlotCache<O>& cache() { return cache_; }

 private:
  SlotCache<O> cache_;
  std::size_t n_;
  CompactComponentParams params_;
  std::uint64_t max_draws_;
  std::unordered_map<Vertex, std::shared_ptr<const std::vector<Vertex>>> memo_;
};

// ---------------------------------------------------------------------------
// Vertex count of C(G).

inline std::size_t vertex_number_samples(std::size_t degree_bound, double eps) {
  const double d = eps * degree_bound;
  return detail::ceil_div(3.0 / (d * d));
}

/// (n/s) times the sum of 1/|C(v)| over s uniform base vertices.
template <QueryOracle O>
double estimate_vertex_number(ContractedOracle<O>& cg, std::size_t n, double eps, Seed seed) {
  detail::require_proximity(eps, "eps");
  const auto s = vertex_number_samples(cg.base_degree_bound(), eps);
  auto rng = make_rng(seed);
  double x = 0;
  for (std::size_t j = 0; j < s; ++j)
    x += 1.0 / double(cg.component(static_cast<Vertex>(uniform_index(rng, n))).size());
  return double(n) / double(s) * x;
}

// ---------------------------------------------------------------------------
// Vertices with at least one incoming edge.

/**
 * Constants of the i-way collision estimator for a graph with degree bound D.
 * Vectors are indexed by i = 1..D (index 0 unused). `a` may be astronomically
 * large, so it is also kept as a logarithm.
 */
struct EstimatorConfig {
  std::size_t degree_bound = 0;
  double eps = 0;
  double scale = 1;
  double a = 0;
  double log_a = 0;
  std::vector<double> p;      ///< min(1, scale * a^(D/i) * n^(-1/i))
  std::vector<double> t;      ///< 16 * D * n * (unclamped p_i): abort threshold
  std::vector<double> delta;  ///< eps * a^D / (2^(i+4) * D^(2i-1))
};

inline double log_binomial(std::size_t j, std::size_t i) {
  return std::lgamma(double(j) + 1) - std::lgamma(double(i) + 1) - std::lgamma(double(j - i) + 1);
}

/**
 * Smallest integer a with 2 exp(-eps^3 a^D / (3 2^(3i+15) D^(6i-1) C(j,i)^2))
 * <= 1/(8 D^2) for all 1 <= i <= j <= D, returned as log(a).
 */
inline double estimator_log_a(std::size_t degree_bound, double eps) {
  const double D = double(degree_bound);
  const double target = std::log(std::log(16.0 * D * D));
  double need = -INFINITY;  // lower bound on D log a
  for (std::size_t i = 1; i <= degree_bound; ++i)
    for (std::size_t j = i; j <= degree_bound; ++j) {
      const double denom = std::log(3.0) + (3.0 * i + 15.0) * std::log(2.0) +
                           (6.0 * i - 1.0) * std::log(D) + 2.0 * log_binomial(j, i);
      need = std::max(need, target + denom - 3.0 * std::log(eps));
    }
  const double root = need / D;
  if (root < 40.0) {
    double a = std::ceil(std::exp(root) - 1e-9);
    while (a > 1 && D * std::log(a - 1) >= need) a -= 1;
    return std::log(std::max(a, 1.0));
  }
  return root;  // beyond exact integer precision; log of the real threshold
}

inline EstimatorConfig make_estimator_config(std::size_t n, std::size_t degree_bound, double eps,
                                             double scale = 1.0) {
  if (degree_bound < 1) throw std::invalid_argument("degree bound must be >= 1");
  detail::require_proximity(eps, "eps");
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  EstimatorConfig c;
  c.degree_bound = degree_bound;
  c.eps = eps;
  c.scale = scale;
  c.log_a = estimator_log_a(degree_bound, eps);
  c.a = std::exp(c.log_a);
  const double D = double(degree_bound);
  const double log_n = std::log(double(std::max<std::size_t>(n, 1)));
  c.p.assign(degree_bound + 1, 0.0);
  c.t.assign(degree_bound + 1, 0.0);
  c.delta.assign(degree_bound + 1, 0.0);
  for (std::size_t i = 1; i <= degree_bound; ++i) {
    const double log_p = std::log(scale) + D / double(i) * c.log_a - log_n / double(i);
    c.p[i] = log_p >= 0 ? 1.0 : std::exp(log_p);
    c.t[i] = std::exp(std::log(16.0 * D) + log_n + log_p);
    c.delta[i] = std::exp(std::log(eps) + D * c.log_a - (double(i) + 4) * std::log(2.0) -
                          (2.0 * i - 1.0) * std::log(D));
  }
  return c;
}

/**
 * n_hat_i = c_i / p_i^i - sum_{j>i} C(j,i) n_hat_j (1-p_i)^(j-i), for i = D..1.
 * `c` and `p` are indexed 1..D.
 */
inline std::vector<double> reachable_recursion(const std::vector<double>& c,
                                               const std::vector<double>& p) {
  const auto D = c.size() - 1;
  std::vector<double> est(D + 1, 0.0);
  for (std::size_t i = D; i >= 1; --i) {
    double value = c[i] / std::pow(p[i], double(i));
    for (std::size_t j = i + 1; j <= D; ++j)
      value -= std::exp(log_binomial(j, i)) * est[j] * std::pow(1.0 - p[i], double(j - i));
    est[i] = value;
  }
  return est;
}

struct ReachableEstimate {
  double estimate = 0;
  /// Stopped early because a level sampled more than t_i edges; estimate = n.
  bool aborted = false;
  std::vector<double> c_hat;  ///< indexed 1..D
  std::vector<double> n_hat;  ///< indexed 1..D
};

/**
 * Shared loop. `sample(i, p, cap, rng)` returns the target of every sampled
 * edge (one entry per edge), or nothing when more than `cap` were drawn.
 */
template <class Sampler>
ReachableEstimate estimate_reachable_with(Sampler&& sample, std::size_t n, double eps,
                                          const EstimatorConfig& cfg, Seed seed) {
  detail::require_proximity(eps, "eps");
  const auto D = cfg.degree_bound;
  ReachableEstimate r;
  r.c_hat.assign(D + 1, 0.0);
  for (std::size_t i = D; i >= 1; --i) {
    auto rng = make_rng(split(seed, i));
    const auto targets = sample(cfg.p[i], cfg.t[i], rng);
    if (!targets) {
      r.aborted = true;
      r.estimate = double(n);
      return r;
    }
    std::unordered_map<Vertex, std::size_t> hits;
    for (auto t : *targets) ++hits[t];
    for (const auto& [t, k] : hits) r.c_hat[i] += k == i;
  }
  r.n_hat = reachable_recursion(r.c_hat, cfg.p);
  r.estimate = eps * double(D) * double(n) / 16.0;
  for (std::size_t i = 1; i <= D; ++i) r.estimate += r.n_hat[i];
  return r;
}

/// Slot sampling on the base graph; the slot count is capped like the edge count.
template <QueryOracle O>
ReachableEstimate estimate_reachable_vertices(O& oracle, std::size_t n, double eps,
                                              const EstimatorConfig& cfg, Seed seed) {
  if (cfg.degree_bound != oracle.degree_bound())
    throw std::invalid_argument("estimator configured for a different degree bound");
  const auto D = oracle.degree_bound();
  auto sample = [&](double p, double cap, Rng& rng) -> std::optional<std::vector<Vertex>> {
    const std::uint64_t slots = std::uint64_t(n) * D;
    const auto k = binomial(rng, slots, p);
    if (double(k) > cap) return std::nullopt;
    std::vector<Vertex> targets;
    for (auto code : sample_distinct(rng, slots, k))
      if (auto w = oracle.out_neighbor(static_cast<Vertex>(code / D), 1 + code % D))
        targets.push_back(*w);
    return targets;
  };
  return estimate_reachable_with(sample, n, eps, cfg, seed);
}

/**
 * The same estimator on C(G). A base slot stands for the contracted edge it
 * realizes only if it is that edge's canonical slot, so each edge of C(G) is
 * kept independently with probability p.
 */
template <QueryOracle O>
ReachableEstimate estimate_reachable_vertices(ContractedOracle<O>& cg, std::size_t n, double eps,
                                              const EstimatorConfig& cfg, Seed seed) {
  const auto D = cg.base_degree_bound();
  auto sample = [&](double p, double cap, Rng& rng) -> std::optional<std::vector<Vertex>> {
    const std::uint64_t slots = std::uint64_t(n) * D;
    const auto k = binomial(rng, slots, p);
    if (double(k) > cap) return std::nullopt;
    std::vector<Vertex> targets;
    for (auto code : sample_distinct(rng, slots, k)) {
      const auto u = static_cast<Vertex>(code / D);
      const std::size_t slot = 1 + code % D;
      const auto w = cg.cache().out_neighbor(u, slot);
      if (!w) continue;
      if (cg.representative(u) == cg.representative(*w)) continue;
      if (cg.canonical_slot(u, slot, *w)) targets.push_back(cg.representative(*w));
    }
    return targets;
  };
  return estimate_reachable_with(sample, n, eps, cfg, seed);
}

inline std::uint64_t reachable_query_cap(std::size_t n, std::size_t degree_bound,
                                         const EstimatorConfig& cfg) {
  const double whole = double(n) * degree_bound;
  double total = 0;
  // Levels probe independently, so each may read every slot again.
  for (std::size_t i = 1; i <= cfg.degree_bound; ++i) total += std::min(whole, std::floor(cfg.t[i]));
  return static_cast<std::uint64_t>(total);
}

// ---------------------------------------------------------------------------
// Strong connectivity.

struct StrongConnectivityPlan {
  bool trivial;             ///< eps D >= 3 + alpha
  double beta;              ///< sink tester proximity
  double eps_vertices;      ///< vertex-count proximity
  std::size_t contracted_degree;
  double eps_reachable;     ///< reachable-vertex proximity
  double margin;            ///< alpha/(12(3+alpha)) eps D n
  CompactComponentParams params;
};

inline StrongConnectivityPlan strong_connectivity_plan(std::size_t n, std::size_t degree_bound,
                                                       double eps, double alpha) {
  detail::require_proximity(eps, "eps");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double D = double(degree_bound);
  StrongConnectivityPlan s;
  s.trivial = eps * D >= 3.0 + alpha;
  s.beta = alpha * eps / (6.0 * (3.0 + alpha));
  s.eps_vertices = alpha / (24.0 * (3.0 + alpha)) * eps;
  s.contracted_degree = detail::ceil_div((3.0 + alpha) / eps);
  s.eps_reachable = alpha * eps * eps * D / (6.0 * (3.0 + alpha) * (3.0 + alpha));
  s.margin = alpha / (12.0 * (3.0 + alpha)) * eps * D * double(n);
  s.params = make_compact_params(eps, alpha, degree_bound);
  return s;
}

inline std::uint64_t strong_connectivity_query_cap(std::size_t n, std::size_t degree_bound,
                                                   double eps, double alpha, double scale = 1.0) {
  const auto plan = strong_connectivity_plan(n, degree_bound, eps, alpha);
  if (plan.trivial) return 0;
  const double whole = double(n) * degree_bound;
  const double cc = compact_component_cost(degree_bound, plan.params);
  const auto cfg = make_estimator_config(n, plan.contracted_degree, plan.eps_reachable, scale);
  double total = double(sink_query_cap(n, degree_bound, plan.beta));
  total += std::min(whole, vertex_number_samples(degree_bound, plan.eps_vertices) * cc);
  // Per sampled slot: the probe, C of both ends and the canonical scan.
  const double per_slot = 1.0 + 2.0 * cc + double(plan.params.size_bound) * degree_bound;
  for (std::size_t i = 1; i <= cfg.degree_bound; ++i)
    total += std::min(whole, std::min(std::floor(cfg.t[i]), whole) * per_slot);
  return static_cast<std::uint64_t>(std::min(whole, total));
}

template <QueryOracle O>
Verdict test_strong_connectivity(O& oracle, std::size_t n, double eps, double alpha, Seed seed,
                                 double scale = 1.0) {
  const auto start = oracle.query_count();
  const auto plan = strong_connectivity_plan(n, oracle.degree_bound(), eps, alpha);
  if (plan.trivial) return make_verdict(Decision::Accept, Reason::TrivialAccept, 0);

  SlotCache<O> cache(oracle);
  auto sink = test_sink_freeness(cache, n, plan.beta, split(seed, 0));
  if (sink.rejected()) {
    sink.queries_used = oracle.query_count() - start;
    return sink;
  }

  ContractedOracle<SlotCache<O>> cg(cache, n, plan.params);
  const double n_hat = estimate_vertex_number(cg, n, plan.eps_vertices, split(seed, 1));
  const auto cfg = make_estimator_config(n, plan.contracted_degree, plan.eps_reachable, scale);
  const auto m = estimate_reachable_vertices(cg, n, plan.eps_reachable, cfg, split(seed, 2));

  const bool reject = m.estimate < n_hat - plan.margin;
  auto v = make_verdict(reject ? Decision::Reject : Decision::Accept,
                        reject ? Reason::ReachableDeficit : Reason::NoWitness,
                        oracle.query_count() - start);
  v.details = {{"n_hat", n_hat},
               {"m_hat", m.estimate},
               {"threshold", n_hat - plan.margin},
               {"aborted", m.aborted ? 1.0 : 0.0},
               {"scale", scale}};
  return v;
}

// ---------------------------------------------------------------------------
// D = 1.

struct Degree1Plan {
  std::size_t samples;  ///< ceil(4/eps)
  std::size_t steps;    ///< ceil(2/eps)
};

inline Degree1Plan degree1_plan(double eps) {
  return {detail::ceil_div(4.0 / eps), detail::ceil_div(2.0 / eps)};
}

inline std::uint64_t degree1_query_cap(std::size_t n, double eps) {
  const auto plan = degree1_plan(eps);
  return std::min<std::uint64_t>(std::uint64_t(plan.samples) * plan.steps,
                                 std::uint64_t(plan.samples) * n);
}

/**
 * Every weak component of a D = 1 graph is a directed path or cycle, so a
 * forward walk either reaches a sink or returns to its start.
 */
template <QueryOracle O>
Verdict test_strong_connectivity_deg1(O& oracle, std::size_t n, double eps, Seed seed) {
  if (oracle.degree_bound() != 1) throw std::invalid_argument("requires degree bound 1");
  detail::require_proximity(eps, "eps");
  const auto start = oracle.query_count();
  const auto plan = degree1_plan(eps);
  auto rng = make_rng(seed);
  for (std::size_t j = 0; j < plan.samples; ++j) {
    const auto root = static_cast<Vertex>(uniform_index(rng, n));
    auto at = root;
    for (std::size_t step = 1; step <= std::min(plan.steps, n); ++step) {
      const auto next = oracle.out_neighbor(at, 1);
      if (!next) return make_verdict(Decision::Reject, Reason::SinkFound, oracle.query_count() - start);
      at = *next;
      if (at == root) {
        if (step < n)
          return make_verdict(Decision::Reject, Reason::ShortCycle, oracle.query_count() - start);
        return make_verdict(Decision::Accept, Reason::NoWitness, oracle.query_count() - start);
      }
    }
  }
  return make_verdict(Decision::Accept, Reason::NoWitness, oracle.query_count() - start);
}

}  // namespace dptest
