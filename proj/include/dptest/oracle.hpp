#pragma once

// The access model: a tester sees the input only through f(v, i), the i-th
// out-neighbour of v (or nothing). Every call is one query.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dptest/graph.hpp"

namespace dptest {

/// Thrown when a query would exceed the oracle's budget.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t budget)
      : std::runtime_error("query budget of " + std::to_string(budget) + " exhausted"),
        budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

struct QueryRecord {
  Vertex vertex;
  std::size_t slot;
  std::optional<Vertex> answer;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

template <class O>
concept QueryOracle = requires(O& o, const O& co, Vertex v, std::size_t i) {
  { o.out_neighbor(v, i) } -> std::same_as<std::optional<Vertex>>;
  { co.degree_bound() } -> std::convertible_to<std::size_t>;
  { co.query_count() } -> std::convertible_to<std::uint64_t>;
};

/**
 * Query-counting view of a DirectedGraph. Exposes nothing but f(v, i) and the
 * degree bound; in-edges and degrees stay hidden. One instance per trial.
 */
class OutEdgeOracle {
 public:
  explicit OutEdgeOracle(const DirectedGraph& g,
                         std::optional<std::uint64_t> budget = std::nullopt)
      : graph_(&g), budget_(budget) {}

  /// i is 1-based. Empty slots still cost one query.
  std::optional<Vertex> out_neighbor(Vertex v, std::size_t i) {
    if (v >= graph_->vertex_count())
      throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    if (i < 1 || i > graph_->degree_bound())
      throw std::invalid_argument("slot " + std::to_string(i) + " out of range");
    if (budget_ && queries_ >= *budget_) throw BudgetExhausted(*budget_);
    ++queries_;
    const auto& adj = graph_->out_neighbors(v);
    std::optional<Vertex> answer;
    if (i <= adj.size()) answer = adj[i - 1];
    if (logging_) log_.push_back({v, i, answer});
    return answer;
  }

  std::size_t degree_bound() const noexcept { return graph_->degree_bound(); }
  std::uint64_t query_count() const noexcept { return queries_; }
  const std::optional<std::uint64_t>& query_budget() const noexcept { return budget_; }

  void enable_log(bool on = true) { logging_ = on; }
  const std::vector<QueryRecord>& log() const noexcept { return log_; }

 private:
  const DirectedGraph* graph_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t queries_ = 0;
  bool logging_ = false;
  std::vector<QueryRecord> log_;
};

/**
 * Tester-side memory of answered queries. Forwards each distinct (v, i) to
 * the underlying oracle at most once.
 */
template <QueryOracle O>
class SlotCache {
 public:
  explicit SlotCache(O& oracle) : oracle_(&oracle) {}

  std::optional<Vertex> out_neighbor(Vertex v, std::size_t i) {
    auto& e = entry(v);
    auto& slot = e.slots[i - 1];
    if (slot == kUnknown) {
      const auto a = oracle_->out_neighbor(v, i);
      slot = a ? static_cast<std::int64_t>(*a) : kEmpty;
    }
    if (slot == kEmpty) return std::nullopt;
    return static_cast<Vertex>(slot);
  }

  /// Full adjacency list; stops probing at the first empty slot.
  const std::vector<Vertex>& out_neighbors(Vertex v) {
    auto& e = entry(v);
    if (!e.complete) {
      e.list.clear();
      for (std::size_t i = 1; i <= degree_bound(); ++i) {
        const auto w = out_neighbor(v, i);
        if (!w) break;
        e.list.push_back(*w);
      }
      e.complete = true;
    }
    return e.list;
  }

  bool expanded(Vertex v) const {
    auto it = entries_.find(v);
    return it != entries_.end() && it->second.complete;
  }

  std::size_t degree_bound() const { return oracle_->degree_bound(); }
  std::uint64_t query_count() const { return oracle_->query_count(); }
  O& base() { return *oracle_; }

 private:
  static constexpr std::int64_t kUnknown = -2;
  static constexpr std::int64_t kEmpty = -1;

  struct Entry {
    std::vector<std::int64_t> slots;
    std::vector<Vertex> list;
    bool complete = false;
  };

  Entry& entry(Vertex v) {
    auto [it, fresh] = entries_.try_emplace(v);
    if (fresh) it->second.slots.assign(degree_bound(), kUnknown);
    return it->second;
  }

  O* oracle_;
  std::unordered_map<Vertex, Entry> entries_;
};

// ---------------------------------------------------------------------------

enum class Decision { Accept, Reject };

enum class Reason {
  TrivialAccept,
  NoWitness,
  Oversample,
  OccurrenceFound,
  EdgeCountExcess,
  FewCollisions,
  RatioExcess,
  RatioWithinBound,
  ExactCensus,
  SinkFound,
  ShortCycle,
  ReachableDeficit,
  BudgetExhausted,
};

inline const char* to_string(Decision d) {
  return d == Decision::Accept ? "accept" : "reject";
}

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::TrivialAccept: return "trivial-accept";
    case Reason::NoWitness: return "no-witness";
    case Reason::Oversample: return "oversample";
    case Reason::OccurrenceFound: return "occurrence-found";
    case Reason::EdgeCountExcess: return "edge-count-excess";
    case Reason::FewCollisions: return "few-collisions";
    case Reason::RatioExcess: return "ratio-excess";
    case Reason::RatioWithinBound: return "ratio-within-bound";
    case Reason::ExactCensus: return "exact-census";
    case Reason::SinkFound: return "sink-found";
    case Reason::ShortCycle: return "short-cycle";
    case Reason::ReachableDeficit: return "reachable-deficit";
    case Reason::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

/// Outcome of one tester run. `queries_used` is the oracle's count delta.
struct Verdict {
  Decision decision = Decision::Accept;
  Reason reason = Reason::NoWitness;
  std::uint64_t queries_used = 0;
  /// Named intermediate quantities (estimates, thresholds) for reporting.
  std::vector<std::pair<std::string, double>> details;

  bool accepted() const { return decision == Decision::Accept; }
  bool rejected() const { return decision == Decision::Reject; }

  std::optional<double> detail(const std::string& key) const {
    for (const auto& [k, v] : details)
      if (k == key) return v;
    return std::nullopt;
  }
};

inline Verdict make_verdict(Decision d, Reason r, std::uint64_t queries) {
  Verdict v;
  v.decision = d;
  v.reason = r;
  v.queries_used = queries;
  return v;
}

}  // namespace dptest
