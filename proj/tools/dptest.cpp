// dptest: generate graphs, run testers and estimators, compute exact quantities.
//
// Exit status 0 means the command ran; verdicts are part of the JSON report.
// Usage errors and unreadable inputs exit with 2.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "dptest/dptest.hpp"
#include "dptest/selftest.hpp"

using namespace dptest;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchema = 1;

/// Integral doubles are emitted as integers.
json number(double x) {
  if (std::isfinite(x) && std::floor(x) == x && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
  return x;
}

DirectedGraph load_graph(const std::string& path) {
  if (path == "-") return parse_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("graph-load-failure: cannot open " + path);
  return parse_graph(in);
}

void emit(const json& j, const std::string& path) {
  const auto text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json verdict_json(const Verdict& v) {
  json j;
  j["decision"] = to_string(v.decision);
  j["reason"] = to_string(v.reason);
  j["queries"] = v.queries_used;
  json details = json::object();
  for (const auto& [k, x] : v.details) details[k] = number(x);
  j["details"] = details;
  return j;
}

std::optional<StarOrientation> parse_orientation(const std::string& s) {
  for (int k = 0; k <= 3; ++k)
    if (s == to_string(static_cast<StarOrientation>(k))) return static_cast<StarOrientation>(k);
  return std::nullopt;
}

/// A star orientation name or a graph file.
DirectedGraph load_pattern(const std::string& spec) {
  if (auto s = parse_orientation(spec)) return star_pattern(*s);
  return load_graph(spec);
}

std::optional<ExactFallback> parse_fallback(const std::string& s) {
  if (s == "auto") return ExactFallback::Auto;
  if (s == "on") return ExactFallback::On;
  if (s == "off") return ExactFallback::Off;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string family;
  std::size_t n = 100;
  double eps = 0.1;
  std::size_t degree = 3;
  std::optional<std::size_t> m;
  std::size_t copies = 1;
  std::uint64_t seed = 0;
  std::string pattern = "out3";
  std::string output;
};

DirectedGraph generate(const GenOptions& o) {
  const Seed seed{o.seed};
  const auto& f = o.family;
  if (f == "cycle") return gen_cycle(o.n, o.degree);
  if (f == "bender-ron") return gen_bender_ron_far(o.n, o.eps, o.degree);
  if (f == "random") return gen_random_bounded(o.n, o.degree, o.m.value_or(o.n), seed);
  if (f == "line") return gen_line_orientation(o.n, seed);
  if (f == "tree") return gen_tree_orientation(o.n, seed);
  if (f == "seq-a") return gen_star_forest(gen_sequence_class_A(o.n));
  if (f == "seq-b") return gen_star_forest(gen_sequence_class_B(o.n));
  if (f == "planted") return gen_planted_stars(o.n, o.degree, o.copies, load_pattern(o.pattern), seed);
  if (f == "star-forest") {
    // A random sequence over {1,2,3}; the value multiset is what the forest encodes.
    auto rng = make_rng(seed);
    ValueSequence a;
    for (std::size_t i = 0; i < o.n; ++i) a.items.push_back(1 + uniform_index(rng, 3));
    return gen_star_forest(a);
  }
  throw std::invalid_argument("unknown family " + f);
}

// ---------------------------------------------------------------------------

struct TestOptions {
  std::string property;
  std::string graph;
  std::string pattern;
  double eps = 0.1;
  double alpha = 1.0;
  double beta = 0.1;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::optional<double> amplify;
  std::string fallback = "auto";
  bool check_weak = false;
  std::optional<std::uint64_t> budget;
  std::size_t threads = 0;
  std::string json_out;
};

json run_test(const TestOptions& o) {
  const auto g = load_graph(o.graph);
  TrialConfig cfg;
  cfg.property = *parse_property(o.property);
  cfg.eps = o.eps;
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.scale = o.scale;
  cfg.amplify = o.amplify;
  if (!o.pattern.empty()) cfg.pattern = load_pattern(o.pattern);
  const auto fallback = parse_fallback(o.fallback);
  if (!fallback) throw std::invalid_argument("config-invalid: exact-fallback must be auto, on or off");
  cfg.fallback = *fallback;
  cfg.trials = o.trials;
  cfg.base_seed = Seed{o.seed};
  cfg.query_budget = o.budget;
  cfg.threads = o.threads;

  const auto r = run_trials(g, cfg);
  json j;
  j["schema"] = kSchema;
  j["command"] = "test";
  json c;
  c["property"] = o.property;
  c["graph"] = o.graph;
  c["n"] = g.vertex_count();
  c["degree_bound"] = g.degree_bound();
  c["eps"] = number(o.eps);
  if (cfg.property == Property::StrongConn) {
    c["alpha"] = number(o.alpha);
    c["scale"] = number(o.scale);
  }
  if (cfg.property == Property::Sink) c["beta"] = number(o.beta);
  if (cfg.property == Property::Star3) c["exact_fallback"] = o.fallback;
  if (cfg.pattern) c["pattern"] = o.pattern;
  if (o.amplify) c["amplify"] = number(*o.amplify);
  c["trials"] = o.trials;
  c["seed"] = o.seed;
  if (o.budget) c["query_budget"] = *o.budget;
  j["config"] = c;
  if (o.check_weak) j["weakly_connected"] = is_weakly_connected(g);
  j["accept_count"] = r.accept_count;
  j["reject_count"] = r.reject_count;
  j["accept_rate"] = number(r.accept_rate);
  j["aborted_count"] = r.aborted_count;
  j["queries"] = {{"mean", number(r.query_mean)},
                  {"max", r.query_max},
                  {"cap", r.query_cap},
                  {"cap_violations", r.cap_violations}};
  json records = json::array();
  for (const auto& rec : r.records) {
    auto v = verdict_json(rec.verdict);
    json item;
    item["trial"] = rec.index;
    item["seed"] = rec.seed.value;
    item["decision"] = v["decision"];
    item["reason"] = v["reason"];
    item["queries"] = v["queries"];
    item["aborted"] = rec.aborted;
    item["details"] = v["details"];
    records.push_back(item);
  }
  j["records"] = records;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

// ---------------------------------------------------------------------------

struct EstimateOptions {
  std::string kind;
  std::string graph;
  double eps = 0.1;
  double alpha = 1.0;
  double scale = 1.0;
  std::uint64_t seed = 0;
};

json run_estimate(const EstimateOptions& o) {
  const auto g = load_graph(o.graph);
  const auto n = g.vertex_count();
  const Seed seed{o.seed};
  OutEdgeOracle oracle(g);
  json j;
  j["schema"] = kSchema;
  j["command"] = "estimate";
  json c = {{"kind", o.kind}, {"graph", o.graph}, {"n", n}, {"degree_bound", g.degree_bound()},
            {"eps", number(o.eps)}, {"seed", o.seed}};
  if (o.kind == "edges") {
    j["estimate"] = number(estimate_edge_count(oracle, n, o.eps, seed));
  } else if (o.kind == "out2stars") {
    j["estimate"] = number(estimate_out_2stars(oracle, n, o.eps, seed));
  } else if (o.kind == "vertices") {
    const auto params = make_compact_params(o.eps, o.alpha, g.degree_bound());
    ContractedOracle<OutEdgeOracle> cg(oracle, n, params);
    j["estimate"] = number(estimate_vertex_number(cg, n, o.eps, seed));
    c["alpha"] = number(o.alpha);
    c["size_bound"] = params.size_bound;
  } else if (o.kind == "indegree") {
    const auto cfg = make_estimator_config(n, g.degree_bound(), o.eps, o.scale);
    const auto r = estimate_reachable_vertices(oracle, n, o.eps, cfg, seed);
    j["estimate"] = number(r.estimate);
    j["aborted"] = r.aborted;
    json levels = json::array();
    for (std::size_t i = 1; i < r.n_hat.size(); ++i)
      levels.push_back({{"i", i}, {"p", number(cfg.p[i])}, {"c_hat", number(r.c_hat[i])},
                        {"n_hat", number(r.n_hat[i])}});
    j["levels"] = levels;
    c["scale"] = number(o.scale);
    c["log_a"] = cfg.log_a;
  } else {
    throw std::invalid_argument("unknown estimator " + o.kind);
  }
  j["queries"] = oracle.query_count();
  j["config"] = c;
  return j;
}

// ---------------------------------------------------------------------------

json run_exact(const std::string& kind, const std::string& graph, const std::string& pattern) {
  const auto g = load_graph(graph);
  json j;
  j["schema"] = kSchema;
  j["command"] = "exact";
  j["kind"] = kind;
  if (kind == "scc") {
    const auto s = exact_scc_summary(g);
    j["components"] = s.components.size();
    j["sources"] = s.source_ids.size();
    j["sinks"] = s.sink_ids.size();
    j["dead_ends"] = s.dead_end_count;
    j["strongly_connected"] = s.strongly_connected();
    j["component_sizes"] = json::array();
    for (const auto& comp : s.components) j["component_sizes"].push_back(comp.size());
  } else if (kind == "histogram") {
    const auto h = exact_indegree_histogram(g);
    j["counts"] = h.counts;
    j["reachable"] = h.reachable();
  } else if (kind == "balance") {
    j["balance"] = exact_balance(g);
  } else if (kind == "census") {
    const auto c = exact_star_census(g);
    j["in2"] = c.in2;
    j["out2"] = c.out2;
    j["in3"] = c.in3;
    j["out3"] = c.out3;
    j["any3"] = c.any3;
  } else if (kind == "contains") {
    if (pattern.empty()) throw std::invalid_argument("exact contains needs -H");
    const auto c = exact_count_disjoint_occurrences(g, load_pattern(pattern));
    j["contains"] = c.contains;
    j["greedy_disjoint"] = c.greedy_disjoint;
  } else {
    throw std::invalid_argument("kind-unknown: " + kind);
  }
  return j;
}

json run_selftest() {
  json j;
  j["schema"] = kSchema;
  j["command"] = "selftest";
  json suites = json::array();
  bool all = true;
  for (const auto& r : selftest::run_all()) {
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, "
              << r.violations << " violations)\n";
    suites.push_back({{"name", r.name}, {"cases", r.cases}, {"violations", r.violations}});
    all = all && r.passed();
  }
  j["suites"] = suites;
  j["passed"] = all;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property testers for bounded-degree digraphs with out-edge queries"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph in the text format");
  gen_cmd->add_option("family", gen.family, "Graph family")
      ->required()
      ->check(CLI::IsMember({"cycle", "bender-ron", "random", "line", "tree", "star-forest", "seq-a",
                             "seq-b", "planted"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count (sequence length for seq-a, seq-b, star-forest)");
  gen_cmd->add_option("--eps", gen.eps, "Distance parameter (bender-ron)");
  gen_cmd->add_option("--degree", gen.degree, "Degree bound D");
  gen_cmd->add_option("--m", gen.m, "Edge count (random)");
  gen_cmd->add_option("--copies", gen.copies, "Planted copies");
  gen_cmd->add_option("--pattern", gen.pattern, "Planted pattern: in3, in2out1, in1out2, out3 or a file");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Run a tester for one or more trials");
  test_cmd->add_option("property", test.property, "Property")
      ->required()
      ->check(CLI::IsMember({"subgraph", "star3", "sink", "strong-conn", "strong-conn-d1"}));
  test_cmd->add_option("-g,--graph", test.graph, "Graph file ('-' for stdin)")->required();
  test_cmd->add_option("-H,--pattern", test.pattern, "Pattern file or star orientation name");
  test_cmd->add_option("--eps", test.eps, "Proximity parameter");
  test_cmd->add_option("--alpha", test.alpha, "Strong connectivity slack");
  test_cmd->add_option("--beta", test.beta, "Sink tester proximity");
  test_cmd->add_option("--scale", test.scale, "Estimator sample scale");
  test_cmd->add_option("--seed", test.seed, "Base seed");
  test_cmd->add_option("--trials", test.trials, "Number of trials");
  test_cmd->add_option("--amplify", test.amplify, "Target failure probability for the subgraph tester");
  test_cmd->add_option("--exact-fallback", test.fallback, "auto, on or off (star3)");
  test_cmd->add_flag("--check-weak-connectivity", test.check_weak, "Report exact weak connectivity");
  test_cmd->add_option("--budget", test.budget, "Per-trial query budget");
  test_cmd->add_option("--threads", test.threads, "Worker threads (0 = hardware)");
  test_cmd->add_option("--json", test.json_out, "Write the report here instead of stdout");

  EstimateOptions est;
  auto* est_cmd = app.add_subcommand("estimate", "Run one estimator");
  est_cmd->add_option("kind", est.kind, "Estimator")
      ->required()
      ->check(CLI::IsMember({"edges", "out2stars", "vertices", "indegree"}));
  est_cmd->add_option("-g,--graph", est.graph, "Graph file")->required();
  est_cmd->add_option("--eps", est.eps, "Proximity parameter");
  est_cmd->add_option("--alpha", est.alpha, "Compact component slack (vertices)");
  est_cmd->add_option("--scale", est.scale, "Sample scale (indegree)");
  est_cmd->add_option("--seed", est.seed, "Seed");

  std::string exact_kind, exact_graph, exact_pattern;
  auto* exact_cmd = app.add_subcommand("exact", "Compute an exact quantity");
  exact_cmd->add_option("kind", exact_kind, "scc, histogram, balance, census or contains")->required();
  exact_cmd->add_option("-g,--graph", exact_graph, "Graph file")->required();
  exact_cmd->add_option("-H,--pattern", exact_pattern, "Pattern for contains");

  app.add_subcommand("selftest", "Run the structural check suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      const auto g = generate(gen);
      if (gen.output.empty()) {
        std::cout << serialize_graph(g);
      } else {
        std::ofstream out(gen.output);
        if (!out) throw std::runtime_error("cannot write " + gen.output);
        out << serialize_graph(g);
      }
    } else if (*test_cmd) {
      emit(run_test(test), test.json_out);
    } else if (*est_cmd) {
      emit(run_estimate(est), "");
    } else if (*exact_cmd) {
      emit(run_exact(exact_kind, exact_graph, exact_pattern), "");
    } else {
      emit(run_selftest(), "");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
