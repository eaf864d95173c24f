// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "dpcut/audit.h"
#include "dpcut/dp_st_cut.h"
#include "dpcut/experiment.h"
#include "dpcut/maxflow.h"
#include "dpcut/multiway.h"
#include "dpcut/noise.h"
#include "dpcut/rng.h"

namespace {

using namespace dpcut;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Graph three_paths_graph() {
  // s = 0, t = 1, three middle nodes each joined to both terminals by a unit edge.
  std::vector<std::tuple<NodeId, NodeId, std::uint64_t>> edges;
  for (NodeId v = 2; v < 5; ++v) {
    edges.emplace_back(0, v, 1);
    edges.emplace_back(v, 1, 1);
  }
  return Graph::from_integer_edges(5, edges);
}

double pearson(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// Criterion 1.
Outcome exactness() {
  constexpr int kGraphs = 300;
  constexpr double kMaxSeconds = 10.0;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  int mismatches = 0;
  for (int i = 0; i < kGraphs; ++i) {
    const std::size_t n = 2 + rng.uniform_int(0, 8);
    const double p = i % 2 == 0 ? 0.3 : 0.6;
    const Graph g = random_graph(n, p, 10, rng.split(i).seed());
    if (min_st_cut_exact(g, 0, 1).weight_original != brute_force_min_st_cut(g, 0, 1).cut.weight_original) {
      ++mismatches;
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < kMaxSeconds,
          fmt("%d graphs, %d mismatches, %.3f s (limit %.0f s)", kGraphs, mismatches, elapsed, kMaxSeconds)};
}

// Criterion 2.
Outcome three_paths_fixture() {
  const Graph g = three_paths_graph();
  const BruteForceCut brute = brute_force_min_st_cut(g, 0, 1);
  const std::string weight = g.format(brute.cut.weight_original);
  const std::string exact = g.format(min_st_cut_exact(g, 0, 1).weight_original);
  return {weight == "3" && exact == "3" && brute.count_of_minima == 8,
          fmt("weight %s (exact %s), %llu minimum cuts", weight.c_str(), exact.c_str(),
              static_cast<unsigned long long>(brute.count_of_minima))};
}

struct MultiwayInstance {
  Graph graph;
  std::vector<NodeId> terminals;
};

std::vector<MultiwayInstance> multiway_instances() {
  std::vector<MultiwayInstance> out;
  Rng rng(202);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = i % 2 == 0 ? 3 : 4;
    const std::size_t n = k + rng.uniform_int(1, 9 - k);
    Graph g = random_graph(n, 0.5, 10, rng.split(i).seed());
    std::vector<NodeId> terminals(k);
    std::iota(terminals.begin(), terminals.end(), NodeId{0});
    out.push_back({std::move(g), std::move(terminals)});
  }
  return out;
}

// Criterion 3.
Outcome two_approximation(const std::vector<MultiwayInstance> &instances) {
  int violations = 0;
  double worst = 1.0;
  for (const MultiwayInstance &inst : instances) {
    const FxWeight opt = multiway_brute_force(inst.graph, inst.terminals).weight;
    const FxWeight alg = multiway_recursive(inst.graph, inst.terminals, exact_solver()).weight;
    FxWeight twice = opt;
    twice += opt;
    if (alg < opt || twice < alg) {
      ++violations;
    }
    if (!opt.is_zero()) {
      worst = std::max(worst, inst.graph.real(alg) / inst.graph.real(opt));
    }
  }
  return {violations == 0,
          fmt("%zu instances, %d outside [OPT, 2 OPT], worst ratio %.3f", instances.size(), violations, worst)};
}

// Criterion 4.
Outcome batched_equivalence(const std::vector<MultiwayInstance> &instances) {
  int weight_mismatches = 0;
  int call_mismatches = 0;
  for (const MultiwayInstance &inst : instances) {
    const MultiwayCut batched = multiway_batched(inst.graph, inst.terminals, exact_solver());
    const MultiwayCut recursive = multiway_recursive(inst.graph, inst.terminals, exact_solver());
    if (batched.weight != recursive.weight) {
      ++weight_mismatches;
    }
    if (batched.solver_invocations != bisection_depth(inst.terminals.size())) {
      ++call_mismatches;
    }
  }
  return {weight_mismatches == 0 && call_mismatches == 0,
          fmt("%zu instances, %d weight mismatches, %d call-count mismatches", instances.size(), weight_mismatches,
              call_mismatches)};
}

// Criterion 5.
Outcome error_scaling() {
  constexpr std::size_t kNodes = 60;
  constexpr int kTrials = 200;
  constexpr double kConstant = 10.0;
  constexpr double kMinCorrelation = 0.9;
  const std::vector<double> epsilons{0.2, 0.5, 1.0};
  const Graph g = random_graph(kNodes, 0.1, 10, 303);
  const double opt = g.real(min_st_cut_exact(g, 0, 1).weight_original);

  Rng root(304);
  std::vector<double> inverse, means;
  bool within = true;
  std::string detail;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    NoiseSpec spec;
    spec.epsilon = epsilons[e];
    Rng rng = root.split(e);
    double total = 0;
    for (int i = 0; i < kTrials; ++i) {
      total += g.real(dp_min_st_cut(g, 0, 1, spec, rng).weight_original) - opt;
    }
    const double mean = total / kTrials;
    const double limit = kConstant * kNodes / epsilons[e];
    within = within && mean <= limit;
    inverse.push_back(1.0 / epsilons[e]);
    means.push_back(mean);
    detail += fmt("eps %.1f mean %.2f (limit %.0f); ", epsilons[e], mean, limit);
  }
  const double r = pearson(inverse, means);
  return {within && r >= kMinCorrelation, detail + fmt("r = %.4f (min %.1f)", r, kMinCorrelation)};
}

// Criterion 6.
Outcome privacy_audit() {
  using E = std::tuple<NodeId, NodeId, std::uint64_t>;
  constexpr std::size_t kTrials = 100000;
  constexpr double kMaxSeconds = 120.0;
  const auto start = std::chrono::steady_clock::now();
  NoiseSpec spec;
  spec.epsilon = 0.5;
  spec.tau = 1.0;

  const std::vector<std::pair<std::vector<E>, std::vector<E>>> pairs{
      // Path s - a - b - t; the neighbor drops the middle edge.
      {{{0, 2, 1}, {2, 3, 1}, {3, 1, 1}}, {{0, 2, 1}, {3, 1, 1}}},
      // Two routes; the neighbor lightens s - b.
      {{{0, 2, 1}, {2, 1, 1}, {0, 3, 2}, {3, 1, 1}}, {{0, 2, 1}, {2, 1, 1}, {0, 3, 1}, {3, 1, 1}}},
      // Heavy terminal edges; the neighbor adds a unit edge a - b.
      {{{0, 2, 3}, {3, 1, 3}}, {{0, 2, 3}, {2, 3, 1}, {3, 1, 3}}},
  };
  Rng root(405);
  double worst = -INFINITY;
  bool any_violation = false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Graph g = Graph::from_integer_edges(4, pairs[i].first);
    const Graph h = Graph::from_integer_edges(4, pairs[i].second);
    Rng rng = root.split(i);
    const AuditReport report = privacy_ratio_audit(g, h, 0, 1, spec, kTrials, rng);
    worst = std::max(worst, report.max_lower_log_ratio);
    any_violation = any_violation || report.violation;
  }
  const Graph control = Graph::from_integer_edges(4, pairs[0].first);
  Rng control_rng = root.split(pairs.size());
  const AuditReport self = privacy_ratio_audit(control, control, 0, 1, spec, kTrials, control_rng);
  const double elapsed = seconds_since(start);
  const double bound = 4.0 * spec.tau * spec.epsilon;
  return {!any_violation && worst <= bound && !self.violation && elapsed < kMaxSeconds,
          fmt("max lower log-ratio %.4f (bound %.1f), control max %.4f violation=%s, %.1f s", worst, bound,
              self.max_lower_log_ratio, self.violation ? "yes" : "no", elapsed)};
}

// Criterion 7.
Outcome distribution_facts() {
  constexpr std::size_t kDraws = 1000000;
  constexpr double kMaxKs = 0.01;
  constexpr double kSurvivalTolerance = 0.003;
  constexpr double kLambda = 1.0;
  Rng rng_a(506);
  Rng rng_b(507);
  std::vector<double> diff(kDraws), lap(kDraws);
  std::size_t survive = 0;
  for (std::size_t i = 0; i < kDraws; ++i) {
    const double x = sample_exp(kLambda, rng_a);
    diff[i] = x - sample_exp(kLambda, rng_a);
    lap[i] = sample_lap(1.0 / kLambda, rng_b);
    if (x >= 1.0 / kLambda) {
      ++survive;
    }
  }
  const double ks = two_sample_ks(std::move(diff), std::move(lap));
  const double survival = static_cast<double>(survive) / kDraws;
  const bool pass = ks <= kMaxKs && std::abs(survival - std::exp(-1.0)) <= kSurvivalTolerance;
  return {pass, fmt("KS %.5f (max %.2f), survival %.5f vs e^-1 %.5f (tol %.3f)", ks, kMaxKs, survival,
                    std::exp(-1.0), kSurvivalTolerance)};
}

// Criterion 8.
Outcome lower_bound() {
  Rng rng(608);
  const LowerBoundSweep sweep = lower_bound_error_sweep(100, 1.0, 50, 20, rng);
  return {sweep.mean_error >= sweep.reference_bound,
          fmt("mean error %.2f over %zu runs (bound %.1f)", sweep.mean_error, sweep.runs, sweep.reference_bound)};
}

// Criterion 9.
Outcome experiment_shape() {
  constexpr std::size_t kNodes = 500;
  constexpr std::size_t kEdges = 2000;
  constexpr double kMinWinShare = 0.7;
  constexpr int kMaxInversions = 1;
  const Graph base = synthetic_stand_in(kNodes, kEdges, 709);

  ExperimentConfig config;
  config.epsilons = {0.5};
  config.instances = 20;
  config.trials = 50;
  config.seed = 710;
  const auto rows = run_experiment(base, config);
  const auto wins = std::count_if(rows.begin(), rows.end(), [](const ExperimentRow &r) {
    return r.private_rel_err_mean < r.terminal_rel_err;
  });
  const double share = static_cast<double>(wins) / static_cast<double>(rows.size());

  ExperimentConfig sweep = config;
  sweep.epsilons = epsilon_sweep_grid();
  const auto summary = summarize_by_epsilon(run_experiment(base, sweep));
  // The grid is increasing in epsilon, so means must be non-increasing along it.
  int inversions = 0;
  for (std::size_t i = 1; i < summary.size(); ++i) {
    if (summary[i].mean_private_err > summary[i - 1].mean_private_err) {
      ++inversions;
    }
  }
  return {share >= kMinWinShare && inversions <= kMaxInversions,
          fmt("private < terminal on %ld/%zu instances (min %.0f%%), %d sweep inversions (max %d)",
              static_cast<long>(wins), rows.size(), kMinWinShare * 100, inversions, kMaxInversions)};
}

// Criterion 10.
Outcome isolation_uniqueness() {
  constexpr std::size_t kTrials = 1000;
  const Graph g = three_paths_graph();
  const double n = 5;
  const double target = 1.0 - 2.0 * (n - 2) / (2.0 * n * n);
  const double sigma = std::sqrt(target * (1.0 - target) / kTrials);
  Rng rng(811);
  NoiseSpec spec;
  const double p = unique_min_probability(g, 0, 1, spec, kTrials, rng);
  return {p >= target - 3.0 * sigma, fmt("unique fraction %.3f (min %.4f)", p, target - 3.0 * sigma)};
}

} // namespace

int main() {
  const std::vector<MultiwayInstance> instances = multiway_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exactness vs brute force", exactness},
      {"three-path fixture", three_paths_fixture},
      {"multiway 2-approximation", [&] { return two_approximation(instances); }},
      {"batched equivalence", [&] { return batched_equivalence(instances); }},
      {"additive error scaling", error_scaling},
      {"privacy audit", privacy_audit},
      {"distribution facts", distribution_facts},
      {"lower-bound consistency", lower_bound},
      {"experiment shape", experiment_shape},
      {"isolation uniqueness", isolation_uniqueness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception &e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
