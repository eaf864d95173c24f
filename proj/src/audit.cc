#include "dpcut/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <boost/math/distributions/normal.hpp>

#include "dpcut/dp_st_cut.h"

namespace dpcut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string outcome_key(std::span<const Side> side, NodeId s, NodeId t) {
  std::string key;
  for (NodeId v = 0; v < side.size(); ++v) {
    if (v != s && v != t) {
      key.push_back(side[v] == Side::kSource ? 'S' : 'T');
    }
  }
  return key;
}

double safe_log_ratio(double a, double b) {
  if (a <= 0.0) {
    return -kInf;
  }
  if (b <= 0.0) {
    return kInf;
  }
  return std::log(a / b);
}

std::unordered_map<std::string, std::uint64_t> histogram(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec,
                                                         std::size_t trials, Rng rng) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (std::size_t i = 0; i < trials; ++i) {
    const CutSolution cut = dp_min_st_cut(g, s, t, spec, rng);
    ++counts[outcome_key(cut.side_of_node, s, t)];
  }
  return counts;
}

} // namespace

bool are_neighbors(const Graph &g, const Graph &h, double tau) {
  if (g.num_nodes() != h.num_nodes() || !(g.scale() == h.scale())) {
    return false;
  }
  // Merge the two sorted edge lists and collect pairs whose weight differs.
  std::vector<double> differences;
  auto a = g.edges().begin();
  auto b = h.edges().begin();
  const auto key = [](const Edge &e) { return NodePair{e.u, e.v}; };
  while (a != g.edges().end() || b != h.edges().end()) {
    if (b == h.edges().end() || (a != g.edges().end() && key(*a) < key(*b))) {
      differences.push_back(g.real(a->weight));
      ++a;
    } else if (a == g.edges().end() || key(*b) < key(*a)) {
      differences.push_back(h.real(b->weight));
      ++b;
    } else {
      if (a->weight != b->weight) {
        differences.push_back(std::abs(g.real(a->weight) - h.real(b->weight)));
      }
      ++a;
      ++b;
    }
  }
  return differences.size() <= 1 && (differences.empty() || differences.front() <= tau);
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) {
    return {0.0, 1.0};
  }
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

AuditReport privacy_ratio_audit(const Graph &g, const Graph &neighbor, NodeId s, NodeId t, const NoiseSpec &spec,
                                std::size_t trials, Rng &rng, const AuditOptions &options) {
  spec.validate();
  if (g.num_nodes() > kAuditMaxNodes) {
    throw std::invalid_argument("privacy_ratio_audit: at most " + std::to_string(kAuditMaxNodes) + " nodes");
  }
  if (!are_neighbors(g, neighbor, spec.tau)) {
    throw std::invalid_argument("privacy_ratio_audit: graphs are not neighbors at granularity tau");
  }
  if (trials == 0) {
    throw std::invalid_argument("privacy_ratio_audit: need at least one trial");
  }
  if (!(options.family_alpha > 0.0 && options.family_alpha < 1.0)) {
    throw std::invalid_argument("privacy_ratio_audit: family_alpha must lie in (0, 1)");
  }

  const auto counts = histogram(g, s, t, spec, trials, rng.split(0));
  const auto counts_neighbor = histogram(neighbor, s, t, spec, trials, rng.split(1));

  const std::size_t free_nodes = g.num_nodes() >= 2 ? g.num_nodes() - 2 : 0;
  const std::size_t num_outcomes = std::size_t{1} << free_nodes;
  // Two intervals per outcome, one per graph.
  const double per_interval_alpha = options.family_alpha / static_cast<double>(2 * num_outcomes);
  const boost::math::normal standard_normal;
  const double z = boost::math::quantile(standard_normal, 1.0 - per_interval_alpha / 2.0);

  AuditReport report;
  report.trials = trials;
  report.epsilon = spec.epsilon;
  report.tau = spec.tau;
  report.bound = 4.0 * spec.tau * spec.epsilon;
  report.z = z;
  report.max_lower_log_ratio = -kInf;

  for (std::size_t mask = 0; mask < num_outcomes; ++mask) {
    OutcomeStats stats;
    for (std::size_t i = 0; i < free_nodes; ++i) {
      stats.key.push_back(((mask >> i) & 1U) != 0 ? 'S' : 'T');
    }
    if (const auto it = counts.find(stats.key); it != counts.end()) {
      stats.count = it->second;
    }
    if (const auto it = counts_neighbor.find(stats.key); it != counts_neighbor.end()) {
      stats.count_neighbor = it->second;
    }
    const auto [lo, hi] = wilson_interval(stats.count, trials, z);
    const auto [lo_n, hi_n] = wilson_interval(stats.count_neighbor, trials, z);
    stats.log_ratio = safe_log_ratio(static_cast<double>(stats.count), static_cast<double>(stats.count_neighbor));
    stats.lower_log_ratio = safe_log_ratio(lo, hi_n);
    stats.upper_log_ratio = safe_log_ratio(hi, lo_n);
    // The reverse direction's lower bound is -upper_log_ratio.
    report.max_lower_log_ratio = std::max({report.max_lower_log_ratio, stats.lower_log_ratio, -stats.upper_log_ratio});
    report.outcomes.push_back(std::move(stats));
  }
  report.violation = report.max_lower_log_ratio > report.bound;
  return report;
}

Graph lower_bound_family(const std::vector<bool> &bits) {
  const std::size_t n = bits.size() + 2;
  const WeightScale scale = WeightScale::for_nodes(n);
  std::vector<Edge> edges;
  edges.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const NodeId terminal = bits[i] ? 0 : 1;
    edges.push_back({terminal, static_cast<NodeId>(i + 2), FxWeight::from_integer(1, scale)});
  }
  return Graph::from_edges(n, std::move(edges), scale, {0, 1});
}

LowerBoundSweep lower_bound_error_sweep(std::size_t n, double epsilon, std::size_t num_tau,
                                        std::size_t trials_per_tau, Rng &rng) {
  NoiseSpec spec;
  spec.epsilon = epsilon;
  spec.validate();

  LowerBoundSweep sweep;
  sweep.reference_bound = static_cast<double>(n) / 20.0;
  sweep.in_bound_regime = epsilon <= 1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < num_tau; ++i) {
    Rng stream = rng.split(i);
    std::vector<bool> bits(n);
    for (std::size_t j = 0; j < n; ++j) {
      bits[j] = stream.coin();
    }
    const Graph g = lower_bound_family(bits);
    for (std::size_t trial = 0; trial < trials_per_tau; ++trial) {
      total += g.real(dp_min_st_cut(g, 0, 1, spec, stream).weight_original);
      ++sweep.runs;
    }
  }
  sweep.mean_error = sweep.runs == 0 ? 0.0 : total / static_cast<double>(sweep.runs);
  return sweep;
}

} // namespace dpcut
