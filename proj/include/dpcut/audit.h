#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpcut/graph.h"
#include "dpcut/noise.h"

namespace dpcut {

inline constexpr std::size_t kAuditMaxNodes = 8;

/// Empirical output frequencies of one partition on both graphs.
struct OutcomeStats {
  /// One character per non-terminal node in id order: 'S' or 'T'.
  std::string key;
  std::uint64_t count = 0;
  std::uint64_t count_neighbor = 0;
  /// log(p / p') from the raw frequencies; +-inf when a count is zero.
  double log_ratio = 0.0;
  /// log(lower(p) / upper(p')) and log(upper(p) / lower(p')) from
  /// Bonferroni-corrected Wilson intervals.
  double lower_log_ratio = 0.0;
  double upper_log_ratio = 0.0;
};

struct AuditReport {
  std::size_t trials = 0;
  double epsilon = 0.0;
  double tau = 0.0;
  /// The guarantee being checked: 4 * tau * epsilon.
  double bound = 0.0;
  /// Normal quantile used for every Wilson interval.
  double z = 0.0;
  std::vector<OutcomeStats> outcomes;
  /// Largest lower-confidence log-ratio over outcomes and both directions.
  double max_lower_log_ratio = 0.0;
  /// Set when max_lower_log_ratio exceeds `bound`.
  bool violation = false;
};

struct AuditOptions {
  /// Family-wise two-sided error rate; the default is the 3-sigma rate.
  double family_alpha = 0.0027;
};

/// Runs dp_min_st_cut `trials` times on each graph (streams rng.split(0) and
/// rng.split(1)) and compares the partition histograms. Throws
/// std::invalid_argument if the graphs are not neighbors at granularity
/// spec.tau or have more than kAuditMaxNodes nodes.
AuditReport privacy_ratio_audit(const Graph &g, const Graph &neighbor, NodeId s, NodeId t, const NoiseSpec &spec,
                                std::size_t trials, Rng &rng, const AuditOptions &options = {});

/// True if the graphs share a node set and scale and differ on at most one
/// pair, by at most tau.
bool are_neighbors(const Graph &g, const Graph &h, double tau);

/// Wilson score interval for k successes out of n at normal quantile z.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n, double z);

/// Nodes: s = 0, t = 1, v_i = i + 2. Unit edge s-v_i if bits[i], else t-v_i.
/// Every graph in the family has min s-t cut 0.
Graph lower_bound_family(const std::vector<bool> &bits);

struct LowerBoundSweep {
  /// Mean weight_original over all runs; equals the mean additive error.
  double mean_error = 0.0;
  /// Number of non-terminal nodes divided by 20.
  double reference_bound = 0.0;
  std::size_t runs = 0;
  /// The reference bound only applies for epsilon <= 1.
  bool in_bound_regime = false;
};

/// Draws `num_tau` uniform bit strings of length n and runs dp_min_st_cut
/// `trials_per_tau` times on each family member.
LowerBoundSweep lower_bound_error_sweep(std::size_t n, double epsilon, std::size_t num_tau,
                                        std::size_t trials_per_tau, Rng &rng);

} // namespace dpcut
