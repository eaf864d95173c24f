#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpcut/graph.h"

namespace dpcut {

/// An s-t instance built from a base graph.
struct Instance {
  Graph graph;
  NodeId source = 0;
  NodeId sink = 1;
};

/// Reweights every base edge with round(Exp(mean weight_mean)), at least 1,
/// then contracts two disjoint uniform samples of floor(fraction * n) nodes
/// into the source (id 0) and the sink (id 1).
Instance build_instance(const Graph &base, double weight_mean, double contract_fraction, std::uint64_t seed);

/// min(w(C_s), w(C_t)) where C_x cuts the single node x off from the rest.
FxWeight terminal_cut_baseline(const Graph &g, NodeId s, NodeId t);

/// Unweighted G(n, p) with p chosen so that the expected edge count is m.
Graph synthetic_stand_in(std::size_t n, std::size_t m, std::uint64_t seed);

/// {1/15, 1/14, ..., 1/2, 1}.
std::vector<double> epsilon_sweep_grid();

struct ExperimentConfig {
  std::vector<double> epsilons{0.5};
  std::size_t instances = 50;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double weight_mean = 40.0;
  double contract_fraction = 0.1;
};

struct ExperimentRow {
  double epsilon = 0.0;
  std::size_t instance_id = 0;
  double opt = 0.0;
  double terminal_rel_err = 0.0;
  double private_rel_err_mean = 0.0;
  double private_rel_err_std = 0.0;
  /// False when opt == 0: the error columns then hold absolute errors.
  bool relative = true;
};

/// One row per (epsilon, instance), ordered by epsilon then instance id.
/// Instance i is the same graph for every epsilon.
std::vector<ExperimentRow> run_experiment(const Graph &base, const ExperimentConfig &config);

struct EpsilonSummary {
  double epsilon = 0.0;
  double mean_terminal_err = 0.0;
  double mean_private_err = 0.0;
};

/// Per-epsilon averages over instances, in the order epsilons first appear.
std::vector<EpsilonSummary> summarize_by_epsilon(const std::vector<ExperimentRow> &rows);

/// CSV with a '#'-prefixed comment line per entry of `header_comments`.
std::string to_csv(const std::vector<ExperimentRow> &rows, const std::vector<std::string> &header_comments = {});

} // namespace dpcut
