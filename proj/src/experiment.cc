#include "dpcut/experiment.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dpcut/dp_st_cut.h"
#include "dpcut/maxflow.h"
#include "dpcut/noise.h"
#include "dpcut/rng.h"

namespace dpcut {

namespace {

struct PreparedInstance {
  Instance instance;
  FxWeight opt;
  FxWeight terminal;
};

double error_metric(double value, double opt) {
  return opt > 0.0 ? (value - opt) / opt : value - opt;
}

} // namespace

Instance build_instance(const Graph &base, double weight_mean, double contract_fraction, std::uint64_t seed) {
  if (!(contract_fraction > 0.0 && contract_fraction < 0.5)) {
    throw std::invalid_argument("contract fraction must lie in (0, 0.5)");
  }
  if (!(weight_mean > 0.0)) {
    throw std::invalid_argument("weight mean must be positive");
  }
  const std::size_t n = base.num_nodes();
  const auto sample = static_cast<std::size_t>(std::floor(contract_fraction * static_cast<double>(n)));
  if (sample == 0) {
    throw std::invalid_argument("base graph too small for two disjoint terminal samples");
  }

  const Rng root(seed);
  Rng weight_rng = root.split(0);
  Rng sample_rng = root.split(1);

  std::vector<Edge> edges;
  edges.reserve(base.num_edges());
  for (const Edge &e : base.edges()) {
    const double drawn = std::round(sample_exp(1.0 / weight_mean, weight_rng));
    const auto w = static_cast<std::uint64_t>(std::max(1.0, drawn));
    edges.push_back({e.u, e.v, FxWeight::from_integer(w, base.scale())});
  }
  const Graph weighted = Graph::from_edges(n, std::move(edges), base.scale());

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), sample_rng);

  constexpr NodeId kUnassigned = ~NodeId{0};
  std::vector<NodeId> new_id(n, kUnassigned);
  for (std::size_t i = 0; i < 2 * sample; ++i) {
    new_id[order[i]] = i < sample ? 0 : 1;
  }
  NodeId next = 2;
  for (NodeId &id : new_id) {
    if (id == kUnassigned) {
      id = next++;
    }
  }

  Instance out;
  out.graph = quotient(weighted, new_id, next);
  out.source = 0;
  out.sink = 1;
  return out;
}

FxWeight terminal_cut_baseline(const Graph &g, NodeId s, NodeId t) {
  if (!g.contains(s) || !g.contains(t) || s == t) {
    throw std::invalid_argument("terminal_cut_baseline: invalid terminals");
  }
  FxWeight source_cut;
  FxWeight sink_cut;
  for (const Edge &e : g.edges()) {
    if (e.u == s || e.v == s) {
      source_cut += e.weight;
    }
    if (e.u == t || e.v == t) {
      sink_cut += e.weight;
    }
  }
  return std::min(source_cut, sink_cut);
}

Graph synthetic_stand_in(std::size_t n, std::size_t m, std::uint64_t seed) {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return random_graph(n, std::min(1.0, static_cast<double>(m) / pairs), 1, seed);
}

std::vector<double> epsilon_sweep_grid() {
  std::vector<double> grid;
  for (int d = 15; d >= 2; --d) {
    grid.push_back(1.0 / d);
  }
  grid.push_back(1.0);
  return grid;
}

std::vector<ExperimentRow> run_experiment(const Graph &base, const ExperimentConfig &config) {
  for (double eps : config.epsilons) {
    if (!(eps > 0.0)) {
      throw std::invalid_argument("every epsilon must be positive");
    }
  }
  if (config.trials == 0) {
    throw std::invalid_argument("need at least one trial per instance");
  }

  const Rng root(config.seed);
  const Rng instance_rng = root.split(0);
  const Rng trial_rng = root.split(1);

  std::vector<PreparedInstance> prepared;
  prepared.reserve(config.instances);
  for (std::size_t i = 0; i < config.instances; ++i) {
    PreparedInstance p;
    p.instance = build_instance(base, config.weight_mean, config.contract_fraction, instance_rng.split(i).seed());
    p.opt = min_st_cut_exact(p.instance.graph, p.instance.source, p.instance.sink).weight_original;
    p.terminal = terminal_cut_baseline(p.instance.graph, p.instance.source, p.instance.sink);
    prepared.push_back(std::move(p));
  }

  std::vector<ExperimentRow> rows;
  for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
    NoiseSpec spec;
    spec.epsilon = config.epsilons[e];
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      const PreparedInstance &p = prepared[i];
      const Graph &g = p.instance.graph;
      ExperimentRow row;
      row.epsilon = spec.epsilon;
      row.instance_id = i;
      row.opt = g.real(p.opt);
      row.relative = !p.opt.is_zero();
      row.terminal_rel_err = error_metric(g.real(p.terminal), row.opt);

      std::vector<double> errors;
      errors.reserve(config.trials);
      const Rng stream_root = trial_rng.split(e).split(i);
      for (std::size_t j = 0; j < config.trials; ++j) {
        Rng stream = stream_root.split(j);
        const CutSolution cut = dp_min_st_cut(g, p.instance.source, p.instance.sink, spec, stream);
        errors.push_back(error_metric(g.real(cut.weight_original), row.opt));
      }
      const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
      double sq = 0.0;
      for (double x : errors) {
        sq += (x - mean) * (x - mean);
      }
      row.private_rel_err_mean = mean;
      row.private_rel_err_std = errors.size() > 1 ? std::sqrt(sq / static_cast<double>(errors.size() - 1)) : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<EpsilonSummary> summarize_by_epsilon(const std::vector<ExperimentRow> &rows) {
  std::vector<EpsilonSummary> out;
  std::vector<std::size_t> counts;
  for (const ExperimentRow &row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const EpsilonSummary &s) { return s.epsilon == row.epsilon; });
    if (it == out.end()) {
      out.push_back({row.epsilon, 0.0, 0.0});
      counts.push_back(0);
      it = out.end() - 1;
    }
    const auto idx = static_cast<std::size_t>(it - out.begin());
    it->mean_terminal_err += row.terminal_rel_err;
    it->mean_private_err += row.private_rel_err_mean;
    ++counts[idx];
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].mean_terminal_err /= static_cast<double>(counts[i]);
    out[i].mean_private_err /= static_cast<double>(counts[i]);
  }
  return out;
}

std::string to_csv(const std::vector<ExperimentRow> &rows, const std::vector<std::string> &header_comments) {
  std::ostringstream out;
  out.precision(17);
  for (const std::string &line : header_comments) {
    out << "# " << line << '\n';
  }
  out << "epsilon,instance_id,opt,terminal_rel_err,private_rel_err_mean,private_rel_err_std,error_kind\n";
  for (const ExperimentRow &row : rows) {
    out << row.epsilon << ',' << row.instance_id << ',' << row.opt << ',' << row.terminal_rel_err << ','
        << row.private_rel_err_mean << ',' << row.private_rel_err_std << ','
        << (row.relative ? "relative" : "absolute") << '\n';
  }
  return out.str();
}

} // namespace dpcut
