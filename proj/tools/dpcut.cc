#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dpcut/audit.h"
#include "dpcut/dp_st_cut.h"
#include "dpcut/experiment.h"
#include "dpcut/json_io.h"
#include "dpcut/maxflow.h"
#include "dpcut/multiway.h"

namespace {

using namespace dpcut;
using nlohmann::json;

constexpr std::size_t kStandInNodes = 1005;
constexpr std::size_t kStandInEdges = 25571;

struct GraphArgs {
  std::string path;
  int fractional_bits = 0;
  bool skip_self_loops = false;
};

void add_graph_options(CLI::App *cmd, GraphArgs &args, const std::string &flag = "--graph") {
  cmd->add_option(flag, args.path, "Edge list: 'u v [w]' per line")->required()->check(CLI::ExistingFile);
  cmd->add_option("--fractional-bits", args.fractional_bits, "Binary digits kept after the point in weights")
      ->check(CLI::Range(0, 19));
  cmd->add_flag("--skip-self-loops", args.skip_self_loops, "Ignore 'v v' lines instead of failing");
}

LoadedGraph load(const std::string &path, const GraphArgs &args) {
  LoadOptions options;
  options.fractional_bits = args.fractional_bits;
  options.skip_self_loops = args.skip_self_loops;
  return read_edge_list_file(path, options);
}

NodeId node(const LoadedGraph &g, std::int64_t label) {
  try {
    return g.node_for_label(label);
  } catch (const std::out_of_range &) {
    throw std::invalid_argument("node " + std::to_string(label) + " does not appear in the graph");
  }
}

/// Re-indexes `other` with the node ids of `reference`; both must list the same labels.
Graph align(const LoadedGraph &other, const LoadedGraph &reference) {
  if (other.labels.size() != reference.labels.size()) {
    throw std::invalid_argument("graphs have different node sets");
  }
  std::vector<Edge> edges;
  for (const Edge &e : other.graph.edges()) {
    edges.push_back({node(reference, other.labels[e.u]), node(reference, other.labels[e.v]), e.weight});
  }
  return Graph::from_edges(reference.graph.num_nodes(), std::move(edges), reference.graph.scale());
}

void print(const json &j) { std::cout << j.dump(2) << '\n'; }

struct Stats {
  double mean = 0;
  double stddev = 0;
};

Stats stats(const std::vector<double> &xs) {
  Stats s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    for (double x : xs) s.stddev += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(s.stddev / static_cast<double>(xs.size() - 1));
  }
  return s;
}

NoiseSpec noise_spec(double epsilon, std::uint64_t seed) {
  NoiseSpec spec;
  spec.epsilon = epsilon;
  spec.seed = seed;
  spec.validate();
  return spec;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Private and exact minimum cuts"};
  app.require_subcommand(1);

  GraphArgs graph_args;
  std::int64_t source = 0;
  std::int64_t sink = 1;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  bool with_exact = false;

  auto *stcut = app.add_subcommand("stcut", "Exact minimum s-t cut");
  add_graph_options(stcut, graph_args);
  stcut->add_option("--source", source, "Source node label")->required();
  stcut->add_option("--sink", sink, "Sink node label")->required();

  auto *dp_stcut = app.add_subcommand("dp-stcut", "Private minimum s-t cut");
  add_graph_options(dp_stcut, graph_args);
  dp_stcut->add_option("--source", source, "Source node label")->required();
  dp_stcut->add_option("--sink", sink, "Sink node label")->required();
  dp_stcut->add_option("--epsilon", epsilon, "Privacy parameter")->required();
  dp_stcut->add_option("--seed", seed, "Random seed");
  dp_stcut->add_option("--trials", trials, "Independent runs; more than one prints a summary")
      ->check(CLI::PositiveNumber);
  dp_stcut->add_flag("--with-exact", with_exact, "Also report the exact optimum and additive error");

  std::vector<std::int64_t> terminal_labels;
  bool private_multiway = false;
  std::string baseline;
  auto *multiway = app.add_subcommand("multiway", "Multiway cut by recursive terminal bisection");
  add_graph_options(multiway, graph_args);
  multiway->add_option("--terminals", terminal_labels, "Terminal labels, comma separated")
      ->required()
      ->delimiter(',');
  multiway->add_flag("--dp", private_multiway, "Use the private s-t cut at every level");
  multiway->add_option("--epsilon", epsilon, "Privacy parameter per level (with --dp)");
  multiway->add_option("--seed", seed, "Random seed (with --dp)");
  multiway->add_option("--baseline", baseline, "Run a baseline instead")->check(CLI::IsMember({"isolation"}));
  multiway->add_flag("--with-exact", with_exact, "Also report the brute-force optimum (small graphs)");

  std::string neighbor_path;
  auto *audit = app.add_subcommand("audit", "Monte Carlo privacy audit of the private s-t cut");
  add_graph_options(audit, graph_args);
  audit->add_option("--neighbor", neighbor_path, "Neighboring graph")->required()->check(CLI::ExistingFile);
  audit->add_option("--source", source, "Source node label");
  audit->add_option("--sink", sink, "Sink node label");
  audit->add_option("--epsilon", epsilon, "Privacy parameter")->required();
  double tau = 1.0;
  audit->add_option("--tau", tau, "Neighbor granularity");
  audit->add_option("--trials", trials, "Runs per graph")->required()->check(CLI::PositiveNumber);
  audit->add_option("--seed", seed, "Random seed");

  std::size_t lb_n = 100;
  std::size_t num_tau = 50;
  std::size_t trials_per_tau = 20;
  auto *lb = app.add_subcommand("lb-sweep", "Error of the private cut on the zero-cut lower-bound family");
  lb->add_option("--n", lb_n, "Number of non-terminal nodes")->check(CLI::PositiveNumber);
  lb->add_option("--epsilon", epsilon, "Privacy parameter")->required();
  lb->add_option("--num-tau", num_tau, "Random family members")->check(CLI::PositiveNumber);
  lb->add_option("--trials", trials_per_tau, "Runs per family member")->check(CLI::PositiveNumber);
  lb->add_option("--seed", seed, "Random seed");

  ExperimentConfig config;
  std::string experiment_graph;
  std::string out_path;
  bool epsilon_sweep = false;
  auto *experiment = app.add_subcommand("experiment", "Private vs terminal cut on contracted instances");
  experiment->add_option("--graph", experiment_graph,
                         "Base edge list; a synthetic stand-in of the same size is used if missing");
  experiment->add_option("--fractional-bits", graph_args.fractional_bits)->check(CLI::Range(0, 19));
  experiment->add_flag("--skip-self-loops", graph_args.skip_self_loops);
  experiment->add_option("--epsilons", config.epsilons, "Privacy parameters, comma separated")->delimiter(',');
  experiment->add_flag("--epsilon-sweep", epsilon_sweep, "Use the grid 1/15, ..., 1/2, 1");
  experiment->add_option("--instances", config.instances)->check(CLI::PositiveNumber);
  experiment->add_option("--trials", config.trials)->check(CLI::PositiveNumber);
  experiment->add_option("--seed", config.seed);
  experiment->add_option("--weight-mean", config.weight_mean)->check(CLI::PositiveNumber);
  experiment->add_option("--contract-fraction", config.contract_fraction);
  experiment->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stcut->parsed()) {
      const LoadedGraph g = load(graph_args.path, graph_args);
      const CutSolution cut = min_st_cut_exact(g.graph, node(g, source), node(g, sink));
      json out = cut_to_json(cut, g.graph);
      out["labels"] = g.labels;
      print(out);
    } else if (dp_stcut->parsed()) {
      const LoadedGraph g = load(graph_args.path, graph_args);
      const NodeId s = node(g, source);
      const NodeId t = node(g, sink);
      const NoiseSpec spec = noise_spec(epsilon, seed);
      const Rng root(seed);
      std::optional<double> opt;
      if (with_exact) {
        opt = g.graph.real(min_st_cut_exact(g.graph, s, t).weight_original);
      }
      json out;
      if (trials == 1) {
        Rng rng = root.split(0);
        out = cut_to_json(dp_min_st_cut(g.graph, s, t, spec, rng), g.graph);
        out["labels"] = g.labels;
      } else {
        std::vector<double> weights;
        for (std::size_t j = 0; j < trials; ++j) {
          Rng rng = root.split(j);
          weights.push_back(g.graph.real(dp_min_st_cut(g.graph, s, t, spec, rng).weight_original));
        }
        const Stats st = stats(weights);
        out = {{"trials", trials}, {"mean_weight", st.mean}, {"std_weight", st.stddev}};
      }
      out["epsilon"] = epsilon;
      out["seed"] = seed;
      if (opt) {
        out["opt"] = *opt;
        const double weight = trials == 1 ? std::stod(out["weight_original"].get<std::string>())
                                          : out["mean_weight"].get<double>();
        out["additive_error"] = weight - *opt;
      }
      print(out);
    } else if (multiway->parsed()) {
      const LoadedGraph g = load(graph_args.path, graph_args);
      std::vector<NodeId> terminals;
      for (std::int64_t label : terminal_labels) {
        terminals.push_back(node(g, label));
      }
      if (private_multiway && !baseline.empty()) {
        throw std::invalid_argument("--dp and --baseline are exclusive");
      }
      MultiwayCut cut;
      if (!baseline.empty()) {
        cut = multiway_isolation_baseline(g.graph, terminals, exact_solver());
      } else if (private_multiway) {
        Rng rng(seed);
        cut = dp_multiway(g.graph, terminals, noise_spec(epsilon, seed), rng);
      } else {
        cut = multiway_batched(g.graph, terminals, exact_solver());
      }
      json out = multiway_to_json(cut, g.graph);
      out["labels"] = g.labels;
      out["terminals"] = terminal_labels;
      if (with_exact) {
        out["opt"] = g.graph.format(multiway_brute_force(g.graph, terminals).weight);
      }
      print(out);
    } else if (audit->parsed()) {
      const LoadedGraph g = load(graph_args.path, graph_args);
      const LoadedGraph h = load(neighbor_path, graph_args);
      NoiseSpec spec = noise_spec(epsilon, seed);
      spec.tau = tau;
      spec.validate();
      Rng rng(seed);
      const AuditReport report =
          privacy_ratio_audit(g.graph, align(h, g), node(g, source), node(g, sink), spec, trials, rng);
      json out = audit_to_json(report);
      out["labels"] = g.labels;
      print(out);
    } else if (lb->parsed()) {
      Rng rng(seed);
      const LowerBoundSweep sweep = lower_bound_error_sweep(lb_n, epsilon, num_tau, trials_per_tau, rng);
      print({{"n", lb_n},
             {"epsilon", epsilon},
             {"runs", sweep.runs},
             {"mean_error", sweep.mean_error},
             {"reference_bound", sweep.reference_bound},
             {"in_bound_regime", sweep.in_bound_regime}});
    } else if (experiment->parsed()) {
      if (epsilon_sweep) {
        config.epsilons = epsilon_sweep_grid();
      }
      std::vector<std::string> comments;
      std::optional<Graph> base;
      if (!experiment_graph.empty() && std::filesystem::exists(experiment_graph)) {
        LoadedGraph g = load(experiment_graph, graph_args);
        comments.push_back("base graph: " + experiment_graph + " (" + std::to_string(g.graph.num_nodes()) +
                           " nodes, " + std::to_string(g.graph.num_edges()) + " edges)");
        base = std::move(g.graph);
      } else {
        if (!experiment_graph.empty()) {
          std::cerr << "warning: " << experiment_graph << " not found, using a synthetic stand-in\n";
        }
        base = synthetic_stand_in(kStandInNodes, kStandInEdges, config.seed);
        comments.push_back("base graph: synthetic stand-in G(n, p), " + std::to_string(kStandInNodes) +
                           " nodes, " + std::to_string(base->num_edges()) + " edges, seed " +
                           std::to_string(config.seed));
      }
      std::ostringstream params;
      params << "instances " << config.instances << ", trials " << config.trials << ", weight mean "
             << config.weight_mean << ", contract fraction " << config.contract_fraction;
      comments.push_back(params.str());
      const std::string csv = to_csv(run_experiment(*base, config), comments);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(out_path);
        if (!(out << csv)) {
          throw std::runtime_error("cannot write " + out_path);
        }
      }
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
