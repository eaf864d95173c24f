#include "dpcut/dp_st_cut.h"

#include <stdexcept>

#include "dpcut/maxflow.h"

namespace dpcut {

namespace {

FxWeight noise_weight(double epsilon, std::uint64_t isolation_range, const WeightScale &scale, Rng &rng) {
  const FxWeight coarse = quantize(sample_exp(epsilon, rng), scale);
  const std::uint64_t isolation = rng.uniform_int(1, isolation_range);
  return coarse + FxWeight::from_mantissa(Mantissa{isolation});
}

} // namespace

FxWeight PerturbedGraph::total_added_weight() const {
  FxWeight total;
  for (const NoiseEdges &e : added) {
    total += e.to_source;
    total += e.to_sink;
  }
  return total;
}

PerturbedGraph perturb(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec, Rng &rng) {
  spec.validate();
  if (!g.contains(s) || !g.contains(t)) {
    throw std::invalid_argument("terminal out of range");
  }
  if (s == t) {
    throw std::invalid_argument("source and sink must differ");
  }
  const std::size_t n = g.num_nodes();
  const WeightScale &scale = g.scale();
  if (!scale.supports(n)) {
    throw std::invalid_argument("graph weight scale has no room for isolation bits");
  }
  const std::uint64_t isolation_range = WeightScale::isolation_range(n);

  PerturbedGraph out;
  out.source = s;
  out.sink = t;
  out.added.reserve(n >= 2 ? n - 2 : 0);

  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.reserve(edges.size() + 2 * n);
  for (NodeId u = 0; u < n; ++u) {
    if (u == s || u == t) {
      continue;
    }
    NoiseEdges noise;
    noise.node = u;
    noise.to_source = noise_weight(spec.epsilon, isolation_range, scale, rng);
    noise.to_sink = noise_weight(spec.epsilon, isolation_range, scale, rng);
    // Existing s-u / t-u edges absorb the noise when the factory merges pairs.
    edges.push_back({s, u, noise.to_source});
    edges.push_back({t, u, noise.to_sink});
    out.added.push_back(noise);
  }
  out.augmented = Graph::from_edges(n, std::move(edges), scale);
  out.base = g;
  return out;
}

CutSolution dp_min_st_cut(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec, Rng &rng) {
  const PerturbedGraph perturbed = perturb(g, s, t, spec, rng);
  MaxFlowResult flow = max_flow(perturbed.augmented, s, t);
  return make_cut_solution(perturbed.augmented, g, std::move(flow.side_of_node));
}

double unique_min_probability(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec, std::size_t trials,
                              Rng &rng) {
  if (g.num_nodes() > kUniqueMinMaxNodes) {
    throw std::invalid_argument("unique_min_probability: at most " + std::to_string(kUniqueMinMaxNodes) +
                                " nodes");
  }
  if (trials == 0) {
    throw std::invalid_argument("unique_min_probability: need at least one trial");
  }
  std::size_t unique = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const PerturbedGraph perturbed = perturb(g, s, t, spec, rng);
    if (brute_force_min_st_cut(perturbed.augmented, s, t).count_of_minima == 1) {
      ++unique;
    }
  }
  return static_cast<double>(unique) / static_cast<double>(trials);
}

} // namespace dpcut
