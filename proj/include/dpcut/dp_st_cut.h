#pragma once

#include <cstddef>
#include <vector>

#include "dpcut/graph.h"
#include "dpcut/noise.h"

namespace dpcut {

/// The two noise edges attached to one non-terminal node.
struct NoiseEdges {
  NodeId node = 0;
  FxWeight to_source;
  FxWeight to_sink;
};

/// Input graph plus one Exp(epsilon) edge from each terminal to every other
/// node. Noise weights are floored to the fractional resolution and carry a
/// uniform isolation value in {1..2n^2} in their iso bits.
struct PerturbedGraph {
  Graph base;
  Graph augmented;
  std::vector<NoiseEdges> added;
  NodeId source = 0;
  NodeId sink = 0;

  [[nodiscard]] std::size_t num_added_edges() const { return 2 * added.size(); }
  [[nodiscard]] FxWeight total_added_weight() const;
};

PerturbedGraph perturb(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec, Rng &rng);

/// Private min s-t cut: exact min cut of the perturbed graph. The partition is
/// the mechanism's output; weight_original evaluates it on `g`.
CutSolution dp_min_st_cut(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec, Rng &rng);

inline constexpr std::size_t kUniqueMinMaxNodes = 12;

/// Fraction of `trials` perturbations whose minimum s-t cut is unique.
double unique_min_probability(const Graph &g, NodeId s, NodeId t, const NoiseSpec &spec, std::size_t trials,
                              Rng &rng);

} // namespace dpcut
