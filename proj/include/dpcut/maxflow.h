#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpcut/graph.h"

namespace dpcut {

struct MaxFlowResult {
  FxWeight value;
  /// kSource for nodes reachable from s in the final residual network.
  std::vector<Side> side_of_node;
};

/// Dinic's blocking-flow algorithm over the exact integer mantissas.
/// Throws std::invalid_argument if s == t or either is out of range.
MaxFlowResult max_flow(const Graph &g, NodeId s, NodeId t);

/// Minimum s-t cut. The source side is the residual-reachable set of s,
/// which is the unique inclusion-minimal source side among all minimum cuts.
CutSolution min_st_cut_exact(const Graph &g, NodeId s, NodeId t);

inline constexpr std::size_t kBruteForceMaxNodes = 22;

struct BruteForceCut {
  CutSolution cut;
  /// Number of side assignments attaining the minimum weight.
  std::uint64_t count_of_minima = 0;
};

/// Enumerates all 2^(n-2) assignments of the non-terminal nodes.
/// Returns the first minimum in enumeration order.
BruteForceCut brute_force_min_st_cut(const Graph &g, NodeId s, NodeId t);

} // namespace dpcut
