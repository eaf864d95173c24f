#pragma once

#include <algorithm>
#include <numeric>
#include <tuple>
#include <vector>

#include "dpcut/graph.h"

namespace dpcut::testing {

using WeightedEdge = std::tuple<NodeId, NodeId, std::uint64_t>;

inline Graph make_graph(std::size_t n, const std::vector<WeightedEdge> &edges) {
  return Graph::from_integer_edges(n, edges);
}

/// s = 0, t = 1, and n - 2 middle nodes each joined to both terminals by a
/// unit edge. Every s-t partition is a minimum cut of weight n - 2.
inline Graph parallel_paths(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (NodeId v = 2; v < n; ++v) {
    edges.emplace_back(0, v, 1);
    edges.emplace_back(v, 1, 1);
  }
  return make_graph(n, edges);
}

/// Terminals 0, 1, 2 joined to center 3 with weights 1, 2, 3.
inline Graph weighted_star() {
  return make_graph(4, {{0, 3, 1}, {1, 3, 2}, {2, 3, 3}});
}

inline std::uint64_t integer_weight(const Graph &g, FxWeight w) {
  return static_cast<std::uint64_t>(w.mantissa() >> g.scale().shift());
}

/// Brute-force isomorphism test over all node permutations (tiny graphs only).
inline bool isomorphic(const Graph &a, const Graph &b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) {
    return false;
  }
  std::vector<NodeId> perm(a.num_nodes());
  std::iota(perm.begin(), perm.end(), NodeId{0});
  do {
    bool same = true;
    for (const Edge &e : a.edges()) {
      if (b.weight(perm[e.u], perm[e.v]) != e.weight) {
        same = false;
        break;
      }
    }
    if (same) {
      return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

} // namespace dpcut::testing
