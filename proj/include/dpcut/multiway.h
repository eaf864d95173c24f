#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dpcut/graph.h"
#include "dpcut/noise.h"

namespace dpcut {

/// Any min s-t cut routine: exact, private, or instrumented.
using MinStCutSolver = std::function<CutSolution(const Graph &, NodeId, NodeId)>;

MinStCutSolver exact_solver();

struct MultiwayCut {
  /// part_of_node[v] = i means v lies in the part of terminals[i].
  std::vector<std::size_t> part_of_node;
  std::vector<NodePair> cut_edges;
  FxWeight weight;
  std::size_t solver_invocations = 0;
  /// Basic-composition privacy cost; zero for non-private runs.
  double privacy_cost = 0.0;
};

/// Builds the cut edges and weight of a part assignment on g.
MultiwayCut make_multiway_cut(const Graph &g, std::vector<std::size_t> part_of_node);

/// Number of levels of the terminal bisection tree, ceil(log2 k).
std::size_t bisection_depth(std::size_t k);

/// Splits the terminals into the first floor(k/2) and the rest, contracts
/// each group, cuts, and recurses on both sides with the original graph
/// induced on each side. One solver call per internal recursion node.
MultiwayCut multiway_recursive(const Graph &g, std::span<const NodeId> terminals, const MinStCutSolver &solver);

/// Same recursion, but all subproblems of one level are solved by a single
/// solver call on their disjoint union with every level source merged into
/// one s and every level sink merged into one t.
MultiwayCut multiway_batched(const Graph &g, std::span<const NodeId> terminals, const MinStCutSolver &solver);

/// multiway_batched with dp_min_st_cut as the solver. Level i draws from
/// rng.split(i); privacy_cost = epsilon * ceil(log2 k).
MultiwayCut dp_multiway(const Graph &g, std::span<const NodeId> terminals, const NoiseSpec &spec, Rng &rng);

inline constexpr std::uint64_t kMultiwayBruteForceLimit = 10'000'000;

/// Exact optimum by enumerating every assignment of non-terminal nodes.
MultiwayCut multiway_brute_force(const Graph &g, std::span<const NodeId> terminals);

/// Classical k-call baseline: for each terminal, the minimal cut isolating it
/// from the others. Nodes claimed by no isolating cut join the terminal whose
/// isolating cut is heaviest, so the result is a subset of the union of cuts.
MultiwayCut multiway_isolation_baseline(const Graph &g, std::span<const NodeId> terminals,
                                        const MinStCutSolver &solver);

/// True if removing cut.cut_edges leaves every terminal in its own component.
bool separates_terminals(const Graph &g, std::span<const NodeId> terminals, const MultiwayCut &cut);

} // namespace dpcut
