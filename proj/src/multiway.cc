#include "dpcut/multiway.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "dpcut/dp_st_cut.h"
#include "dpcut/maxflow.h"

namespace dpcut {

namespace {

constexpr std::size_t kNoOwner = ~std::size_t{0};

/// A node set of the original graph together with the terminal indices it
/// still has to separate.
struct Subproblem {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> terminals;
};

void check_terminals(const Graph &g, std::span<const NodeId> terminals) {
  if (terminals.empty()) {
    throw std::invalid_argument("multiway cut needs at least one terminal");
  }
  std::vector<bool> seen(g.num_nodes(), false);
  for (NodeId t : terminals) {
    if (!g.contains(t)) {
      throw std::invalid_argument("terminal " + std::to_string(t) + " out of range");
    }
    if (seen[t]) {
      throw std::invalid_argument("duplicate terminal " + std::to_string(t));
    }
    seen[t] = true;
  }
}

Subproblem whole_graph(const Graph &g, std::size_t k) {
  Subproblem root;
  root.nodes.resize(g.num_nodes());
  std::iota(root.nodes.begin(), root.nodes.end(), NodeId{0});
  root.terminals.resize(k);
  std::iota(root.terminals.begin(), root.terminals.end(), std::size_t{0});
  return root;
}

/// Solves the bisection step of every subproblem in `level` with one solver
/// call and returns the two children of each, in order. Each subproblem must
/// hold at least two terminals.
std::vector<Subproblem> bisect_level(const Graph &g, std::span<const NodeId> terminals,
                                     std::span<const Subproblem> level, const MinStCutSolver &solver) {
  constexpr NodeId kSource = 0;
  constexpr NodeId kSink = 1;

  constexpr NodeId kUnassigned = ~NodeId{0};
  std::vector<std::size_t> owner(g.num_nodes(), kNoOwner);
  std::vector<NodeId> merged_id(g.num_nodes(), kUnassigned);
  NodeId next = 2;
  for (std::size_t i = 0; i < level.size(); ++i) {
    const Subproblem &sub = level[i];
    const std::size_t half = sub.terminals.size() / 2;
    for (std::size_t j = 0; j < sub.terminals.size(); ++j) {
      merged_id[terminals[sub.terminals[j]]] = j < half ? kSource : kSink;
    }
    for (NodeId v : sub.nodes) {
      owner[v] = i;
      if (merged_id[v] == kUnassigned) {
        merged_id[v] = next++;
      }
    }
  }

  // Edges between different subproblems were cut on an earlier level.
  std::vector<Edge> edges;
  for (const Edge &e : g.edges()) {
    if (owner[e.u] != kNoOwner && owner[e.u] == owner[e.v] && merged_id[e.u] != merged_id[e.v]) {
      edges.push_back({merged_id[e.u], merged_id[e.v], e.weight});
    }
  }
  const Graph merged = Graph::from_edges(next, std::move(edges), g.scale());
  const CutSolution cut = solver(merged, kSource, kSink);
  if (cut.side_of_node.size() != merged.num_nodes() || cut.side_of_node[kSource] != Side::kSource ||
      cut.side_of_node[kSink] != Side::kSink) {
    throw std::logic_error("solver returned an invalid s-t cut");
  }

  std::vector<Subproblem> children;
  children.reserve(2 * level.size());
  for (const Subproblem &sub : level) {
    const std::size_t half = sub.terminals.size() / 2;
    Subproblem first;
    Subproblem second;
    first.terminals.assign(sub.terminals.begin(), sub.terminals.begin() + static_cast<std::ptrdiff_t>(half));
    second.terminals.assign(sub.terminals.begin() + static_cast<std::ptrdiff_t>(half), sub.terminals.end());
    for (NodeId v : sub.nodes) {
      (cut.side_of_node[merged_id[v]] == Side::kSource ? first : second).nodes.push_back(v);
    }
    children.push_back(std::move(first));
    children.push_back(std::move(second));
  }
  return children;
}

void assign_leaf(const Subproblem &leaf, std::vector<std::size_t> &part_of_node) {
  for (NodeId v : leaf.nodes) {
    part_of_node[v] = leaf.terminals.front();
  }
}

void recurse(const Graph &g, std::span<const NodeId> terminals, const Subproblem &sub, const MinStCutSolver &solver,
             std::vector<std::size_t> &part_of_node, std::size_t &calls) {
  if (sub.terminals.size() == 1) {
    assign_leaf(sub, part_of_node);
    return;
  }
  ++calls;
  const std::vector<Subproblem> children = bisect_level(g, terminals, std::span(&sub, 1), solver);
  recurse(g, terminals, children[0], solver, part_of_node, calls);
  recurse(g, terminals, children[1], solver, part_of_node, calls);
}

} // namespace

MinStCutSolver exact_solver() {
  return [](const Graph &g, NodeId s, NodeId t) { return min_st_cut_exact(g, s, t); };
}

MultiwayCut make_multiway_cut(const Graph &g, std::vector<std::size_t> part_of_node) {
  if (part_of_node.size() != g.num_nodes()) {
    throw std::invalid_argument("part assignment size mismatch");
  }
  MultiwayCut cut;
  for (const Edge &e : g.edges()) {
    if (part_of_node[e.u] != part_of_node[e.v]) {
      cut.cut_edges.emplace_back(e.u, e.v);
      cut.weight += e.weight;
    }
  }
  cut.part_of_node = std::move(part_of_node);
  return cut;
}

std::size_t bisection_depth(std::size_t k) {
  return k <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(k - 1));
}

MultiwayCut multiway_recursive(const Graph &g, std::span<const NodeId> terminals, const MinStCutSolver &solver) {
  check_terminals(g, terminals);
  std::vector<std::size_t> part_of_node(g.num_nodes(), 0);
  std::size_t calls = 0;
  recurse(g, terminals, whole_graph(g, terminals.size()), solver, part_of_node, calls);
  MultiwayCut cut = make_multiway_cut(g, std::move(part_of_node));
  cut.solver_invocations = calls;
  return cut;
}

MultiwayCut multiway_batched(const Graph &g, std::span<const NodeId> terminals, const MinStCutSolver &solver) {
  check_terminals(g, terminals);
  std::vector<std::size_t> part_of_node(g.num_nodes(), 0);
  std::size_t calls = 0;

  std::vector<Subproblem> level{whole_graph(g, terminals.size())};
  while (!level.empty()) {
    std::vector<Subproblem> active;
    for (Subproblem &sub : level) {
      if (sub.terminals.size() == 1) {
        assign_leaf(sub, part_of_node);
      } else {
        active.push_back(std::move(sub));
      }
    }
    if (active.empty()) {
      break;
    }
    ++calls;
    level = bisect_level(g, terminals, active, solver);
  }

  MultiwayCut cut = make_multiway_cut(g, std::move(part_of_node));
  cut.solver_invocations = calls;
  return cut;
}

MultiwayCut dp_multiway(const Graph &g, std::span<const NodeId> terminals, const NoiseSpec &spec, Rng &rng) {
  spec.validate();
  std::uint64_t level = 0;
  const MinStCutSolver solver = [&](const Graph &h, NodeId s, NodeId t) {
    Rng stream = rng.split(level++);
    return dp_min_st_cut(h, s, t, spec, stream);
  };
  MultiwayCut cut = multiway_batched(g, terminals, solver);
  cut.privacy_cost = spec.epsilon * static_cast<double>(bisection_depth(terminals.size()));
  return cut;
}

MultiwayCut multiway_brute_force(const Graph &g, std::span<const NodeId> terminals) {
  check_terminals(g, terminals);
  const std::size_t k = terminals.size();
  std::vector<std::size_t> part(g.num_nodes(), kNoOwner);
  for (std::size_t i = 0; i < k; ++i) {
    part[terminals[i]] = i;
  }
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (part[v] == kNoOwner) {
      free_nodes.push_back(v);
      part[v] = 0;
    }
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < free_nodes.size(); ++i) {
    total *= k;
    if (total > kMultiwayBruteForceLimit) {
      throw std::invalid_argument("multiway_brute_force: more than 10^7 assignments");
    }
  }

  std::vector<std::size_t> best_part = part;
  FxWeight best;
  bool have_best = false;
  for (std::uint64_t step = 0; step < total; ++step) {
    FxWeight w;
    for (const Edge &e : g.edges()) {
      if (part[e.u] != part[e.v]) {
        w += e.weight;
      }
    }
    if (!have_best || w < best) {
      best = w;
      best_part = part;
      have_best = true;
    }
    // Odometer increment over the free nodes.
    for (NodeId v : free_nodes) {
      if (++part[v] < k) {
        break;
      }
      part[v] = 0;
    }
  }
  return make_multiway_cut(g, std::move(best_part));
}

MultiwayCut multiway_isolation_baseline(const Graph &g, std::span<const NodeId> terminals,
                                        const MinStCutSolver &solver) {
  check_terminals(g, terminals);
  const std::size_t k = terminals.size();
  if (k < 2) {
    throw std::invalid_argument("isolation baseline needs at least two terminals");
  }
  constexpr NodeId kSource = 0;
  constexpr NodeId kSink = 1;

  std::vector<std::size_t> part(g.num_nodes(), kNoOwner);
  std::size_t heaviest = 0;
  FxWeight heaviest_weight;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<NodeId> merged_id(g.num_nodes(), ~NodeId{0});
    for (std::size_t j = 0; j < k; ++j) {
      merged_id[terminals[j]] = j == i ? kSource : kSink;
    }
    NodeId next = 2;
    for (NodeId &id : merged_id) {
      if (id == ~NodeId{0}) {
        id = next++;
      }
    }
    const Graph merged = quotient(g, merged_id, next);
    const CutSolution cut = solver(merged, kSource, kSink);
    const FxWeight w = cut_weight(merged, cut.side_of_node);
    if (i == 0 || w > heaviest_weight) {
      heaviest = i;
      heaviest_weight = w;
    }
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (part[v] == kNoOwner && cut.side_of_node[merged_id[v]] == Side::kSource) {
        part[v] = i;
      }
    }
  }
  for (std::size_t &p : part) {
    if (p == kNoOwner) {
      p = heaviest;
    }
  }
  MultiwayCut out = make_multiway_cut(g, std::move(part));
  out.solver_invocations = k;
  return out;
}

bool separates_terminals(const Graph &g, std::span<const NodeId> terminals, const MultiwayCut &cut) {
  // Union-find over the edges that survive the cut.
  std::vector<NodeId> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::vector<NodePair> removed = cut.cut_edges;
  std::sort(removed.begin(), removed.end());
  for (const Edge &e : g.edges()) {
    if (!std::binary_search(removed.begin(), removed.end(), NodePair{e.u, e.v})) {
      parent[find(e.u)] = find(e.v);
    }
  }
  std::vector<NodeId> roots;
  for (NodeId t : terminals) {
    roots.push_back(find(t));
  }
  std::sort(roots.begin(), roots.end());
  return std::adjacent_find(roots.begin(), roots.end()) == roots.end();
}

} // namespace dpcut
