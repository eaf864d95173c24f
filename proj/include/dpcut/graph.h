#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dpcut/fx_weight.h"

namespace dpcut {

using NodeId = std::uint32_t;
using NodePair = std::pair<NodeId, NodeId>;

/// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  FxWeight weight;

  bool operator==(const Edge &) const = default;
};

enum class Side : std::uint8_t { kSource = 0, kSink = 1 };

inline Side flip(Side side) { return side == Side::kSource ? Side::kSink : Side::kSource; }

/// Immutable undirected weighted simple graph on nodes 0..n-1.
///
/// Every stored edge has positive weight; a pair without an edge has weight
/// zero. Parallel edges handed to the factory are merged by summation.
class Graph {
public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges, WeightScale scale,
                          std::vector<NodeId> terminals = {});

  /// Integer-weighted convenience factory using WeightScale::for_nodes(n).
  static Graph from_integer_edges(std::size_t n,
                                  std::span<const std::tuple<NodeId, NodeId, std::uint64_t>> edges);

  [[nodiscard]] std::size_t num_nodes() const { return n_; }
  [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] const WeightScale &scale() const { return scale_; }
  [[nodiscard]] std::span<const NodeId> terminals() const { return terminals_; }

  [[nodiscard]] bool contains(NodeId v) const { return v < n_; }
  [[nodiscard]] FxWeight weight(NodeId u, NodeId v) const;
  [[nodiscard]] FxWeight total_weight() const;
  [[nodiscard]] FxWeight weighted_degree(NodeId v) const;

  [[nodiscard]] Graph with_terminals(std::vector<NodeId> terminals) const;

  /// Human-readable weight.
  [[nodiscard]] std::string format(FxWeight w) const { return w.to_decimal(scale_); }
  [[nodiscard]] double real(FxWeight w) const { return static_cast<double>(w.to_real(scale_)); }

  bool operator==(const Graph &) const = default;

private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  WeightScale scale_;
  std::vector<NodeId> terminals_;
};

/// A side assignment evaluated against the graph the solver saw and the
/// caller's original graph. For non-private solvers the two weights agree.
struct CutSolution {
  std::vector<Side> side_of_node;
  std::vector<NodePair> cut_edges;
  FxWeight weight_perturbed;
  FxWeight weight_original;
};

/// Builds a CutSolution; cut_edges come from `original`.
CutSolution make_cut_solution(const Graph &solved, const Graph &original, std::vector<Side> sides);

// ---------------------------------------------------------------------------
// Edge-list input

class EdgeListError : public std::runtime_error {
public:
  EdgeListError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct LoadOptions {
  int fractional_bits = 0;
  /// SNAP dumps sometimes contain "v v" lines. Rejected unless set.
  bool skip_self_loops = false;
};

struct LoadedGraph {
  Graph graph;
  /// labels[i] is the id used in the file for node i.
  std::vector<std::int64_t> labels;

  /// Throws std::out_of_range for unknown labels.
  [[nodiscard]] NodeId node_for_label(std::int64_t label) const;
};

/// Line format: "u v" or "u v w"; '#' or '%' starts a comment line.
/// Ids are compacted in first-appearance order.
LoadedGraph load_edge_list(std::istream &in, const LoadOptions &options = {});
LoadedGraph parse_edge_list(std::string_view text, const LoadOptions &options = {});
LoadedGraph read_edge_list_file(const std::filesystem::path &path, const LoadOptions &options = {});

/// "u v w" lines with exact decimal weights; re-loading reproduces the graph.
std::string to_edge_list(const Graph &g);

// ---------------------------------------------------------------------------
// Structural operations

struct Contraction {
  Graph graph;
  /// Maps every old node id to its id in `graph`.
  std::vector<NodeId> old_to_new;
  /// Id of the node that replaced the contracted set.
  NodeId merged = 0;
};

/// Replaces the node set `z` by one node placed where min(z) lands after the
/// remaining ids are compacted. Edges inside z disappear; edges from z to an
/// outside node are summed. Terminals are dropped.
Contraction contract(const Graph &g, std::span<const NodeId> z);

/// General quotient: node v becomes new_id[v]. Edges whose endpoints share a
/// new id are dropped, the rest are summed. The scale is inherited.
Graph quotient(const Graph &g, std::span<const NodeId> new_id, std::size_t new_n);

/// Subgraph induced by `nodes`; node nodes[i] becomes i.
Graph induced_subgraph(const Graph &g, std::span<const NodeId> nodes);

/// Sum of weights of edges whose endpoints lie on different sides.
FxWeight cut_weight(const Graph &g, std::span<const Side> side_of_node);

/// Edges whose endpoints lie on different sides, as (u, v) with u < v.
std::vector<NodePair> crossing_edges(const Graph &g, std::span<const Side> side_of_node);

/// Erdos-Renyi G(n, p) with integer weights uniform in [1, max_weight].
Graph random_graph(std::size_t n, double p, std::uint64_t max_weight, std::uint64_t seed);

/// Weighted degree of every node.
std::vector<FxWeight> weighted_degrees(const Graph &g);

} // namespace dpcut
