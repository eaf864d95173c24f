#include "dpcut/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dpcut/rng.h"

namespace dpcut {

namespace {

void check_sides(const Graph &g, std::span<const Side> side_of_node) {
  if (side_of_node.size() != g.num_nodes()) {
    throw std::invalid_argument("side assignment has " + std::to_string(side_of_node.size()) +
                                " entries for a graph with " + std::to_string(g.num_nodes()) + " nodes");
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) {
      ++i;
    }
    if (i > start) {
      fields.push_back(line.substr(start, i - start));
    }
  }
  return fields;
}

std::int64_t parse_id(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw EdgeListError(line_no, "malformed node id '" + std::string(field) + "'");
  }
  return value;
}

} // namespace

// ---------------------------------------------------------------------------
// Graph

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges, WeightScale scale,
                        std::vector<NodeId> terminals) {
  for (Edge &e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u > e.v) {
      std::swap(e.u, e.v);
    }
  }
  for (NodeId t : terminals) {
    if (t >= n) {
      throw std::invalid_argument("terminal out of range");
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge &a, const Edge &b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

  Graph g;
  g.n_ = n;
  g.scale_ = scale;
  g.terminals_ = std::move(terminals);
  g.edges_.reserve(edges.size());
  for (const Edge &e : edges) {
    if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v) {
      g.edges_.back().weight += e.weight;
    } else {
      g.edges_.push_back(e);
    }
  }
  std::erase_if(g.edges_, [](const Edge &e) { return e.weight.is_zero(); });
  return g;
}

Graph Graph::from_integer_edges(std::size_t n,
                                std::span<const std::tuple<NodeId, NodeId, std::uint64_t>> edges) {
  const WeightScale scale = WeightScale::for_nodes(n);
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto &[u, v, w] : edges) {
    list.push_back({u, v, FxWeight::from_integer(w, scale)});
  }
  return from_edges(n, std::move(list), scale);
}

FxWeight Graph::weight(NodeId u, NodeId v) const {
  if (u > v) {
    std::swap(u, v);
  }
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v}, [](const Edge &e, NodePair key) {
    return std::pair{e.u, e.v} < key;
  });
  if (it != edges_.end() && it->u == u && it->v == v) {
    return it->weight;
  }
  return {};
}

FxWeight Graph::total_weight() const {
  FxWeight total;
  for (const Edge &e : edges_) {
    total += e.weight;
  }
  return total;
}

FxWeight Graph::weighted_degree(NodeId v) const {
  FxWeight total;
  for (const Edge &e : edges_) {
    if (e.u == v || e.v == v) {
      total += e.weight;
    }
  }
  return total;
}

Graph Graph::with_terminals(std::vector<NodeId> terminals) const {
  for (NodeId t : terminals) {
    if (t >= n_) {
      throw std::invalid_argument("terminal out of range");
    }
  }
  Graph g = *this;
  g.terminals_ = std::move(terminals);
  return g;
}

CutSolution make_cut_solution(const Graph &solved, const Graph &original, std::vector<Side> sides) {
  CutSolution cut;
  cut.weight_perturbed = cut_weight(solved, sides);
  cut.weight_original = cut_weight(original, sides);
  cut.cut_edges = crossing_edges(original, sides);
  cut.side_of_node = std::move(sides);
  return cut;
}

// ---------------------------------------------------------------------------
// Edge lists

NodeId LoadedGraph::node_for_label(std::int64_t label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::out_of_range("unknown node label " + std::to_string(label));
  }
  return static_cast<NodeId>(it - labels.begin());
}

LoadedGraph load_edge_list(std::istream &in, const LoadOptions &options) {
  // Weights are parsed at fractional resolution first; the tie bits depend on
  // n, which is only known at the end.
  const WeightScale coarse_scale{options.fractional_bits, 0, 0};
  if (options.fractional_bits < 0 || options.fractional_bits > 19) {
    throw std::invalid_argument("fractional bits must lie in [0, 19]");
  }

  LoadedGraph out;
  std::unordered_map<std::int64_t, NodeId> compact;
  auto id_of = [&](std::int64_t label) {
    const auto [it, inserted] = compact.try_emplace(label, static_cast<NodeId>(out.labels.size()));
    if (inserted) {
      out.labels.push_back(label);
    }
    return it->second;
  };

  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#' || fields[0].front() == '%') {
      continue;
    }
    if (fields.size() != 2 && fields.size() != 3) {
      throw EdgeListError(line_no, "expected 'u v' or 'u v w', got " + std::to_string(fields.size()) + " fields");
    }
    const std::int64_t a = parse_id(fields[0], line_no);
    const std::int64_t b = parse_id(fields[1], line_no);
    FxWeight w = FxWeight::from_integer(1, coarse_scale);
    if (fields.size() == 3) {
      if (fields[2].front() == '-') {
        throw EdgeListError(line_no, "negative weight");
      }
      try {
        w = parse_decimal_weight(fields[2], coarse_scale);
      } catch (const std::invalid_argument &e) {
        throw EdgeListError(line_no, e.what());
      }
    }
    if (a == b) {
      if (options.skip_self_loops) {
        id_of(a);
        continue;
      }
      throw EdgeListError(line_no, "self-loop on node " + std::to_string(a));
    }
    const NodeId u = id_of(a);
    const NodeId v = id_of(b);
    edges.push_back({u, v, w});
  }

  const std::size_t n = out.labels.size();
  const WeightScale scale = WeightScale::for_nodes(n, options.fractional_bits);
  for (Edge &e : edges) {
    if (e.weight.mantissa() >> (128 - scale.tie_bits()) != 0) {
      throw std::overflow_error("edge weight too large for the weight encoding");
    }
    e.weight = FxWeight::from_mantissa(e.weight.mantissa() << scale.tie_bits());
  }
  out.graph = Graph::from_edges(n, std::move(edges), scale);
  return out;
}

LoadedGraph parse_edge_list(std::string_view text, const LoadOptions &options) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in, options);
}

LoadedGraph read_edge_list_file(const std::filesystem::path &path, const LoadOptions &options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return load_edge_list(in, options);
}

std::string to_edge_list(const Graph &g) {
  std::ostringstream out;
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << '\n';
  for (const Edge &e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << g.format(e.weight) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Structural operations

Graph quotient(const Graph &g, std::span<const NodeId> new_id, std::size_t new_n) {
  if (new_id.size() != g.num_nodes()) {
    throw std::invalid_argument("quotient map size mismatch");
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge &e : g.edges()) {
    const NodeId a = new_id[e.u];
    const NodeId b = new_id[e.v];
    if (a != b) {
      edges.push_back({a, b, e.weight});
    }
  }
  return Graph::from_edges(new_n, std::move(edges), g.scale());
}

Contraction contract(const Graph &g, std::span<const NodeId> z) {
  if (z.empty()) {
    throw std::invalid_argument("contract: empty node set");
  }
  std::vector<bool> in_z(g.num_nodes(), false);
  for (NodeId v : z) {
    if (!g.contains(v)) {
      throw std::invalid_argument("contract: unknown node " + std::to_string(v));
    }
    in_z[v] = true;
  }
  const NodeId anchor = *std::min_element(z.begin(), z.end());

  Contraction out;
  out.old_to_new.assign(g.num_nodes(), 0);
  NodeId next = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (v == anchor) {
      out.merged = next++;
    } else if (!in_z[v]) {
      out.old_to_new[v] = next++;
    }
  }
  for (NodeId v : z) {
    out.old_to_new[v] = out.merged;
  }
  out.graph = quotient(g, out.old_to_new, next);
  return out;
}

Graph induced_subgraph(const Graph &g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = ~NodeId{0};
  std::vector<NodeId> position(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!g.contains(nodes[i]) || position[nodes[i]] != kAbsent) {
      throw std::invalid_argument("induced_subgraph: invalid or repeated node");
    }
    position[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> edges;
  for (const Edge &e : g.edges()) {
    if (position[e.u] != kAbsent && position[e.v] != kAbsent) {
      edges.push_back({position[e.u], position[e.v], e.weight});
    }
  }
  return Graph::from_edges(nodes.size(), std::move(edges), g.scale());
}

FxWeight cut_weight(const Graph &g, std::span<const Side> side_of_node) {
  check_sides(g, side_of_node);
  FxWeight total;
  for (const Edge &e : g.edges()) {
    if (side_of_node[e.u] != side_of_node[e.v]) {
      total += e.weight;
    }
  }
  return total;
}

std::vector<NodePair> crossing_edges(const Graph &g, std::span<const Side> side_of_node) {
  check_sides(g, side_of_node);
  std::vector<NodePair> out;
  for (const Edge &e : g.edges()) {
    if (side_of_node[e.u] != side_of_node[e.v]) {
      out.emplace_back(e.u, e.v);
    }
  }
  return out;
}

Graph random_graph(std::size_t n, double p, std::uint64_t max_weight, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("random_graph: need at least 2 nodes");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("random_graph: edge probability must lie in [0, 1]");
  }
  if (max_weight == 0) {
    throw std::invalid_argument("random_graph: max weight must be positive");
  }
  const WeightScale scale = WeightScale::for_nodes(n);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      // Draw both values unconditionally so the weight stream does not shift with p.
      const double coin = rng.uniform01();
      const std::uint64_t w = rng.uniform_int(1, max_weight);
      if (coin < p) {
        edges.push_back({u, v, FxWeight::from_integer(w, scale)});
      }
    }
  }
  return Graph::from_edges(n, std::move(edges), scale);
}

std::vector<FxWeight> weighted_degrees(const Graph &g) {
  std::vector<FxWeight> degree(g.num_nodes());
  for (const Edge &e : g.edges()) {
    degree[e.u] += e.weight;
    degree[e.v] += e.weight;
  }
  return degree;
}

} // namespace dpcut
