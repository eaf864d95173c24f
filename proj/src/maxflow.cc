#include "dpcut/maxflow.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dpcut {

namespace {

void check_terminals(const Graph &g, NodeId s, NodeId t) {
  if (!g.contains(s) || !g.contains(t)) {
    throw std::invalid_argument("terminal out of range");
  }
  if (s == t) {
    throw std::invalid_argument("source and sink must differ");
  }
}

// Residual network in CSR form. Every undirected edge {u, v} of weight w
// becomes the arc pair u->v and v->u, each of capacity w and each the
// other's reverse.
class Dinic {
public:
  explicit Dinic(const Graph &g) : n_(g.num_nodes()), first_(n_ + 1, 0) {
    for (const Edge &e : g.edges()) {
      ++first_[e.u + 1];
      ++first_[e.v + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) {
      first_[v + 1] += first_[v];
    }
    const std::size_t arcs = first_[n_];
    head_.resize(arcs);
    reverse_.resize(arcs);
    residual_.resize(arcs);
    std::vector<std::size_t> fill(first_.begin(), first_.end() - 1);
    for (const Edge &e : g.edges()) {
      const std::size_t a = fill[e.u]++;
      const std::size_t b = fill[e.v]++;
      head_[a] = e.v;
      head_[b] = e.u;
      reverse_[a] = b;
      reverse_[b] = a;
      residual_[a] = e.weight.mantissa();
      residual_[b] = e.weight.mantissa();
    }
    level_.resize(n_);
    cursor_.resize(n_);
    queue_.reserve(n_);
  }

  Mantissa run(NodeId s, NodeId t) {
    Mantissa flow = 0;
    while (build_levels(s, t)) {
      std::copy(first_.begin(), first_.end() - 1, cursor_.begin());
      while (const Mantissa pushed = augment(s, t, std::numeric_limits<Mantissa>::max())) {
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<Side> residual_source_side(NodeId s) const {
    std::vector<Side> side(n_, Side::kSink);
    std::vector<NodeId> stack{s};
    side[s] = Side::kSource;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (std::size_t a = first_[v]; a < first_[v + 1]; ++a) {
        if (residual_[a] != 0 && side[head_[a]] == Side::kSink) {
          side[head_[a]] = Side::kSource;
          stack.push_back(head_[a]);
        }
      }
    }
    return side;
  }

private:
  bool build_levels(NodeId s, NodeId t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    queue_.push_back(s);
    level_[s] = 0;
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const NodeId v = queue_[i];
      for (std::size_t a = first_[v]; a < first_[v + 1]; ++a) {
        if (residual_[a] != 0 && level_[head_[a]] < 0) {
          level_[head_[a]] = level_[v] + 1;
          queue_.push_back(head_[a]);
        }
      }
    }
    return level_[t] >= 0;
  }

  // Depth of the recursion is bounded by the BFS level of t.
  Mantissa augment(NodeId v, NodeId t, Mantissa limit) {
    if (v == t) {
      return limit;
    }
    for (std::size_t &a = cursor_[v]; a < first_[v + 1]; ++a) {
      const NodeId w = head_[a];
      if (residual_[a] == 0 || level_[w] != level_[v] + 1) {
        continue;
      }
      const Mantissa pushed = augment(w, t, std::min(limit, residual_[a]));
      if (pushed != 0) {
        residual_[a] -= pushed;
        residual_[reverse_[a]] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::size_t n_;
  std::vector<std::size_t> first_;
  std::vector<NodeId> head_;
  std::vector<std::size_t> reverse_;
  std::vector<Mantissa> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<NodeId> queue_;
};

} // namespace

MaxFlowResult max_flow(const Graph &g, NodeId s, NodeId t) {
  check_terminals(g, s, t);
  Dinic dinic(g);
  MaxFlowResult result;
  result.value = FxWeight::from_mantissa(dinic.run(s, t));
  result.side_of_node = dinic.residual_source_side(s);
  return result;
}

CutSolution min_st_cut_exact(const Graph &g, NodeId s, NodeId t) {
  MaxFlowResult flow = max_flow(g, s, t);
  return make_cut_solution(g, g, std::move(flow.side_of_node));
}

BruteForceCut brute_force_min_st_cut(const Graph &g, NodeId s, NodeId t) {
  check_terminals(g, s, t);
  const std::size_t n = g.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw std::invalid_argument("brute_force_min_st_cut: at most " + std::to_string(kBruteForceMaxNodes) +
                                " nodes");
  }
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < n; ++v) {
    if (v != s && v != t) {
      free_nodes.push_back(v);
    }
  }

  std::vector<Side> side(n, Side::kSink);
  side[s] = Side::kSource;
  std::vector<Side> best_side;
  FxWeight best;
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << free_nodes.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i) {
      side[free_nodes[i]] = ((mask >> i) & 1U) != 0 ? Side::kSource : Side::kSink;
    }
    const FxWeight w = cut_weight(g, side);
    if (count == 0 || w < best) {
      best = w;
      best_side = side;
      count = 1;
    } else if (w == best) {
      ++count;
    }
  }
  BruteForceCut out;
  out.cut = make_cut_solution(g, g, std::move(best_side));
  out.count_of_minima = count;
  return out;
}

} // namespace dpcut
