#include "dpcut/json_io.h"

#include <cmath>

namespace dpcut {

namespace {

nlohmann::json finite_or_string(double x) {
  if (std::isfinite(x)) {
    return x;
  }
  return x > 0 ? "inf" : "-inf";
}

nlohmann::json pairs_to_json(const std::vector<NodePair> &pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &[u, v] : pairs) {
    out.push_back({u, v});
  }
  return out;
}

} // namespace

nlohmann::json graph_to_json(const Graph &g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge &e : g.edges()) {
    edges.push_back({e.u, e.v, g.format(e.weight)});
  }
  return {{"n", g.num_nodes()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const nlohmann::json &j, int fractional_bits) {
  const auto n = j.at("n").get<std::size_t>();
  const WeightScale scale = WeightScale::for_nodes(n, fractional_bits);
  std::vector<Edge> edges;
  for (const auto &e : j.at("edges")) {
    const nlohmann::json &w = e.at(2);
    const std::string text = w.is_string() ? w.get<std::string>() : w.dump();
    edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), parse_decimal_weight(text, scale)});
  }
  return Graph::from_edges(n, std::move(edges), scale);
}

nlohmann::json cut_to_json(const CutSolution &cut, const Graph &g) {
  nlohmann::json side = nlohmann::json::array();
  for (Side s : cut.side_of_node) {
    side.push_back(static_cast<int>(s));
  }
  return {{"side", std::move(side)},
          {"cut_edges", pairs_to_json(cut.cut_edges)},
          {"weight", g.format(cut.weight_original)},
          {"weight_original", g.format(cut.weight_original)},
          {"weight_perturbed", g.format(cut.weight_perturbed)}};
}

nlohmann::json multiway_to_json(const MultiwayCut &cut, const Graph &g) {
  return {{"part", cut.part_of_node},
          {"cut_edges", pairs_to_json(cut.cut_edges)},
          {"weight", g.format(cut.weight)},
          {"solver_invocations", cut.solver_invocations},
          {"privacy_cost", cut.privacy_cost}};
}

nlohmann::json audit_to_json(const AuditReport &report) {
  nlohmann::json outcomes = nlohmann::json::array();
  for (const OutcomeStats &o : report.outcomes) {
    outcomes.push_back({{"key", o.key},
                        {"count", o.count},
                        {"count_neighbor", o.count_neighbor},
                        {"log_ratio", finite_or_string(o.log_ratio)},
                        {"lower_log_ratio", finite_or_string(o.lower_log_ratio)},
                        {"upper_log_ratio", finite_or_string(o.upper_log_ratio)}});
  }
  return {{"trials", report.trials},
          {"epsilon", report.epsilon},
          {"tau", report.tau},
          {"bound", report.bound},
          {"z", report.z},
          {"max_lower_log_ratio", finite_or_string(report.max_lower_log_ratio)},
          {"violation", report.violation},
          {"outcomes", std::move(outcomes)}};
}

} // namespace dpcut
