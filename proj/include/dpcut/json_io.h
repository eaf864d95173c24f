#pragma once

#include <json.hpp>

#include "dpcut/audit.h"
#include "dpcut/graph.h"
#include "dpcut/multiway.h"

namespace dpcut {

// Weights are emitted as exact decimal strings.

/// {"n": ..., "edges": [[u, v, "w"], ...]}
nlohmann::json graph_to_json(const Graph &g);

/// Inverse of graph_to_json; the scale is WeightScale::for_nodes(n, fractional_bits).
Graph graph_from_json(const nlohmann::json &j, int fractional_bits = 0);

/// {"side": [0|1 ...], "cut_edges": [[u, v], ...], "weight": "...",
///  "weight_original": "...", "weight_perturbed": "..."}; side 0 is the source side.
nlohmann::json cut_to_json(const CutSolution &cut, const Graph &g);

nlohmann::json multiway_to_json(const MultiwayCut &cut, const Graph &g);

nlohmann::json audit_to_json(const AuditReport &report);

} // namespace dpcut
