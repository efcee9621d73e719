#pragma once

#include <cstdint>

#include "n2e/graph.hpp"

namespace n2e {

struct ClipReport {
  Graph clipped;
  std::int64_t removed_edges = 0;
  std::int64_t saturated_nodes = 0;  // nodes of the input with degree >= tau
  int tau = 0;
};

// Rank-based degree clipping. Each node keeps its tau smallest incident
// edges under the global edge order; an edge survives only if both
// endpoints keep it. Node set unchanged, max degree of the result <= tau.
// Output depends only on (edge set, tau).
ClipReport clip_graph(const Graph& g, int tau);

// Endpoint-degree greedy clipping used by the degree-distribution task.
// Edges are scanned in the global edge order; an edge is kept iff both
// endpoints' retained degree is still < theta. Max degree of the result
// <= theta, and the degree histogram changes by at most 2*theta + 1 (L1)
// across node-neighbor inputs.
ClipReport endpoint_degree_clip(const Graph& g, int theta);

// Certified edge-distance bound between clipped node-neighbors when
// tau is the k-th largest degree of the base graph: tau + k.
inline std::int64_t clip_distance_bound(std::int64_t tau, std::int64_t k) { return tau + k; }

}  // namespace n2e
