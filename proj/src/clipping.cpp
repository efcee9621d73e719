#include "n2e/clipping.hpp"

#include <stdexcept>
#include <vector>

namespace n2e {

ClipReport clip_graph(const Graph& g, int tau) {
  if (tau < 1) throw std::invalid_argument("clip_graph: tau must be >= 1");
  const auto& edges = g.edges();
  // rank_ok[i] counts in how many of its two endpoints edge i sits within
  // the first tau incident edges. Adjacency lists are already sorted by the
  // global edge order, so "first tau" is a prefix.
  std::vector<std::uint8_t> rank_ok(edges.size(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto [begin, end] = g.incident(v);
    const std::int64_t keep = std::min<std::int64_t>(tau, end - begin);
    for (std::int64_t i = 0; i < keep; ++i) ++rank_ok[begin[i]];
  }
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (rank_ok[i] == 2) kept.push_back(edges[i]);

  ClipReport report;
  report.tau = tau;
  report.saturated_nodes = count_at_least(g, tau);
  report.removed_edges = static_cast<std::int64_t>(edges.size() - kept.size());
  report.clipped = Graph(g.node_count(), std::move(kept));
  return report;
}

ClipReport endpoint_degree_clip(const Graph& g, int theta) {
  if (theta < 0) throw std::invalid_argument("endpoint_degree_clip: theta must be >= 0");
  std::vector<int> retained(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {  // edges() is in global edge order
    if (retained[e.lo] < theta && retained[e.hi] < theta) {
      ++retained[e.lo];
      ++retained[e.hi];
      kept.push_back(e);
    }
  }
  ClipReport report;
  report.tau = theta;
  report.saturated_nodes = count_at_least(g, theta);
  report.removed_edges = static_cast<std::int64_t>(g.edges().size() - kept.size());
  report.clipped = Graph(g.node_count(), std::move(kept));
  return report;
}

}  // namespace n2e
