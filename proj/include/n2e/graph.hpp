#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace n2e {

using NodeId = std::int32_t;

// Canonical undirected edge: lo < hi always.
struct Edge {
  NodeId lo = 0;
  NodeId hi = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  // Lexicographic (lo, hi) order. This is the global edge order used by the
  // clipping mechanisms: it depends only on endpoint ids, so any edge has the
  // same rank relative to other edges in every graph that contains it.
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId u, NodeId v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Immutable simple undirected graph on dense node ids 0..N-1.
// Isolated nodes are representable: node_count() may exceed the number of
// ids that appear in edges. Construction canonicalizes, dedupes and drops
// self-loops; after that the object is safe to share across threads.
class Graph {
public:
  Graph() = default;
  Graph(NodeId node_count, std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  // Edges sorted in canonical order, each exactly once.
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(NodeId v) const { return adj_ptr_[v + 1] - adj_ptr_[v]; }
  int max_degree() const;

  // Incident edges of v as indexes into edges(), sorted ascending by edge
  // order (adjacency lists inherit the canonical order).
  std::pair<const std::int32_t*, const std::int32_t*> incident(NodeId v) const {
    return {adj_edges_.data() + adj_ptr_[v], adj_edges_.data() + adj_ptr_[v + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const;

  std::vector<int> degree_sequence() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

private:
  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  // CSR over edge indexes: adj_edges_[adj_ptr_[v]..adj_ptr_[v+1]) are the
  // indexes of edges incident to v, ascending.
  std::vector<std::int32_t> adj_ptr_;
  std::vector<std::int32_t> adj_edges_;
};

enum class IdPolicy {
  kRemap,   // raw ids remapped to 0..N-1 in first-appearance order
  kStrict,  // ids must already be dense 0..N-1
};

struct LoadResult {
  Graph graph;
  // remap[i] = raw id that became dense id i (identity under kStrict).
  std::vector<std::int64_t> remap;
};

// Parses whitespace-separated "u v" pairs, one per line; '#' starts a
// comment line; directed duplicates and self-loops are dropped.
// min_nodes forces at least that many nodes (for graphs with isolated
// trailing nodes known out of band).
LoadResult load_edge_list(std::istream& in, IdPolicy policy = IdPolicy::kRemap,
                          NodeId min_nodes = 0);
LoadResult load_edge_list_file(const std::string& path,
                               IdPolicy policy = IdPolicy::kRemap,
                               NodeId min_nodes = 0);

void write_edge_list(std::ostream& out, const Graph& g);

// k-th largest degree, 1 <= k <= N.
int kth_degree(const Graph& g, int k);

// Number of nodes with degree >= tau.
std::int64_t count_at_least(const Graph& g, double tau);

// Size of the symmetric difference of the canonical edge sets.
std::int64_t edge_distance(const Graph& a, const Graph& b);

// Two graphs that differ by exactly one node plus its incident edges.
// Removing `differing_node` (always the highest id of `extended`) from
// `extended` gives back `base` under the identity id map.
struct NeighborPair {
  Graph base;
  Graph extended;
  NodeId differing_node = 0;
};

// Attach a fresh node to an explicit set of existing nodes.
NeighborPair make_node_neighbor(const Graph& g, const std::vector<NodeId>& attach_to);
// Attach a fresh node to each existing node independently with probability p.
NeighborPair make_node_neighbor(const Graph& g, double p, std::mt19937_64& rng);

// Edge-neighbor pair: `b` differs from `a` by exactly one edge.
struct EdgeNeighborPair {
  Graph base;
  Graph extended;
  Edge differing_edge;
};
EdgeNeighborPair make_edge_neighbor(const Graph& g, std::mt19937_64& rng);

// --- synthetic generators (deterministic given the rng state) ---

Graph make_star(int leaves);               // K_{1,leaves}, center id 0
Graph make_cycle(int n);
Graph make_complete(int n);
Graph make_path(int n);
Graph make_gnp(int n, double p, std::mt19937_64& rng);
// Preferential attachment: nodes m..n-1 each attach m edges to distinct
// earlier nodes, sampled proportionally to current degree (uniform while no
// edges exist yet).
Graph make_preferential(int n, int m, std::mt19937_64& rng);

// Random graph from an edge-probability model, used by fuzzing harnesses.
Graph random_graph(int n, double p, std::mt19937_64& rng);

// Every labeled graph on n nodes (n <= 6 intended), enumerated by edge-set
// bitmask. Visitor receives each graph once.
template <typename F>
void for_each_graph(int n, F&& visit) {
  std::vector<Edge> all;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) all.push_back({u, v});
  const std::uint64_t total = 1ull << all.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask >> i & 1) edges.push_back(all[i]);
    visit(Graph(n, std::move(edges)));
  }
}

}  // namespace n2e
