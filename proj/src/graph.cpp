#include "n2e/graph.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "n2e/errors.hpp"
#include "n2e/parallel.hpp"

namespace n2e {

double wall_time_s() {
  using clock = std::chrono::steady_clock;
  static const auto t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

Graph::Graph(NodeId node_count, std::vector<Edge> edges) : node_count_(node_count) {
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.lo == e.hi) continue;  // self-loop
    if (e.lo > e.hi) std::swap(e.lo, e.hi);
    if (e.lo < 0 || e.hi >= node_count_)
      throw std::invalid_argument("edge endpoint out of range");
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adj_ptr_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  for (const Edge& e : edges_) {
    ++adj_ptr_[e.lo + 1];
    ++adj_ptr_[e.hi + 1];
  }
  for (NodeId v = 0; v < node_count_; ++v) adj_ptr_[v + 1] += adj_ptr_[v];
  adj_edges_.resize(edges_.size() * 2);
  std::vector<std::int32_t> fill(adj_ptr_.begin(), adj_ptr_.end() - 1);
  // Edges are visited in canonical order, so each adjacency list comes out
  // sorted by edge order without an extra sort.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adj_edges_[fill[edges_[i].lo]++] = static_cast<std::int32_t>(i);
    adj_edges_[fill[edges_[i].hi]++] = static_cast<std::int32_t>(i);
  }
}

int Graph::max_degree() const {
  int best = 0;
  for (NodeId v = 0; v < node_count_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return false;
  const Edge e = make_edge(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> deg(node_count_);
  for (NodeId v = 0; v < node_count_; ++v) deg[v] = degree(v);
  return deg;
}

LoadResult load_edge_list(std::istream& in, IdPolicy policy, NodeId min_nodes) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    std::istringstream ls(line.substr(pos));
    std::int64_t u, v;
    if (!(ls >> u >> v) || u < 0 || v < 0) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected two non-negative integers, got \"" + line + "\"");
    }
    std::string trailing;
    if (ls >> trailing && !trailing.empty() && trailing[0] != '#') {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": trailing content \"" + trailing + "\"");
    }
    raw.emplace_back(u, v);
  }

  LoadResult out;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (policy == IdPolicy::kRemap) {
    std::unordered_map<std::int64_t, NodeId> map;
    map.reserve(raw.size() * 2);
    auto dense = [&](std::int64_t id) {
      auto [it, inserted] = map.emplace(id, static_cast<NodeId>(out.remap.size()));
      if (inserted) out.remap.push_back(id);
      return it->second;
    };
    for (auto [u, v] : raw) {
      const NodeId du = dense(u);
      const NodeId dv = dense(v);
      if (du != dv) edges.push_back(make_edge(du, dv));
    }
    const NodeId n = std::max<NodeId>(static_cast<NodeId>(out.remap.size()), min_nodes);
    out.graph = Graph(n, std::move(edges));
  } else {
    std::int64_t max_id = -1;
    for (auto [u, v] : raw) max_id = std::max({max_id, u, v});
    std::vector<bool> seen(static_cast<std::size_t>(max_id + 1), false);
    for (auto [u, v] : raw) {
      seen[static_cast<std::size_t>(u)] = true;
      seen[static_cast<std::size_t>(v)] = true;
      if (u != v)
        edges.push_back(make_edge(static_cast<NodeId>(u), static_cast<NodeId>(v)));
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i])
        throw ParseError("strict id mode: id " + std::to_string(i) +
                         " missing from a dense 0..N-1 range");
    }
    const NodeId n = std::max<NodeId>(static_cast<NodeId>(max_id + 1), min_nodes);
    out.remap.resize(static_cast<std::size_t>(n));
    std::iota(out.remap.begin(), out.remap.end(), 0);
    out.graph = Graph(n, std::move(edges));
  }
  return out;
}

LoadResult load_edge_list_file(const std::string& path, IdPolicy policy, NodeId min_nodes) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  return load_edge_list(in, policy, min_nodes);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.lo << ' ' << e.hi << '\n';
}

int kth_degree(const Graph& g, int k) {
  if (k < 1 || k > g.node_count())
    throw std::invalid_argument("kth_degree: k must be in [1, N]");
  std::vector<int> deg = g.degree_sequence();
  std::nth_element(deg.begin(), deg.begin() + (k - 1), deg.end(), std::greater<int>());
  return deg[k - 1];
}

std::int64_t count_at_least(const Graph& g, double tau) {
  std::int64_t c = 0;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.degree(v) >= tau) ++c;
  return c;
}

std::int64_t edge_distance(const Graph& a, const Graph& b) {
  // Both edge vectors are sorted; count the symmetric difference by merge.
  const auto& ea = a.edges();
  const auto& eb = b.edges();
  std::size_t i = 0, j = 0;
  std::int64_t diff = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i] == eb[j]) {
      ++i, ++j;
    } else if (ea[i] < eb[j]) {
      ++diff, ++i;
    } else {
      ++diff, ++j;
    }
  }
  diff += static_cast<std::int64_t>(ea.size() - i) + static_cast<std::int64_t>(eb.size() - j);
  return diff;
}

NeighborPair make_node_neighbor(const Graph& g, const std::vector<NodeId>& attach_to) {
  const NodeId fresh = g.node_count();
  std::vector<Edge> edges = g.edges();
  for (NodeId v : attach_to) {
    if (v < 0 || v >= fresh) throw std::invalid_argument("attach target out of range");
    edges.push_back(make_edge(v, fresh));
  }
  NeighborPair pair;
  pair.base = g;
  pair.extended = Graph(fresh + 1, std::move(edges));
  pair.differing_node = fresh;
  return pair;
}

NeighborPair make_node_neighbor(const Graph& g, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<NodeId> attach;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (coin(rng) < p) attach.push_back(v);
  return make_node_neighbor(g, attach);
}

EdgeNeighborPair make_edge_neighbor(const Graph& g, std::mt19937_64& rng) {
  const NodeId n = g.node_count();
  if (n < 2) throw std::invalid_argument("need at least two nodes for an edge neighbor");
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  Edge e;
  do {
    NodeId u = pick(rng), v = pick(rng);
    while (v == u) v = pick(rng);
    e = make_edge(u, v);
  } while (g.has_edge(e.lo, e.hi));
  std::vector<Edge> edges = g.edges();
  edges.push_back(e);
  EdgeNeighborPair pair;
  pair.base = g;
  pair.extended = Graph(n, std::move(edges));
  pair.differing_edge = e;
  return pair;
}

Graph make_star(int leaves) {
  if (leaves < 0) throw std::invalid_argument("star: leaves must be >= 0");
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

Graph make_cycle(int n) {
  if (n < 0) throw std::invalid_argument("cycle: n must be >= 0");
  if (n < 3) return Graph(n, {});
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return Graph(n, std::move(edges));
}

Graph make_complete(int n) {
  if (n < 0) throw std::invalid_argument("complete: n must be >= 0");
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph make_path(int n) {
  if (n < 0) throw std::invalid_argument("path: n must be >= 0");
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph make_gnp(int n, double p, std::mt19937_64& rng) {
  if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: need n >= 0, p in [0,1]");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph make_preferential(int n, int m, std::mt19937_64& rng) {
  if (n < 0 || m < 1) throw std::invalid_argument("preferential: need n >= 0, m >= 1");
  if (n <= m) return Graph(n, {});
  std::vector<Edge> edges;
  // endpoints[] holds every edge endpoint seen so far; sampling an index
  // uniformly gives the degree-proportional draw.
  std::vector<NodeId> endpoints;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (NodeId v = m; v < n; ++v) {
    std::vector<NodeId> targets;
    int guard = 0;
    while (static_cast<int>(targets.size()) < std::min<int>(m, v) && guard < 100000) {
      ++guard;
      NodeId t;
      if (endpoints.empty()) {
        std::uniform_int_distribution<NodeId> uni(0, v - 1);
        t = uni(rng);
      } else {
        // Mix of degree-proportional and uniform keeps early isolated nodes
        // reachable.
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        if (coin(rng) < 0.1) {
          std::uniform_int_distribution<NodeId> uni(0, v - 1);
          t = uni(rng);
        } else {
          std::uniform_int_distribution<std::size_t> uni(0, endpoints.size() - 1);
          t = endpoints[uni(rng)];
        }
      }
      if (t >= v || used[static_cast<std::size_t>(t)]) continue;
      used[static_cast<std::size_t>(t)] = 1;
      targets.push_back(t);
    }
    for (NodeId t : targets) {
      used[static_cast<std::size_t>(t)] = 0;
      edges.push_back(make_edge(t, v));
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph random_graph(int n, double p, std::mt19937_64& rng) { return make_gnp(n, p, rng); }

}  // namespace n2e
