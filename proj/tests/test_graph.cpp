#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "n2e/errors.hpp"
#include "n2e/graph.hpp"

using namespace n2e;

TEST_CASE("edge list loading dedupes and drops self-loops") {
  std::istringstream in("0 1\n1 0\n# c\n1 1\n1 2\n");
  const LoadResult r = load_edge_list(in);
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 2);
  CHECK(r.graph.has_edge(0, 1));
  CHECK(r.graph.has_edge(1, 2));
}

TEST_CASE("empty stream loads an empty graph") {
  std::istringstream in("");
  const LoadResult r = load_edge_list(in);
  CHECK(r.graph.node_count() == 0);
  CHECK(r.graph.edge_count() == 0);
}

TEST_CASE("remap follows first appearance order") {
  std::istringstream in("10 20\n20 30\n");
  const LoadResult r = load_edge_list(in);
  CHECK(r.graph.node_count() == 3);
  CHECK(r.graph.edge_count() == 2);
  REQUIRE(r.remap.size() == 3);
  CHECK(r.remap[0] == 10);
  CHECK(r.remap[1] == 20);
  CHECK(r.remap[2] == 30);
  CHECK(r.graph.has_edge(0, 1));
  CHECK(r.graph.has_edge(1, 2));
}

TEST_CASE("strict mode rejects non-dense ids") {
  std::istringstream in("0 2\n");
  CHECK_THROWS_AS(load_edge_list(in, IdPolicy::kStrict), ParseError);
}

TEST_CASE("malformed lines carry the line number") {
  std::istringstream in("0 1\nxyz\n");
  try {
    load_edge_list(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("loading is byte-deterministic") {
  const std::string text = "3 7\n7 1\n1 3\n9 3\n";
  std::istringstream a(text), b(text);
  CHECK(load_edge_list(a).graph == load_edge_list(b).graph);
}

TEST_CASE("kth_degree order statistics") {
  // degrees [4,3,3,1] on a hand-built graph: star center + chain
  const Graph g(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 5}, {2, 5}});
  // degrees: 0->4, 1->3, 2->3, 3->1, 4->1, 5->2
  CHECK(kth_degree(g, 1) == 4);
  CHECK(kth_degree(g, 2) == 3);
  CHECK(kth_degree(g, 1) == g.max_degree());
  CHECK_THROWS_AS(kth_degree(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(kth_degree(g, 7), std::invalid_argument);

  const Graph star = make_star(4);
  CHECK(kth_degree(star, 1) == 4);
  CHECK(kth_degree(star, 2) == 1);
}

TEST_CASE("count_at_least") {
  const Graph star = make_star(4);
  CHECK(count_at_least(star, 2.0) == 1);
  CHECK(count_at_least(star, 0.0) == star.node_count());
  CHECK(count_at_least(star, star.max_degree() + 1.0) == 0);
}

TEST_CASE("edge_distance is the symmetric difference size") {
  const Graph a(3, {{0, 1}});
  const Graph b(3, {{0, 1}, {1, 2}});
  CHECK(edge_distance(a, a) == 0);
  CHECK(edge_distance(a, b) == 1);
  CHECK(edge_distance(b, a) == 1);
}

TEST_CASE("edge_distance metric properties on random triples") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Graph a = random_graph(8, 0.4, rng);
    const Graph b = random_graph(8, 0.4, rng);
    const Graph c = random_graph(8, 0.4, rng);
    CHECK(edge_distance(a, b) == edge_distance(b, a));
    CHECK((edge_distance(a, b) == 0) == (a.edges() == b.edges()));
    CHECK(edge_distance(a, c) <= edge_distance(a, b) + edge_distance(b, c));
  }
}

TEST_CASE("node neighbors") {
  SUBCASE("attach to all of K_3 gives K_4") {
    const NeighborPair p = make_node_neighbor(make_complete(3), {0, 1, 2});
    CHECK(p.extended == make_complete(4));
    CHECK(p.extended.degree(p.differing_node) == 3);
  }
  SUBCASE("attach to none") {
    const NeighborPair p = make_node_neighbor(Graph(5, {}), {});
    CHECK(p.extended.node_count() == 6);
    CHECK(p.extended.edge_count() == 0);
  }
  SUBCASE("apex over a 5-cycle") {
    const Graph cycle = make_cycle(5);
    const NeighborPair p = make_node_neighbor(cycle, {0, 1, 2, 3, 4});
    CHECK(p.extended.node_count() == 6);
    CHECK(p.extended.edge_count() == 10);
    CHECK(p.extended.degree(p.differing_node) == 5);
  }
  SUBCASE("distance equals the degree of the differing node") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
      const Graph base = random_graph(1 + static_cast<int>(rng() % 12), 0.5, rng);
      const NeighborPair p = make_node_neighbor(base, 0.5, rng);
      CHECK(edge_distance(p.base, p.extended) == p.extended.degree(p.differing_node));
    }
  }
}

TEST_CASE("generators") {
  CHECK(make_star(4).max_degree() == 4);
  CHECK(make_star(4).edge_count() == 4);
  CHECK(make_complete(4).edge_count() == 6);
  CHECK(make_cycle(5).edge_count() == 5);

  std::mt19937_64 a(9), b(9);
  CHECK(make_gnp(100, 0.05, a) == make_gnp(100, 0.05, b));

  std::mt19937_64 c(3), d(3);
  const Graph p1 = make_preferential(200, 3, c);
  const Graph p2 = make_preferential(200, 3, d);
  CHECK(p1 == p2);
  CHECK(p1.edge_count() > 0);
  // every attached node reaches m distinct targets on a fresh graph
  CHECK(p1.degree(199) == 3);
}

TEST_CASE("degree order statistics are consistent") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(2 + static_cast<int>(rng() % 10), 0.5, rng);
    for (int k = 1; k < g.node_count(); ++k)
      CHECK(kth_degree(g, k) >= kth_degree(g, k + 1));
    for (int k = 1; k <= g.node_count(); ++k)
      CHECK(count_at_least(g, kth_degree(g, k)) >= k);
  }
}

TEST_CASE("adjacency lists are sorted by global edge order") {
  std::mt19937_64 rng(31);
  const Graph g = random_graph(12, 0.5, rng);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto [begin, end] = g.incident(v);
    for (auto it = begin; it + 1 < end; ++it)
      CHECK(g.edges()[*it] < g.edges()[*(it + 1)]);
  }
  std::int64_t degree_sum = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) degree_sum += g.degree(v);
  CHECK(degree_sum == 2 * g.edge_count());
}
