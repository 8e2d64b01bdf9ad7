#include <catch_amalgamated.hpp>

#include <random>

#include "kdg/graph_props.hpp"

using namespace kdg;

namespace {

// Vertex connectivity by brute force over all vertex subsets.
int brute_connectivity(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 1) return 0;
  int best = n - 1;
  for (VertexMask s = 0; s < (VertexMask{1} << n); ++s) {
    const int size = popcount(s);
    if (size >= best) continue;
    const VertexMask rest = g.vertices() & ~s;
    if (popcount(rest) >= 2 && !is_connected(g, rest)) best = size;
  }
  return std::min(best, 3);
}

Graph random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back(Edge{u, v});
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("graph construction rejects malformed edge lists") {
  CHECK_THROWS_AS(Graph::from_pairs(3, {{0, 0}}), invalid_input);
  CHECK_THROWS_AS(Graph::from_pairs(3, {{0, 1}, {1, 0}}), invalid_input);
  CHECK_THROWS_AS(Graph::from_pairs(3, {{0, 3}}), invalid_input);
  CHECK_THROWS_AS(Graph(-1), invalid_input);
  const Graph g = Graph::from_pairs(3, {{2, 1}, {0, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges().front() == Edge{0, 1});
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("connectivity level of small standard graphs") {
  CHECK(connectivity_level(complete_graph(4)) == 3);
  CHECK(connectivity_level(path_graph(3)) == 1);
  CHECK(connectivity_level(cycle_graph(6)) == 2);
  CHECK(connectivity_level(Graph(0)) == 0);
  CHECK(connectivity_level(Graph(1)) == 0);
  CHECK(connectivity_level(Graph(3)) == 0);
  CHECK(connectivity_level(complete_bipartite(3, 3)) == 3);
  CHECK(connectivity_level(complete_graph(3)) == 2);
}

TEST_CASE("connectivity level matches subset brute force") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const Graph g = random_graph(rng, n, 0.3 + 0.1 * (trial % 6));
    CHECK(connectivity_level(g) == brute_connectivity(g));
  }
}

TEST_CASE("K4 subdivision by reduction agrees with direct search") {
  CHECK(has_k4_subdivision(complete_graph(4)));
  CHECK_FALSE(has_k4_subdivision(cycle_graph(7)));
  CHECK_FALSE(has_k4_subdivision(complete_bipartite(2, 5)));
  CHECK(has_k4_subdivision(wheel_graph(5)));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 4 + trial % 6;
    const Graph g = random_graph(rng, n, 0.25 + 0.05 * (trial % 5));
    CHECK(has_k4_subdivision(g) == contains_subdivision(g, complete_graph(4)).has_value());
  }
}

TEST_CASE("ladder numbers") {
  CHECK(ladder_number(complete_bipartite(3, 3)) == 3);
  CHECK(ladder_number(complete_graph(5)) == 2);
  CHECK(ladder_number(mobius_ladder(4)) == 4);
  CHECK_FALSE(ladder_number(cycle_graph(5)).has_value());
  for (int k = 2; k <= 6; ++k) CHECK(ladder_number(mobius_ladder(k)) == k);
}

TEST_CASE("critical edges") {
  CHECK(critical_edges(complete_bipartite(3, 3), Criterion::nonplanar).empty());
  CHECK(critical_edges(complete_graph(4), Criterion::k4_subdivision).empty());
  const Graph v8 = mobius_ladder(4);
  const EdgeSet f = critical_edges(v8, Criterion::nonplanar);
  CHECK(f == EdgeSet({{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
  CHECK_FALSE(has_F_cycle(v8, f));
  CHECK_FALSE(has_F_cycle(v8, EdgeSet{}));
  const Graph tri = cycle_graph(3);
  CHECK(has_F_cycle(tri, EdgeSet(tri.edges())));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = random_graph(rng, 7, 0.6);
    for (Criterion c : {Criterion::nonplanar, Criterion::k4_subdivision}) {
      const EdgeSet crit = critical_edges(g, c);
      for (const Edge& e : g.edges()) {
        const Graph h = without_edge(g, e);
        const bool holds = c == Criterion::nonplanar ? !is_planar(h) : has_k4_subdivision(h);
        CHECK(crit.contains(e) == holds);
      }
    }
  }
}

TEST_CASE("wheel subdivision recognition") {
  auto k4 = recognize_wheel_subdivision(complete_graph(4));
  REQUIRE(k4);
  CHECK(k4->k == 3);
  // 4-wheel with every rim edge subdivided once: rim 0..7, hub 8 on even rim vertices.
  std::vector<Edge> edges;
  for (int v = 0; v < 8; ++v) edges.push_back(make_edge(v, (v + 1) % 8));
  for (int v = 0; v < 8; v += 2) edges.push_back(Edge{v, 8});
  auto w = recognize_wheel_subdivision(Graph(9, edges));
  REQUIRE(w);
  CHECK(w->k == 4);
  CHECK(w->hub == 8);
  CHECK(w->rim.size() == 8);
  CHECK_FALSE(recognize_wheel_subdivision(complete_bipartite(3, 3)));
  CHECK_FALSE(recognize_wheel_subdivision(complete_graph(5)));
  // A subdivided spoke is still a wheel.
  auto spoke = recognize_wheel_subdivision(Graph::from_pairs(
      6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {4, 5}, {5, 3}}));
  REQUIRE(spoke);
  CHECK(spoke->k == 4);
}

TEST_CASE("wheel recognition when no F-cycle exists for the K4 criterion") {
  std::mt19937 rng(29);
  int tested = 0;
  for (int trial = 0; trial < 3000 && tested < 80; ++trial) {
    const Graph g = random_graph(rng, 5 + trial % 4, 0.45);
    if (connectivity_level(g) < 2 || !has_k4_subdivision(g)) continue;
    if (has_F_cycle(g, critical_edges(g, Criterion::k4_subdivision))) continue;
    ++tested;
    CHECK(recognize_wheel_subdivision(g).has_value());
  }
  CHECK(tested > 10);
}
