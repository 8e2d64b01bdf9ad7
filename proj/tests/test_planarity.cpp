#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "kdg/canonical.hpp"
#include "kdg/families.hpp"
#include "kdg/planarity.hpp"
#include "kdg/subdivision.hpp"

using namespace kdg;

namespace {

bool kuratowski_by_search(const Graph& g) {
  static const Graph k5 = complete_graph(5);
  static const Graph k33 = complete_bipartite(3, 3);
  return contains_subdivision(g, k5).has_value() || contains_subdivision(g, k33).has_value();
}

Graph shuffled(const Graph& g, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(g, perm);
}

}  // namespace

TEST_CASE("planarity of standard graphs") {
  CHECK_FALSE(is_planar(complete_graph(5)));
  CHECK_FALSE(is_planar(complete_bipartite(3, 3)));
  CHECK(is_planar(cycle_graph(6)));
  CHECK(is_planar(complete_graph(4)));
  CHECK(is_planar(Graph(0)));
  CHECK_FALSE(is_planar(generate_U8()));
  CHECK_FALSE(is_planar(generate_V8()));
  CHECK(is_planar(without_edge(complete_graph(5), Edge{0, 1})));
}

TEST_CASE("outerplanarity of standard graphs") {
  CHECK(is_outerplanar(cycle_graph(6)));
  CHECK_FALSE(is_outerplanar(complete_graph(4)));
  CHECK_FALSE(is_outerplanar(complete_bipartite(2, 3)));
  CHECK(is_outerplanar(without_edge(complete_graph(4), Edge{0, 2})));
}

TEST_CASE("planarity agrees with Kuratowski subdivision search on every graph up to 8 vertices") {
  // Planar graph classes on n vertices, connected or not: 1, 2, 4, 11, 33,
  // 142, 822, 6966 (OEIS A005470).
  const std::size_t planar_counts[] = {0, 1, 2, 4, 11, 33, 142, 822, 6966};
  for (int n = 1; n <= 8; ++n) {
    std::size_t planar = 0, disagreements = 0;
    for (const Graph& g : enumerate_graphs(n)) {
      const bool p = is_planar(g);
      if (p) ++planar;
      if (p == kuratowski_by_search(g)) ++disagreements;
    }
    INFO("n = " << n);
    CHECK(disagreements == 0);
    CHECK(planar == planar_counts[n]);
  }
}

TEST_CASE("Kuratowski witnesses validate") {
  for (int n = 5; n <= 7; ++n) {
    for (const Graph& g : enumerate_graphs(n, [](const Graph& h) { return !is_planar(h); })) {
      std::optional<SubdivisionWitness> w;
      REQUIRE_FALSE(is_planar(g, w));
      REQUIRE(w.has_value());
      CHECK(is_valid_witness(g, *w));
      const bool k5 = w->pattern.vertex_count() == 5 && w->pattern.edge_count() == 10;
      const bool k33 = w->pattern.vertex_count() == 6 && w->pattern.edge_count() == 9;
      CHECK((k5 || k33));
    }
  }
}

TEST_CASE("outerplanarity agrees with K4 and K2,3 subdivision search") {
  const Graph k4 = complete_graph(4);
  const Graph k23 = complete_bipartite(2, 3);
  for (int n = 1; n <= 7; ++n) {
    for (const Graph& g : enumerate_graphs(n)) {
      const bool obstructed = contains_subdivision(g, k4).has_value() || contains_subdivision(g, k23).has_value();
      CHECK(is_outerplanar(g) != obstructed);
    }
  }
}

TEST_CASE("planarity is invariant under relabelling") {
  std::mt19937 rng(7);
  for (const Graph& g : enumerate_graphs(7)) {
    const Graph h = shuffled(g, rng);
    CHECK(is_planar(g) == is_planar(h));
  }
}

TEST_CASE("larger nonplanar family members") {
  for (int k = 3; k <= 12; ++k) {
    INFO("mobius ladder " << k);
    CHECK_FALSE(is_planar(mobius_ladder(k)));
    // Removing every rung but one leaves a planar graph.
    Graph g = mobius_ladder(k);
    for (int i = 1; i < k; ++i) g = without_edge(g, make_edge(i, i + k));
    CHECK(is_planar(g));
  }
}
