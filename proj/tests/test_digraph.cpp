#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "kdg/directed_subdivision.hpp"
#include "kdg/lemmas.hpp"
#include "kdg/obstructions.hpp"

using namespace kdg;

namespace {

// Strongness straight from the definition: BFS from every vertex.
bool brute_strong(const Digraph& d) {
  for (int s = 0; s < d.vertex_count(); ++s) {
    std::vector<bool> seen(static_cast<std::size_t>(d.vertex_count()), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const Arc& a : d.arcs()) {
        if (a.tail == x && !seen[a.head]) {
          seen[a.head] = true;
          stack.push_back(a.head);
        }
      }
    }
    for (bool b : seen) {
      if (!b) return false;
    }
  }
  return true;
}

Digraph random_digraph(std::mt19937& rng, int n, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Arc> arcs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double x = u(rng);
      if (x < p / 2) arcs.push_back(Arc{a, b});
      else if (x < p) arcs.push_back(Arc{b, a});
    }
  }
  return Digraph(n, std::move(arcs));
}

Digraph random_strong(std::mt19937& rng, int n, double p) {
  for (;;) {
    Digraph d = random_digraph(rng, n, p);
    if (is_strong(d)) return d;
  }
}

// All cycles of an undirected graph, as vertex sequences.
std::vector<std::vector<int>> all_cycles(const Graph& g) {
  std::vector<std::vector<int>> out;
  const int n = g.vertex_count();
  std::vector<int> path;
  std::function<void(int, VertexMask)> dfs = [&](int v, VertexMask used) {
    for_each_bit(g.neighbors(v), [&](int w) {
      if (w == path.front() && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (contains(used, w) || w < path.front()) return;
      path.push_back(w);
      dfs(w, used | bit(w));
      path.pop_back();
    });
  };
  for (int s = 0; s < n; ++s) {
    path = {s};
    dfs(s, bit(s));
  }
  return out;
}

}  // namespace

TEST_CASE("digraph construction rejects loops, repeats and digons") {
  CHECK_THROWS_AS(Digraph::from_pairs(2, {{0, 0}}), invalid_input);
  CHECK_THROWS_AS(Digraph::from_pairs(2, {{0, 1}, {0, 1}}), invalid_input);
  CHECK_THROWS_AS(Digraph::from_pairs(2, {{0, 1}, {1, 0}}), invalid_input);
  CHECK_THROWS_AS(Digraph::from_pairs(2, {{0, 2}}), invalid_input);
  CHECK_THROWS_AS(Digraph(65), invalid_input);
}

TEST_CASE("strong connectivity") {
  CHECK(is_strong(directed_cycle(3)));
  CHECK_FALSE(is_strong(Digraph::from_pairs(2, {{0, 1}})));
  CHECK(is_strong(make_strong_directed_K4()));
  CHECK(is_strong(Digraph(1)));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Digraph d = random_digraph(rng, 2 + trial % 7, 0.7);
    CHECK(is_strong(d) == brute_strong(d));
  }
}

TEST_CASE("underlying graph") {
  CHECK(underlying(directed_cycle(3)) == cycle_graph(3));
  CHECK(underlying(make_strong_directed_K4()) == complete_graph(4));
  CHECK(underlying(Digraph(0)) == Graph(0));
}

TEST_CASE("suppression") {
  CHECK(suppress(directed_cycle(5)) == directed_cycle(3));
  CHECK(suppress(make_strong_directed_K4()) == make_strong_directed_K4());
  CHECK(suppress(directed_cycle(3)) == directed_cycle(3));
  const Digraph k4 = make_strong_directed_K4();
  const Digraph sub = subdivide(k4, Arc{0, 1}, 3);
  CHECK(sub.vertex_count() == 6);
  CHECK(suppress(sub) == k4);
  CHECK(subdivide(k4, Arc{0, 1}, 1) == k4);
  CHECK(subdivide(directed_cycle(3), Arc{0, 1}, 2).arc_count() == 4);
  CHECK_THROWS_AS(subdivide(k4, Arc{1, 0}, 2), precondition_error);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Digraph d = random_strong(rng, 3 + trial % 4, 0.8);
    const Digraph s = suppress(d);
    CHECK(suppress(s) == s);
    CHECK(suppressible_vertices(s).empty());
    CHECK(is_strong(s));
  }
}

TEST_CASE("directed subdivision containment") {
  const Digraph k4 = make_strong_directed_K4();
  auto self = contains_directed_subdivision(k4, k4);
  REQUIRE(self);
  CHECK(is_valid_witness(k4, *self));
  CHECK_FALSE(contains_directed_subdivision(directed_cycle(6), k4));
  CHECK_FALSE(contains_directed_subdivision(make_diwheel(8), make_diwheel(4)));
  CHECK(contains_directed_subdivision(make_diwheel(8), make_diwheel(8)));

  // Round trip: repeated subdivision keeps the original as a subdivision pattern.
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const Digraph base = random_strong(rng, 3 + trial % 3, 0.8);
    Digraph d = base;
    const int steps = 1 + trial % 4;
    for (int s = 0; s < steps && d.vertex_count() < 12; ++s) {
      const Arc a = d.arcs()[static_cast<std::size_t>(rng() % d.arcs().size())];
      d = subdivide(d, a, 2 + static_cast<int>(rng() % 2));
    }
    auto w = contains_directed_subdivision(d, base);
    REQUIRE(w);
    CHECK(is_valid_witness(d, *w));
  }
  Digraph big(17);
  CHECK_THROWS_AS(contains_directed_subdivision(big, k4), size_cap_exceeded);
}

TEST_CASE("cuts") {
  const CutCertificate c = delta(directed_cycle(3), bit(0));
  CHECK(c.out_arcs.size() == 1);
  CHECK(c.in_arcs.size() == 1);
  const Digraph k4 = make_strong_directed_K4();
  for (VertexMask x : {VertexMask{0b0011}, VertexMask{0b0101}, VertexMask{0b1001}}) {
    const CutCertificate k = delta(k4, x);
    CHECK(k.out_arcs.size() + k.in_arcs.size() == 4);
    CHECK(k.out_arcs.size() >= 1);
    CHECK(k.in_arcs.size() >= 1);
    CHECK(is_valid_cut(k4, k));
  }
  const CutCertificate empty = delta(Digraph(2), bit(0));
  CHECK(empty.out_arcs.empty());
  CHECK(empty.in_arcs.empty());
  CHECK_THROWS_AS(delta(k4, 0), precondition_error);
  CHECK_THROWS_AS(delta(k4, 0b1111), precondition_error);
}

TEST_CASE("deletable cycle edge examples") {
  auto tri = deletable_cycle_edge(directed_cycle(3), {0, 1, 2});
  REQUIRE(std::holds_alternative<CutCertificate>(tri));
  CHECK(popcount(std::get<CutCertificate>(tri).side_a) == 1);

  const Digraph bowtie = Digraph::from_pairs(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  auto bt = deletable_cycle_edge(bowtie, {0, 1, 2});
  REQUIRE(std::holds_alternative<CutCertificate>(bt));
  const CutCertificate& cut = std::get<CutCertificate>(bt);
  CHECK(cut.out_arcs.size() == 1);
  CHECK(cut.in_arcs.size() == 1);
  CHECK_FALSE(contains(cut.side_a, 0));

  const Digraph w4 = make_diwheel(4);
  auto rim = deletable_cycle_edge(w4, {0, 1, 2, 3});
  REQUIRE(std::holds_alternative<Arc>(rim));
  CHECK(is_strong(without_arc(w4, std::get<Arc>(rim))));

  CHECK_THROWS_AS(deletable_cycle_edge(directed_path(3), {0, 1, 2}), precondition_error);
}

TEST_CASE("deletable cycle edge never fails on small strong digraphs") {
  std::mt19937 rng(31);
  int outcomes = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Digraph d = random_strong(rng, 3 + trial % 4, 0.6 + 0.05 * (trial % 5));
    for (const auto& c : all_cycles(underlying(d))) {
      const auto r = deletable_cycle_edge(d, c);
      if (const Arc* a = std::get_if<Arc>(&r)) {
        CHECK(is_strong(without_arc(d, *a)));
      } else {
        const CutCertificate& k = std::get<CutCertificate>(r);
        CHECK(is_valid_cut(d, k));
        CHECK(k.out_arcs.size() == 1);
        CHECK(k.in_arcs.size() == 1);
      }
      ++outcomes;
    }
  }
  CHECK(outcomes > 100);
}

TEST_CASE("paths across a 2-cut") {
  auto theta = paths_across_2cut(make_strong_theta(2, 2, 2), 0, 1);
  REQUIRE(theta.size() == 3);
  int forward = 0;
  for (const auto& p : theta) {
    CHECK(p.size() == 3);
    if (p.front() == 0) ++forward;
  }
  CHECK(forward == 2);

  // The reinforced theta minus its hub arc: the reinforcing arc forms no component.
  auto rt = paths_across_2cut(make_reinforced_theta(2, 2, 2), 0, 1);
  REQUIRE(rt.size() == 3);
  for (const auto& p : rt) {
    CHECK(p.size() == 3);
    CHECK(p.front() == 0);
  }

  auto square = paths_across_2cut(directed_cycle(4), 0, 2);
  REQUIRE(square.size() == 2);
  CHECK(square[0].front() != square[1].front());
  CHECK_THROWS_AS(paths_across_2cut(directed_cycle(4), 0, 1), precondition_error);
}
