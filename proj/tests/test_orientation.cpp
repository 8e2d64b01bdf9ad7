#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "kdg/canonical.hpp"
#include "kdg/families.hpp"
#include "kdg/obstructions.hpp"
#include "kdg/orientation.hpp"

using namespace kdg;

namespace {

std::string edge_list(const Graph& g) {
  std::ostringstream s;
  for (const Edge& e : g.edges()) s << e.u << '-' << e.v << ' ';
  return s.str();
}

// Strongly connected: every vertex reaches and is reached from vertex 0.
bool strong_by_search(const Digraph& d) {
  const int n = d.vertex_count();
  for (bool backwards : {false, true}) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (const Arc& a : d.arcs()) {
        const int from = backwards ? a.head : a.tail;
        const int to = backwards ? a.tail : a.head;
        if (from == x && !seen[to]) {
          seen[to] = true;
          stack.push_back(to);
        }
      }
    }
    for (bool b : seen) {
      if (!b) return false;
    }
  }
  return true;
}

std::vector<Graph> almost_planar_up_to(int n, int max_edges) {
  std::vector<Graph> out;
  for (int k = 5; k <= n; ++k) {
    auto level = enumerate_graphs(
        k, [max_edges](const Graph& g) { return g.edge_count() <= max_edges && is_almost_planar(g); });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// The three graphs of the mussel family used below: tips p1, p2 both joined
// to the hinge p3.
Graph hinged_mussel(int a, int b, int c) { return generate(MusselSpec{a, b, c, false, true, true}); }

// Double wheel drawn on a 20-cycle whose two centres share a neighbour.
Graph shared_centre_double_wheel() {
  DoubleWheelSpec s{20, {}, {}};
  for (int x : {1, 4, 5, 7, 8, 12, 13, 15, 18, 19, 20}) s.u_neighbors.push_back(x - 1);
  for (int x : {2, 3, 5, 6, 9, 10, 11, 14, 16, 17}) s.v_neighbors.push_back(x - 1);
  return generate(s);
}

std::vector<Graph> mobius_chains_up_to(int n) {
  std::vector<Graph> out;
  for (int k = 6; k <= n; ++k) {
    for (const auto& s : detail::all_chord_sets(k)) {
      const Graph g = generate(s);
      if (is_almost_planar(g)) out.push_back(g);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("fundamental cycles") {
  const Graph tri = complete_graph(3);
  const auto one = fundamental_cycles(tri, EdgeSet({Edge{0, 1}, Edge{1, 2}}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].chord == Edge{0, 2});
  CHECK(one[0].edges().size() == 3);

  const Graph v8 = generate_V8();
  CHECK(fundamental_cycles(v8, critical_edges(v8, Criterion::nonplanar)).empty());

  const Graph m = hinged_mussel(3, 3, 3);
  const EdgeSet f = critical_edges(m, Criterion::nonplanar);
  REQUIRE(f.size() == m.vertex_count() - 1);
  CHECK(fundamental_cycles(m, f).size() == static_cast<std::size_t>(m.edge_count() - f.size()));

  CHECK_THROWS_AS(fundamental_cycles(tri, EdgeSet(tri.edges())), precondition_error);
}

TEST_CASE("cells") {
  const Graph m = hinged_mussel(3, 3, 3);
  const auto whole = compute_cells(m, critical_edges(m, Criterion::nonplanar));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].edges == m.edges());

  const Graph v8 = generate_V8();
  const auto rungs = compute_cells(v8, critical_edges(v8, Criterion::nonplanar));
  CHECK(rungs.size() == 4);
  for (const auto& c : rungs) CHECK(c.edges.size() == 1);

  CHECK(compute_cells(v8, EdgeSet{}).empty());
}

TEST_CASE("cells are edge-disjoint and meet in at most one vertex") {
  for (const Graph& g : almost_planar_up_to(8, 28)) {
    const auto cells = compute_cells(g, critical_edges(g, Criterion::nonplanar));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        INFO(edge_list(g));
        CHECK(popcount(cells[i].vertices & cells[j].vertices) <= 1);
        for (const Edge& e : cells[i].edges) {
          CHECK_FALSE(std::binary_search(cells[j].edges.begin(), cells[j].edges.end(), e));
        }
      }
    }
  }
}

TEST_CASE("propagation examples") {
  const Graph tri = complete_graph(3);
  const auto p = propagate_orientation(tri, EdgeSet({Edge{0, 1}, Edge{1, 2}}));
  REQUIRE(p.size() == 1);
  REQUIRE(p[0].orientations.size() == 2);
  for (const auto& o : p[0].orientations) {
    const Orientation full{tri, o};
    CHECK(is_strong(full.digraph()));
  }

  const Graph v8 = generate_V8();
  for (const auto& c : propagate_orientation(v8, critical_edges(v8, Criterion::nonplanar))) {
    CHECK(c.orientations.size() == 2);
  }
}

TEST_CASE("propagated orientations make the fundamental cycles directed") {
  for (const Graph& g : almost_planar_up_to(8, 28)) {
    const EdgeSet f = critical_edges(g, Criterion::nonplanar);
    const auto cycles = fundamental_cycles(g, f);
    for (const auto& c : propagate_orientation(g, f)) {
      REQUIRE((c.orientations.empty() || c.orientations.size() == 2));
      if (c.orientations.empty()) continue;
      auto flipped = c.orientations[0];
      flipped.flip();
      CHECK(flipped == c.orientations[1]);
      for (const auto& cyc : cycles) {
        if (!std::binary_search(c.cell.edges.begin(), c.cell.edges.end(), cyc.chord)) continue;
        // Walk the cycle; every edge must point forwards, or every edge backwards.
        int forwards = 0;
        const std::size_t len = cyc.vertices.size();
        for (std::size_t i = 0; i < len; ++i) {
          const int a = cyc.vertices[i], b = cyc.vertices[(i + 1) % len];
          const auto k = std::lower_bound(c.cell.edges.begin(), c.cell.edges.end(), make_edge(a, b)) -
                         c.cell.edges.begin();
          const bool low_to_high = c.orientations[0][static_cast<std::size_t>(k)];
          if (low_to_high == (a < b)) ++forwards;
        }
        CHECK((forwards == 0 || forwards == static_cast<int>(len)));
      }
    }
  }
}

TEST_CASE("odd subtree obstruction examples") {
  const Graph dw = shared_centre_double_wheel();
  REQUIRE(is_almost_planar(dw));
  const EdgeSet f = critical_edges(dw, Criterion::nonplanar);
  REQUIRE(f.size() == dw.vertex_count() - 1);
  const auto o = odd_subtree_obstruction(dw, f);
  REQUIRE(o.has_value());
  CHECK(is_valid_obstruction(dw, f, *o));
  CHECK_FALSE(find_good_orientation(dw).has_value());

  const Graph m = hinged_mussel(3, 3, 3);
  CHECK_FALSE(odd_subtree_obstruction(m, critical_edges(m, Criterion::nonplanar)).has_value());

  const Graph v8 = generate_V8();
  CHECK_THROWS_AS(odd_subtree_obstruction(v8, critical_edges(v8, Criterion::nonplanar)), precondition_error);
}

TEST_CASE("odd subtree obstruction exists iff propagation fails") {
  std::size_t spanning = 0;
  for (const Graph& g : almost_planar_up_to(8, 28)) {
    const EdgeSet f = critical_edges(g, Criterion::nonplanar);
    if (f.size() != g.vertex_count() - 1) continue;
    ++spanning;
    bool fails = false;
    for (const auto& c : propagate_orientation(g, f)) fails = fails || c.orientations.empty();
    const auto o = odd_subtree_obstruction(g, f);
    INFO(edge_list(g));
    CHECK(fails == o.has_value());
    if (o) CHECK(is_valid_obstruction(g, f, *o));
  }
  CHECK(spanning > 0);
}

TEST_CASE("Kuratowski digraph test against the subset definition") {
  CHECK_FALSE(is_kuratowski_digraph(make_strong_directed_K4()));
  CHECK_FALSE(is_kuratowski_digraph(directed_cycle(5)));

  // Every strong orientation of K3,3.
  const Graph k33 = complete_bipartite(3, 3);
  std::size_t strong = 0;
  for (std::uint32_t code = 0; code < (1u << 9); ++code) {
    std::vector<bool> fw;
    for (int i = 0; i < 9; ++i) fw.push_back((code >> i & 1u) != 0);
    const Digraph d = Orientation{k33, fw}.digraph();
    const bool s = strong_by_search(d);
    if (s) ++strong;
    CHECK(is_kuratowski_digraph(d) == s);
    if (s) CHECK(is_kuratowski_digraph_bruteforce(d));
  }
  CHECK(all_good_orientations(k33).size() * 2 == strong);

  // Random orientations of small almost-planar graphs.
  std::mt19937 rng(5);
  std::bernoulli_distribution coin(0.5);
  for (const Graph& g : almost_planar_up_to(7, 14)) {
    for (int t = 0; t < 20; ++t) {
      std::vector<bool> fw;
      for (int i = 0; i < g.edge_count(); ++i) fw.push_back(coin(rng));
      const Digraph d = Orientation{g, fw}.digraph();
      CHECK(is_kuratowski_digraph(d) == is_kuratowski_digraph_bruteforce(d));
    }
  }
  CHECK_THROWS_AS(is_kuratowski_digraph_bruteforce(make_diwheel(12)), size_cap_exceeded);
}

TEST_CASE("good orientation examples") {
  // Strong tournaments on five labelled vertices: 544, i.e. 272 up to reversal.
  CHECK(all_good_orientations(complete_graph(5)).size() == 272);
  CHECK(find_good_orientation(complete_graph(5)).has_value());
  CHECK(find_good_orientation(hinged_mussel(3, 3, 3)).has_value());
  CHECK_FALSE(find_good_orientation(hinged_mussel(3, 3, 4)).has_value());
  CHECK(find_good_orientation(generate_V8()).has_value());
  CHECK_THROWS_AS(find_good_orientation(complete_graph(6)), precondition_error);
}

TEST_CASE("cell solver agrees with brute force on almost-planar graphs up to 14 edges") {
  for (const Graph& g : almost_planar_up_to(8, 14)) {
    INFO(edge_list(g));
    const auto fast = all_good_orientations(g);
    const auto slow = all_good_orientations_bruteforce(g);
    CHECK(fast == slow);
    CHECK(find_good_orientation(g).has_value() == !slow.empty());
  }
}

TEST_CASE("clean back-cut examples") {
  const Graph v8 = generate_V8();
  const auto o = find_good_orientation(v8);
  REQUIRE(o.has_value());
  const Digraph d = o->digraph();
  const EdgeSet f = critical_edges(v8, Criterion::nonplanar);
  for (const Arc& a : d.arcs()) {
    if (!f.contains(make_edge(a.tail, a.head))) {
      CHECK_THROWS_AS(clean_back_cut(d, a), precondition_error);
      continue;
    }
    const BackCut b = clean_back_cut(d, a);
    CHECK(b.clean);
    CHECK(b.cut.out_arcs == std::vector<Arc>{a});
    CHECK(is_clean_back_cut(d, f, a, b.cut.side_a));
  }

  // Spanning-tree mussel: the side of T minus e holding the tail is a clean back-cut.
  const Graph m = hinged_mussel(3, 3, 3);
  const auto mo = find_good_orientation(m);
  REQUIRE(mo.has_value());
  const Digraph md = mo->digraph();
  const EdgeSet mf = critical_edges(m, Criterion::nonplanar);
  for (const Edge& e : mf) {
    const Arc a = md.has_arc(e.u, e.v) ? Arc{e.u, e.v} : Arc{e.v, e.u};
    const BackCut b = clean_back_cut(md, a);
    std::vector<Edge> rest;
    for (const Edge& x : mf) {
      if (x != e) rest.push_back(x);
    }
    const auto side = reach(edge_masks(m.vertex_count(), rest), a.tail, m.vertices());
    CHECK(is_clean_back_cut(md, mf, a, b.cut.side_a));
    CHECK(is_clean_back_cut(md, mf, a, side));
  }
}

TEST_CASE("every good orientation has clean back-cuts by both methods") {
  for (const Graph& g : almost_planar_up_to(8, 15)) {
    const EdgeSet f = critical_edges(g, Criterion::nonplanar);
    if (f.empty()) continue;
    for (const Orientation& o : all_good_orientations(g)) {
      const Digraph d = o.digraph();
      for (const Arc& a : d.arcs()) {
        if (!f.contains(make_edge(a.tail, a.head))) continue;
        INFO(edge_list(g));
        const BackCut x = clean_back_cut(d, a, BackCutMethod::closure);
        const BackCut y = clean_back_cut(d, a, BackCutMethod::subset_search);
        CHECK(is_clean_back_cut(d, f, a, x.cut.side_a));
        CHECK(is_clean_back_cut(d, f, a, y.cut.side_a));
      }
    }
  }
}

TEST_CASE("parity predicate examples") {
  const ParityReport v8 = parity_predicates(generate_V8());
  CHECK(v8.no_P4_condition);
  CHECK_FALSE(v8.spine_condition.has_value());

  const Graph m = hinged_mussel(3, 3, 4);
  const auto cert = recognize(m, Family::mussel);
  REQUIRE(cert.has_value());
  const ParityReport r = parity_predicates(m, cert);
  REQUIRE(r.mussel_parity.has_value());
  CHECK_FALSE(*r.mussel_parity);

  CHECK(tree_spine(5, {Edge{0, 1}, Edge{1, 2}, Edge{2, 3}, Edge{2, 4}}) == std::vector<int>{1, 2});
  // A spider with three legs of length two has no spine.
  CHECK_FALSE(tree_spine(7, {Edge{0, 1}, Edge{1, 2}, Edge{0, 3}, Edge{3, 4}, Edge{0, 5}, Edge{5, 6}}).has_value());
}

TEST_CASE("Moebius chains: necessary even-degree condition and the spine criterion") {
  std::size_t spanning = 0, no_p4 = 0;
  for (const Graph& g : mobius_chains_up_to(8)) {
    const ParityReport r = parity_predicates(g);
    const bool good = find_good_orientation(g).has_value();
    INFO(edge_list(g));
    if (good) CHECK(r.even_degree_condition);
    if (r.spine_condition) {
      ++spanning;
      CHECK(good == *r.spine_condition);
    }
    if (r.no_P4_condition) {
      ++no_p4;
      CHECK(good);
    }
  }
  CHECK(spanning > 0);
  CHECK(no_p4 > 0);
}

TEST_CASE("mussels with the hinge joined to both tips: good iff the path lengths share parity") {
  for (int a = 3; a <= 5; ++a) {
    for (int b = a; b <= 5; ++b) {
      for (int c = b; c <= 5; ++c) {
        if (a + b + c > 13) continue;
        const Graph g = hinged_mussel(a, b, c);
        const bool same = a % 2 == b % 2 && b % 2 == c % 2;
        INFO(a << "," << b << "," << c);
        CHECK(find_good_orientation(g).has_value() == same);
      }
    }
  }
}
