#include <catch_amalgamated.hpp>

#include "kdg/canonical.hpp"
#include "kdg/enumeration.hpp"
#include "kdg/obstructions.hpp"

using namespace kdg;

namespace {

std::size_t witness_arc_count(const DirectedSubdivisionWitness& w) {
  std::size_t total = 0;
  for (const auto& p : w.paths) total += p.size() - 1;
  return total;
}

std::vector<Digraph> strong_digraphs_up_to(int n) {
  std::vector<Digraph> out;
  for (int k = 1; k <= n; ++k) {
    auto level = enumerate_digraphs(k, [](const Digraph& d) { return is_strong(d); });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace

TEST_CASE("theta generators") {
  const Digraph t = make_strong_theta(2, 2, 2);
  CHECK(t.vertex_count() == 5);
  CHECK(is_strong(t));
  const Digraph t3 = make_strong_theta(2, 2, 3);
  CHECK(t3.vertex_count() == 6);
  CHECK(is_strong(t3));
  CHECK_THROWS_AS(make_strong_theta(1, 2, 2), precondition_error);

  const Digraph r = make_reinforced_theta(2, 2, 2);
  CHECK(r.vertex_count() == 5);
  CHECK(is_strong(r));
  CHECK(make_reinforced_theta(2, 2, 4).vertex_count() == 7);
  CHECK_THROWS_AS(make_reinforced_theta(2, 1, 2), precondition_error);

  // Subdividing the reinforcing arc produces a strong theta.
  const Digraph rs = subdivide(r, Arc{1, 0}, 2);
  const auto w = detect_outerplanar_obstruction(rs);
  REQUIRE(w.has_value());
  CHECK(w->kind == ObstructionKind::strong_theta);
}

TEST_CASE("strong directed K4 and diwheel generators") {
  const Digraph k4 = make_strong_directed_K4();
  CHECK(k4.vertex_count() == 4);
  CHECK(k4.arc_count() == 6);
  CHECK(is_strong(k4));
  for (int v = 0; v < 4; ++v) {
    CHECK(k4.in_degree(v) >= 1);
    CHECK(k4.out_degree(v) >= 1);
  }

  const Digraph w4 = make_diwheel(4);
  CHECK(w4.vertex_count() == 5);
  CHECK(w4.arc_count() == 8);
  CHECK(is_strong(w4));
  const Digraph w6 = make_diwheel(6);
  CHECK(w6.in_degree(6) == 3);
  CHECK(w6.out_degree(6) == 3);
  const Digraph w8 = make_diwheel(8);
  CHECK(w8.vertex_count() == 9);
  // Every hub triangle is directed.
  for (int i = 0; i < 8; ++i) {
    const int j = (i + 1) % 8;
    const bool cyclic = (w8.has_arc(i, j) && w8.has_arc(j, 8) && w8.has_arc(8, i)) ||
                        (w8.has_arc(j, i) && w8.has_arc(i, 8) && w8.has_arc(8, j));
    CHECK(cyclic);
  }
  CHECK_THROWS_AS(make_diwheel(5), precondition_error);
  CHECK_THROWS_AS(make_diwheel(2), precondition_error);
}

TEST_CASE("outerplanar obstruction detection examples") {
  const auto t = detect_outerplanar_obstruction(make_strong_theta(2, 2, 2));
  REQUIRE(t.has_value());
  CHECK(t->kind == ObstructionKind::strong_theta);
  CHECK_FALSE(detect_outerplanar_obstruction(directed_cycle(5)).has_value());

  const Digraph w = subdivide(make_diwheel(4), Arc{0, 1}, 2);
  const auto d = detect_outerplanar_obstruction(w);
  REQUIRE(d.has_value());
  CHECK(is_valid_witness(w, d->witness));
  const auto sp = detect_series_parallel_obstruction(w, {.rim_only = true});
  REQUIRE(sp.has_value());
  CHECK(sp->kind == ObstructionKind::diwheel);
  CHECK(sp->rim_length == 4);
}

TEST_CASE("series-parallel obstruction detection examples") {
  const auto k = detect_series_parallel_obstruction(make_strong_directed_K4());
  REQUIRE(k.has_value());
  CHECK(k->kind == ObstructionKind::strong_directed_k4);
  CHECK_FALSE(detect_series_parallel_obstruction(make_strong_theta(2, 2, 2)).has_value());
  CHECK_FALSE(detect_series_parallel_obstruction(directed_cycle(6)).has_value());

  CHECK_FALSE(is_series_parallel_digraph(make_strong_directed_K4()));
  CHECK(is_series_parallel_digraph(make_strong_theta(2, 3, 4)));
  CHECK(is_series_parallel_digraph(make_reinforced_theta(2, 2, 2)));
  CHECK_FALSE(is_series_parallel_digraph(make_diwheel(4)));
}

TEST_CASE("every generator output passes its own detector") {
  for (int a = 2; a <= 3; ++a) {
    for (int b = a; b <= 3; ++b) {
      for (int c = 2; c <= 3; ++c) {
        const auto t = detect_outerplanar_obstruction(make_strong_theta(a, b, c));
        REQUIRE(t.has_value());
        CHECK(t->kind == ObstructionKind::strong_theta);
        const auto r = detect_outerplanar_obstruction(make_reinforced_theta(a, b, c));
        REQUIRE(r.has_value());
        CHECK(r->kind == ObstructionKind::reinforced_theta);
      }
    }
  }
  for (int k = 4; k <= 10; k += 2) {
    const auto w = detect_series_parallel_obstruction(make_diwheel(k), {.rim_only = true});
    REQUIRE(w.has_value());
    // A diwheel contains no strong directed K4, so the witness is the wheel itself.
    CHECK(w->kind == ObstructionKind::diwheel);
    CHECK(w->rim_length == k);
  }
}

TEST_CASE("outerplanar obstructions are exactly the non-outerplanar strong digraphs up to 5 vertices") {
  const Graph k4 = complete_graph(4);
  const Graph k23 = complete_bipartite(2, 3);
  std::size_t checked = 0;
  for (const Digraph& d : strong_digraphs_up_to(5)) {
    const Graph u = underlying(d);
    // Outerplanar iff no K4 and no K2,3 subdivision.
    const bool outer = !contains_subdivision(u, k4) && !contains_subdivision(u, k23);
    const auto full = detect_outerplanar_obstruction(d);
    const auto rim = detect_outerplanar_obstruction(d, {.rim_only = true});
    CHECK(outer != full.has_value());
    CHECK(full.has_value() == rim.has_value());
    if (full) CHECK(is_valid_witness(d, full->witness));
    ++checked;
  }
  CHECK(checked == 82);
}

TEST_CASE("series-parallel obstructions are exactly the non-series-parallel strong digraphs up to 5 vertices") {
  const Graph k4 = complete_graph(4);
  for (const Digraph& d : strong_digraphs_up_to(5)) {
    const bool sp = !contains_subdivision(underlying(d), k4);
    const auto full = detect_series_parallel_obstruction(d);
    const auto rim = detect_series_parallel_obstruction(d, {.rim_only = true});
    CHECK(sp != full.has_value());
    CHECK(full.has_value() == rim.has_value());
    if (full) CHECK(is_valid_witness(d, full->witness));
  }
}

TEST_CASE("minimal strong non-series-parallel digraphs are the obstructions themselves") {
  // A minimal one must coincide with any obstruction it contains.
  for (const Digraph& d : minimal_strong_with(Property::non_series_parallel, 5)) {
    const auto w = detect_series_parallel_obstruction(d);
    REQUIRE(w.has_value());
    CHECK(witness_arc_count(w->witness) == static_cast<std::size_t>(d.arc_count()));
  }
  for (const Digraph& d : minimal_strong_with(Property::non_outerplanar, 5)) {
    const auto w = detect_outerplanar_obstruction(d);
    REQUIRE(w.has_value());
    CHECK(witness_arc_count(w->witness) == static_cast<std::size_t>(d.arc_count()));
  }
}

TEST_CASE("strong digraphs with 3-connected underlying graph reduce or are K4 or a diwheel") {
  for (int n = 4; n <= 6; ++n) {
    const auto all = enumerate_digraphs(
        n, [](const Digraph& d) { return is_strong(d) && connectivity_level(underlying(d)) >= 3; });
    for (const Digraph& d : all) {
      bool reducible = false;
      for (const Arc& a : d.arcs()) {
        const Digraph e = without_arc(d, a);
        if (is_strong(e) && !is_series_parallel_digraph(e)) reducible = true;
      }
      const bool k4 = isomorphic(d, make_strong_directed_K4());
      const bool wheel = n >= 5 && n % 2 == 1 && isomorphic(d, make_diwheel(n - 1));
      CHECK((reducible || k4 || wheel));
    }
  }
}
