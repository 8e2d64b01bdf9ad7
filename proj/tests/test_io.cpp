#include <catch_amalgamated.hpp>

#include "kdg/io.hpp"

using namespace kdg;
using kdg::io::json;

TEST_CASE("text round trip") {
  const Graph v8 = generate_V8();
  CHECK(io::parse_graph(io::to_text(v8)) == v8);
  const Digraph k4 = make_strong_directed_K4();
  CHECK(io::parse_digraph(io::to_text(k4)) == k4);
  CHECK(io::to_text(Graph::from_pairs(3, {{0, 1}, {1, 2}})) == "graph 3\n0 1\n1 2\n");
  CHECK(io::to_text(Digraph::from_pairs(2, {{1, 0}})) == "digraph 2\n1 0\n");
}

TEST_CASE("text parsing skips comments and blank lines") {
  const Graph g = io::parse_graph("# a triangle\n\ngraph 3   # header\n0 1\n 1 2\n\n2 0 # closing edge\n");
  CHECK(g == complete_graph(3));
  const auto any = io::parse_any("digraph 3\n0 1\n1 2\n2 0\n");
  REQUIRE(std::holds_alternative<Digraph>(any));
  CHECK(isomorphic(std::get<Digraph>(any), directed_cycle(3)));
}

TEST_CASE("malformed text is rejected") {
  CHECK_THROWS_AS(io::parse_any(""), invalid_input);
  CHECK_THROWS_AS(io::parse_any("# nothing\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("tree 3\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3 4\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3\n0 1 2\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3\n0 x\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3\n0 -1\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3\n0 3\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3\n1 1\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 3\n0 1\n1 0\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("digraph 3\n0 1\n1 0\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_any("graph 99\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_graph("digraph 2\n0 1\n"), invalid_input);
  CHECK_THROWS_AS(io::parse_digraph("graph 2\n0 1\n"), invalid_input);
}

TEST_CASE("graphviz output") {
  CHECK(io::to_dot(Graph::from_pairs(2, {{0, 1}})) == "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
  CHECK(io::to_dot(Digraph::from_pairs(2, {{1, 0}})) == "digraph D {\n  0;\n  1;\n  1 -> 0;\n}\n");
}

TEST_CASE("JSON round trip of graphs and digraphs") {
  const Graph k33 = complete_bipartite(3, 3);
  CHECK(io::graph_from_json(io::to_json(k33)) == k33);
  const Digraph w = make_diwheel(6);
  CHECK(io::digraph_from_json(io::to_json(w)) == w);
  CHECK(io::to_json(Graph::from_pairs(2, {{0, 1}})) == json::parse(R"({"kind":"graph","n":2,"edges":[[0,1]]})"));
  CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n":2})")), invalid_input);
  CHECK_THROWS_AS(io::digraph_from_json(json::parse(R"({"n":2,"arcs":[[0]]})")), invalid_input);
  CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n":2,"edges":[[0,0]]})")), invalid_input);
}

TEST_CASE("dump is key-sorted and newline-terminated") {
  const std::string s = io::dump(io::to_json(Graph::from_pairs(2, {{0, 1}})));
  CHECK(s == "{\n  \"edges\": [\n    [\n      0,\n      1\n    ]\n  ],\n  \"kind\": \"graph\",\n  \"n\": 2\n}\n");
}

TEST_CASE("family certificates survive serialisation") {
  for (Family f : all_families) {
    const auto sweep = parameter_sweep(f);
    for (std::size_t i = 0; i < sweep.size(); i += 11) {
      const Graph g = generate(sweep[i]);
      const auto c = recognize(g, f);
      REQUIRE(c.has_value());
      const json j = io::to_json(*c);
      CHECK(j.at("family") == to_string(f));
      const FamilyCertificate back = io::certificate_from_json(json::parse(j.dump()));
      CHECK(back.family() == f);
      CHECK(back.spec == c->spec);
      CHECK(back.vertex_map == c->vertex_map);
      CHECK(verify_certificate(g, back));
    }
  }
  CHECK_THROWS_AS(io::certificate_from_json(json::parse(R"({"family":"oyster","params":{},"vertex_map":[]})")),
                  invalid_input);
  CHECK_THROWS_AS(io::certificate_from_json(json::parse(R"({"family":"clam","params":{"n":5},"vertex_map":[]})")),
                  invalid_input);
}

TEST_CASE("witness and cut serialisation") {
  const auto w = detect_series_parallel_obstruction(make_diwheel(4), {.rim_only = true});
  REQUIRE(w.has_value());
  const json j = io::to_json(*w);
  CHECK(j.at("kind") == "diwheel");
  CHECK(j.at("rim_length") == 4);
  CHECK(j.at("paths").size() == w->witness.paths.size());
  CHECK(io::digraph_from_json(j.at("pattern")) == w->witness.pattern);

  const auto t = detect_outerplanar_obstruction(make_strong_theta(2, 2, 2));
  REQUIRE(t.has_value());
  CHECK_FALSE(io::to_json(*t).contains("rim_length"));

  const Digraph c = directed_cycle(4);
  const json cut = io::to_json(crossing_arcs(c, 0b0011));
  CHECK(cut.at("side_a") == json::array({0, 1}));
  CHECK(cut.at("out_arcs").size() == 1);
  CHECK(cut.at("in_arcs").size() == 1);
}

TEST_CASE("verification report serialisation") {
  const VerificationReport r = verify_theorem(TheoremId::T1_3, 4);
  const json j = io::to_json(r);
  CHECK(j.at("theorem") == "T1.3");
  CHECK(j.at("pass") == true);
  CHECK(j.at("enumerated") == r.enumerated);
  CHECK(j.at("counterexamples").empty());
}
