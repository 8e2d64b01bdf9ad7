#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kdg/digraph.hpp"
#include "kdg/enumeration.hpp"
#include "kdg/families.hpp"
#include "kdg/obstructions.hpp"
#include "kdg/orientation.hpp"
#include "kdg/subdivision.hpp"

namespace kdg::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Text formats
//
//   graph <n>          digraph <n>
//   u v                u v        (u -> v)
//
// Blank lines and text after '#' are ignored.

inline std::string to_text(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

inline std::string to_text(const Digraph& d) {
  std::ostringstream out;
  out << "digraph " << d.vertex_count() << '\n';
  for (const Arc& a : d.arcs()) out << a.tail << ' ' << a.head << '\n';
  return out.str();
}

using AnyGraph = std::variant<Graph, Digraph>;

namespace detail {

inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

inline int parse_int(std::istringstream& in, const std::string& line) {
  long long v = 0;
  if (!(in >> v)) throw invalid_input("expected an integer in line: " + line);
  if (v < 0 || v > max_vertices) throw invalid_input("value out of range in line: " + line);
  return static_cast<int>(v);
}

}  // namespace detail

/// Parses either text format.
inline AnyGraph parse_any(const std::string& text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw invalid_input("empty input");
  std::istringstream head(lines[0]);
  std::string kind;
  head >> kind;
  if (kind != "graph" && kind != "digraph") throw invalid_input("first line must be 'graph <n>' or 'digraph <n>'");
  const int n = detail::parse_int(head, lines[0]);
  std::string rest;
  if (head >> rest) throw invalid_input("trailing text in line: " + lines[0]);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    const int a = detail::parse_int(in, lines[i]);
    const int b = detail::parse_int(in, lines[i]);
    if (in >> rest) throw invalid_input("trailing text in line: " + lines[i]);
    pairs.emplace_back(a, b);
  }
  if (kind == "graph") {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back(Edge{a, b});
    return Graph(n, std::move(edges));
  }
  std::vector<Arc> arcs;
  for (auto [a, b] : pairs) arcs.push_back(Arc{a, b});
  return Digraph(n, std::move(arcs));
}

inline Graph parse_graph(const std::string& text) {
  auto any = parse_any(text);
  if (auto* g = std::get_if<Graph>(&any)) return std::move(*g);
  throw invalid_input("expected an undirected graph");
}

inline Digraph parse_digraph(const std::string& text) {
  auto any = parse_any(text);
  if (auto* d = std::get_if<Digraph>(&any)) return std::move(*d);
  throw invalid_input("expected a digraph");
}

inline std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Graphviz text.
inline std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const Digraph& d) {
  std::ostringstream out;
  out << "digraph D {\n";
  for (int v = 0; v < d.vertex_count(); ++v) out << "  " << v << ";\n";
  for (const Arc& a : d.arcs()) out << "  " << a.tail << " -> " << a.head << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON

/// Key-sorted, two-space indented, newline-terminated.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json pair_list(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const Edge& e : edges) a.push_back({e.u, e.v});
  return a;
}

inline json arc_list(const std::vector<Arc>& arcs) {
  json a = json::array();
  for (const Arc& x : arcs) a.push_back({x.tail, x.head});
  return a;
}

inline json mask_list(VertexMask m) {
  json a = json::array();
  for_each_bit(m, [&](int v) { a.push_back(v); });
  return a;
}

inline json to_json(const Graph& g) {
  return {{"kind", "graph"}, {"n", g.vertex_count()}, {"edges", pair_list(g.edges())}};
}

inline json to_json(const Digraph& d) {
  return {{"kind", "digraph"}, {"n", d.vertex_count()}, {"arcs", arc_list(d.arcs())}};
}

inline Graph graph_from_json(const json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back(Edge{e.at(0).get<int>(), e.at(1).get<int>()});
    return Graph(j.at("n").get<int>(), std::move(edges));
  } catch (const json::exception& ex) {
    throw invalid_input(std::string("malformed graph JSON: ") + ex.what());
  }
}

inline Digraph digraph_from_json(const json& j) {
  try {
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) arcs.push_back(Arc{a.at(0).get<int>(), a.at(1).get<int>()});
    return Digraph(j.at("n").get<int>(), std::move(arcs));
  } catch (const json::exception& ex) {
    throw invalid_input(std::string("malformed digraph JSON: ") + ex.what());
  }
}

inline json to_json(const SubdivisionWitness& w) {
  return {{"kind", "subdivision"}, {"pattern", to_json(w.pattern)}, {"branch_map", w.branch_map}, {"paths", w.paths}};
}

inline json to_json(const DirectedSubdivisionWitness& w) {
  return {{"kind", "directed-subdivision"},
          {"pattern", to_json(w.pattern)},
          {"branch_map", w.branch_map},
          {"paths", w.paths}};
}

inline json to_json(const ObstructionWitness& w) {
  json j = {{"kind", to_string(w.kind)},
            {"pattern", to_json(w.witness.pattern)},
            {"branch_map", w.witness.branch_map},
            {"paths", w.witness.paths}};
  if (w.kind == ObstructionKind::diwheel) j["rim_length"] = w.rim_length;
  return j;
}

inline json to_json(const CutCertificate& c) {
  return {{"kind", "cut"}, {"side_a", mask_list(c.side_a)}, {"out_arcs", arc_list(c.out_arcs)},
          {"in_arcs", arc_list(c.in_arcs)}};
}

inline json to_json(const BackCut& b) {
  json j = to_json(b.cut);
  j["kind"] = "back-cut";
  j["target"] = {b.target.tail, b.target.head};
  j["clean"] = b.clean;
  return j;
}

inline json to_json(const Orientation& o) { return {{"kind", "orientation"}, {"arcs", arc_list(o.digraph().arcs())}}; }

// Family parameters.

inline json params_json(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MobiusChainSpec>) {
          return {{"n", s.n}, {"chords", pair_list(s.chords)}};
        } else if constexpr (std::is_same_v<T, DoubleWheelSpec>) {
          return {{"n", s.n}, {"u_neighbors", s.u_neighbors}, {"v_neighbors", s.v_neighbors}};
        } else if constexpr (std::is_same_v<T, ConchSpec>) {
          return {{"a", s.a},           {"b", s.b},         {"c", s.c},         {"p3_on_p", s.p3_on_p},
                  {"p3_on_q", s.p3_on_q}, {"p1_on_r", s.p1_on_r}, {"p1p2", s.p1p2}, {"p1p3", s.p1p3}};
        } else if constexpr (std::is_same_v<T, MusselSpec>) {
          return {{"a", s.a}, {"b", s.b}, {"c", s.c}, {"p1p2", s.p1p2}, {"p2p3", s.p2p3}, {"p1p3", s.p1p3}};
        } else if constexpr (std::is_same_v<T, ScallopSpec>) {
          return {{"n", s.n}, {"w_c_first", s.w_c_first}, {"w_c_last", s.w_c_last}, {"k5", s.k5}};
        } else if constexpr (std::is_same_v<T, ClamSpec>) {
          return {{"n", s.n}, {"j", s.j}};
        } else {
          return {{"n", s.n}, {"i", s.i}, {"j", s.j}};
        }
      },
      spec);
}

inline FamilySpec spec_from_json(Family f, const json& p) {
  try {
    const auto edges = [&](const char* key) {
      std::vector<Edge> out;
      for (const auto& e : p.at(key)) out.push_back(Edge{e.at(0).get<int>(), e.at(1).get<int>()});
      return out;
    };
    const auto ints = [&](const char* key) { return p.at(key).get<std::vector<int>>(); };
    const auto flag = [&](const char* key) { return p.value(key, false); };
    switch (f) {
      case Family::mobius_chain: return MobiusChainSpec{p.at("n").get<int>(), edges("chords")};
      case Family::double_wheel:
        return DoubleWheelSpec{p.at("n").get<int>(), ints("u_neighbors"), ints("v_neighbors")};
      case Family::conch:
        return ConchSpec{p.at("a").get<int>(), p.at("b").get<int>(), p.at("c").get<int>(), ints("p3_on_p"),
                         ints("p3_on_q"),      ints("p1_on_r"),      flag("p1p2"),        flag("p1p3")};
      case Family::mussel:
        return MusselSpec{p.at("a").get<int>(), p.at("b").get<int>(), p.at("c").get<int>(),
                          flag("p1p2"),         flag("p2p3"),         flag("p1p3")};
      case Family::scallop:
        return ScallopSpec{p.value("n", 0), flag("w_c_first"), flag("w_c_last"), flag("k5")};
      case Family::clam: return ClamSpec{p.at("n").get<int>(), p.at("j").get<int>()};
      case Family::whelk: return WhelkSpec{p.at("n").get<int>(), p.at("i").get<int>(), p.at("j").get<int>()};
    }
  } catch (const json::exception& ex) {
    throw invalid_input(std::string("malformed family parameters: ") + ex.what());
  }
  throw invalid_input("unknown family");
}

inline json to_json(const FamilyCertificate& c) {
  return {{"kind", "family-certificate"},
          {"family", to_string(c.family())},
          {"params", params_json(c.spec)},
          {"vertex_map", c.vertex_map}};
}

inline FamilyCertificate certificate_from_json(const json& j) {
  try {
    const auto f = family_from_string(j.at("family").get<std::string>());
    if (!f) throw invalid_input("unknown family " + j.at("family").get<std::string>());
    return FamilyCertificate{spec_from_json(*f, j.at("params")), j.at("vertex_map").get<std::vector<int>>()};
  } catch (const json::exception& ex) {
    throw invalid_input(std::string("malformed certificate JSON: ") + ex.what());
  }
}

inline json to_json(const VerificationReport& r) {
  json ces = json::array();
  for (const Counterexample& c : r.counterexamples) ces.push_back({{"digraph", to_json(c.digraph)}, {"reason", c.reason}});
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return {{"kind", "verification-report"},
          {"theorem", r.theorem},
          {"min_n", r.min_n},
          {"max_n", r.max_n},
          {"enumerated", r.enumerated},
          {"holders", r.holders},
          {"minimal", r.minimal},
          {"mismatches", r.mismatches},
          {"counterexamples", ces},
          {"details", details},
          {"pass", r.pass()}};
}

}  // namespace kdg::io
