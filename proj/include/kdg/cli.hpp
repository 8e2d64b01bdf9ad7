#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdg/kdg.hpp"

namespace kdg::cli {

/// Exit codes.
enum Exit : int { ok = 0, negative = 1, usage = 2, violation = 3 };

namespace detail {

using io::json;

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return io::read_all(in);
  std::ifstream file(path);
  if (!file) throw invalid_input("cannot open " + path);
  return io::read_all(file);
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw invalid_input("not an integer: " + item);
    }
    if (used != item.size()) throw invalid_input("not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

// "0-3,1-4"
inline json parse_pair_list(const std::string& text) {
  json out = json::array();
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw invalid_input("expected a-b, got " + item);
    const auto a = parse_int_list(item.substr(0, dash));
    const auto b = parse_int_list(item.substr(dash + 1));
    if (a.size() != 1 || b.size() != 1) throw invalid_input("expected a-b, got " + item);
    out.push_back({a[0], b[0]});
  }
  return out;
}

inline std::string dot_of_paths(const std::vector<std::vector<int>>& paths) {
  std::ostringstream out;
  out << "digraph W {\n";
  for (const auto& p : paths) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out << "  " << p[i] << " -> " << p[i + 1] << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string edge_words(const std::vector<Edge>& edges) {
  std::string s;
  for (const Edge& e : edges) s += " " + std::to_string(e.u) + "-" + std::to_string(e.v);
  return s;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::string format;
  bool dot = false;
  bool expect = false;
};

inline int answer(const Context& c, bool positive) { return c.expect && !positive ? negative : ok; }

inline int cmd_classify(Context& c, const std::string& file, bool all) {
  const Graph g = io::parse_graph(read_source(file, c.in));
  if (!is_almost_planar(g)) {
    c.out << "NONE\n";
    return answer(c, false);
  }
  const auto certs = classify_almost_planar(g, all);
  if (c.format == "json") {
    if (all) {
      json a = json::array();
      for (const auto& cert : certs) a.push_back(io::to_json(cert));
      c.out << io::dump(a);
    } else {
      c.out << io::dump(io::to_json(certs.front()));
    }
  } else {
    for (const auto& cert : certs) {
      c.out << to_string(cert.family()) << ' ' << io::params_json(cert.spec).dump() << "\nvertex_map";
      for (int v : cert.vertex_map) c.out << ' ' << v;
      c.out << '\n';
    }
  }
  return ok;
}

inline int cmd_obstruct(Context& c, const std::string& type, const std::string& file) {
  const Digraph d = io::parse_digraph(read_source(file, c.in));
  std::optional<ObstructionWitness> w;
  if (type == "planar") {
    w = detect_planar_obstruction(d);
  } else if (type == "outerplanar") {
    w = detect_outerplanar_obstruction(d);
  } else {
    w = detect_series_parallel_obstruction(d);
  }
  if (!w) {
    c.out << "NONE\n";
    return answer(c, false);
  }
  if (c.dot) {
    c.out << dot_of_paths(w->witness.paths);
  } else if (c.format == "json") {
    c.out << io::dump(io::to_json(*w));
  } else {
    c.out << "kind " << to_string(w->kind) << "\nbranch_map";
    for (int v : w->witness.branch_map) c.out << ' ' << v;
    c.out << '\n';
    for (const auto& p : w->witness.paths) {
      c.out << "path";
      for (int v : p) c.out << ' ' << v;
      c.out << '\n';
    }
  }
  return ok;
}

inline int cmd_almost_planar(Context& c, const std::string& file) {
  const Graph g = io::parse_graph(read_source(file, c.in));
  const bool nonplanar = !is_planar(g);
  const bool three = connectivity_level(g) >= 3;
  const EdgeSet f = critical_edges(g, Criterion::nonplanar);
  const bool forest = !has_cycle(g.vertex_count(), f.edges());
  const bool yes = nonplanar && three && forest;
  if (c.format == "json") {
    c.out << io::dump({{"almost_planar", yes},
                       {"nonplanar", nonplanar},
                       {"three_connected", three},
                       {"critical_forest", forest},
                       {"critical_edges", io::pair_list(f.edges())}});
  } else {
    c.out << (yes ? "true" : "false") << "\nF" << edge_words(f.edges()) << '\n';
  }
  return answer(c, yes);
}

inline int cmd_orient(Context& c, const std::string& file, bool all) {
  const Graph g = io::parse_graph(read_source(file, c.in));
  if (!is_almost_planar(g)) throw precondition_error("orient: graph is not almost-planar");
  std::vector<Orientation> found;
  if (all) {
    found = all_good_orientations(g);
  } else if (auto o = find_good_orientation(g)) {
    found.push_back(*o);
  }
  if (found.empty()) {
    if (all && c.format == "json") {
      c.out << io::dump({{"count", 0}, {"orientations", json::array()}});
    } else {
      c.out << "NONE\n";
    }
    return answer(c, false);
  }
  if (c.dot) {
    for (const auto& o : found) c.out << io::to_dot(o.digraph());
  } else if (c.format == "json") {
    if (all) {
      json a = json::array();
      for (const auto& o : found) a.push_back(io::to_json(o.digraph()));
      c.out << io::dump({{"count", found.size()}, {"orientations", a}});
    } else {
      c.out << io::dump(io::to_json(found.front().digraph()));
    }
  } else {
    if (all) c.out << "count " << found.size() << '\n';
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (i > 0) c.out << '\n';
      c.out << io::to_text(found[i].digraph());
    }
  }
  return ok;
}

struct GenerateArgs {
  std::string family;
  std::string params;
  std::map<std::string, int> ints;
  std::map<std::string, std::string> lists;
  std::map<std::string, std::string> pairs;
  std::map<std::string, bool> flags;
};

inline Graph generate_from(const GenerateArgs& a) {
  json p = json::object();
  if (!a.params.empty()) {
    try {
      p = json::parse(a.params);
    } catch (const json::exception& ex) {
      throw invalid_input(std::string("--params is not valid JSON: ") + ex.what());
    }
    if (!p.is_object()) throw invalid_input("--params must be a JSON object");
  }
  for (const auto& [k, v] : a.ints) p[k] = v;
  for (const auto& [k, v] : a.lists) p[k] = parse_int_list(v);
  for (const auto& [k, v] : a.pairs) p[k] = parse_pair_list(v);
  for (const auto& [k, v] : a.flags) p[k] = v;
  const std::string& f = a.family;
  if (f == "mobius-ladder") {
    if (!p.contains("k")) throw invalid_input("mobius-ladder needs --k");
    return generate(mobius_ladder_spec(p.at("k").get<int>()));
  }
  if (f == "U8") return generate_U8();
  if (f == "W8") return generate_W8();
  if (f == "V8") return generate_V8();
  const auto fam = family_from_string(f);
  if (!fam) throw invalid_input("unknown family " + f);
  return generate(io::spec_from_json(*fam, p));
}

inline int cmd_generate(Context& c, const GenerateArgs& a) {
  const Graph g = generate_from(a);
  if (c.dot) {
    c.out << io::to_dot(g);
  } else if (c.format == "json") {
    c.out << io::dump(io::to_json(g));
  } else {
    c.out << io::to_text(g);
  }
  return ok;
}

inline int cmd_verify(Context& c, const std::string& theorem, int max_n, int jobs) {
  const auto t = theorem_from_string(theorem);
  if (!t) throw invalid_input("unknown theorem " + theorem);
  if (max_n == 0) max_n = default_max_n(*t);
  const auto r = verify_theorem(*t, max_n, jobs);
  if (c.format == "json") {
    c.out << io::dump(io::to_json(r));
  } else {
    c.out << r.theorem << " n<=" << r.max_n << " enumerated " << r.enumerated << " holders " << r.holders
          << " minimal " << r.minimal << " mismatches " << r.mismatches << '\n'
          << (r.pass() ? "PASS" : "FAIL") << '\n';
  }
  return r.pass() ? ok : violation;
}

inline int cmd_minimal(Context& c, const std::string& property, int n, int jobs) {
  const auto p = property_from_string(property);
  if (!p) throw invalid_input("unknown property " + property);
  const auto found = minimal_strong_with(*p, n, jobs);
  if (c.format == "json") {
    json a = json::array();
    for (const auto& d : found) a.push_back(io::to_json(d));
    c.out << io::dump({{"property", property}, {"n", n}, {"count", found.size()}, {"digraphs", a}});
  } else {
    c.out << "count " << found.size() << '\n';
    for (const auto& d : found) c.out << '\n' << io::to_text(d);
  }
  return ok;
}

}  // namespace detail

/// Runs one command. Never throws.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kuratowski digraphs, almost-planar graphs and their orientations", "kdg"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  const std::vector<std::string> formats{"json", "text"};
  std::string format;
  bool dot = false, expect = false;
  const auto common = [&](CLI::App* sub, bool with_dot, bool with_expect) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
    if (with_dot) sub->add_flag("--dot", dot, "Emit Graphviz text");
    if (with_expect) sub->add_flag("--expect", expect, "Exit 1 on a negative answer");
  };

  std::string file = "-";
  bool all = false;

  auto* classify = app.add_subcommand("classify", "Family certificate of an almost-planar graph");
  classify->add_option("file", file, "Graph file or - for stdin");
  classify->add_flag("--all", all, "Report every matching family");
  common(classify, false, true);

  std::string type;
  auto* obstruct = app.add_subcommand("obstruct", "Obstruction witness in a digraph");
  obstruct->add_option("--type", type, "Obstruction type")
      ->required()
      ->check(CLI::IsMember({"planar", "outerplanar", "series-parallel"}));
  obstruct->add_option("file", file, "Digraph file or - for stdin");
  common(obstruct, true, true);

  auto* almost = app.add_subcommand("almost-planar", "Almost-planarity test with the critical edge set");
  almost->add_option("file", file, "Graph file or - for stdin");
  common(almost, false, true);

  auto* orient = app.add_subcommand("orient", "Good orientations of an almost-planar graph");
  orient->add_option("file", file, "Graph file or - for stdin");
  orient->add_flag("--all", all, "All good orientations up to reversal");
  common(orient, true, true);

  detail::GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a family member");
  generate->add_option("family", gen.family, "mobius-chain, double-wheel, conch, mussel, scallop, clam, whelk, "
                                             "mobius-ladder, U8, W8 or V8")
      ->required();
  generate->add_option("--params", gen.params, "Parameters as a JSON object");
  for (const char* k : {"n", "k", "i", "j", "a", "b", "c"}) {
    generate->add_option_function<int>(std::string("--") + k, [&gen, k](int v) { gen.ints[k] = v; });
  }
  for (const char* k : {"u_neighbors", "v_neighbors", "p3_on_p", "p3_on_q", "p1_on_r"}) {
    std::string flag = std::string("--") + k;
    std::replace(flag.begin(), flag.end(), '_', '-');
    generate->add_option_function<std::string>(flag, [&gen, k](const std::string& v) { gen.lists[k] = v; },
                                               "Comma-separated positions");
  }
  generate->add_option_function<std::string>(
      "--chords", [&gen](const std::string& v) { gen.pairs["chords"] = v; }, "Chords as a-b,c-d");
  for (const char* k : {"p1p2", "p2p3", "p1p3", "w_c_first", "w_c_last", "k5"}) {
    std::string flag = std::string("--") + k;
    std::replace(flag.begin(), flag.end(), '_', '-');
    generate->add_flag_callback(flag, [&gen, k] { gen.flags[k] = true; });
  }
  common(generate, true, false);

  std::string theorem;
  int max_n = 0, jobs = 1;
  auto* verify = app.add_subcommand("verify", "Exhaustive theorem check over small digraphs");
  verify->add_option("--theorem", theorem, "T1.2, T1.3, T3.1, T5.4 or T6.1")
      ->required()
      ->check(CLI::IsMember({"T1.2", "T1.3", "T3.1", "T5.4", "T6.1"}));
  verify->add_option("--max-n", max_n, "Largest vertex count (default 5 for T1.x, 6 otherwise)")
      ->check(CLI::Range(1, 6));
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  common(verify, false, false);

  std::string property;
  int n = 0;
  auto* minimal = app.add_subcommand("minimal", "Minimal strong digraphs with a property");
  minimal->add_option("--property", property, "nonplanar, non-outerplanar or non-series-parallel")
      ->required()
      ->check(CLI::IsMember({"nonplanar", "non-outerplanar", "non-series-parallel"}));
  minimal->add_option("--n", n, "Largest vertex count")->required()->check(CLI::Range(1, 6));
  minimal->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  common(minimal, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  detail::Context c{in, out, format, dot, expect};
  const auto default_format = [&](const char* f) {
    if (c.format.empty()) c.format = f;
  };
  try {
    if (classify->parsed()) {
      default_format("json");
      return detail::cmd_classify(c, file, all);
    }
    if (obstruct->parsed()) {
      default_format("json");
      return detail::cmd_obstruct(c, type, file);
    }
    if (almost->parsed()) {
      default_format("text");
      return detail::cmd_almost_planar(c, file);
    }
    if (orient->parsed()) {
      default_format("text");
      return detail::cmd_orient(c, file, all);
    }
    if (generate->parsed()) {
      default_format("text");
      return detail::cmd_generate(c, gen);
    }
    if (verify->parsed()) {
      default_format("json");
      return detail::cmd_verify(c, theorem, max_n, jobs);
    }
    if (minimal->parsed()) {
      default_format("text");
      return detail::cmd_minimal(c, property, n, jobs);
    }
  } catch (const theorem_violation& e) {
    err << "theorem violation: " << e.what() << '\n';
    return violation;
  } catch (const size_cap_exceeded& e) {
    err << "size cap: " << e.what() << '\n';
    return usage;
  } catch (const invalid_input& e) {
    err << "invalid input: " << e.what() << '\n';
    return usage;
  } catch (const precondition_error& e) {
    err << "precondition: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace kdg::cli
