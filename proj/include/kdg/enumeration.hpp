#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kdg/canonical.hpp"
#include "kdg/directed_subdivision.hpp"
#include "kdg/families.hpp"
#include "kdg/obstructions.hpp"
#include "kdg/orientation.hpp"

namespace kdg {

enum class Property { nonplanar, non_outerplanar, non_series_parallel };

inline std::string to_string(Property p) {
  switch (p) {
    case Property::nonplanar: return "nonplanar";
    case Property::non_outerplanar: return "non-outerplanar";
    case Property::non_series_parallel: return "non-series-parallel";
  }
  return "unknown";
}

inline std::optional<Property> property_from_string(const std::string& s) {
  for (Property p : {Property::nonplanar, Property::non_outerplanar, Property::non_series_parallel}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

/// Whether the undirected graph with adjacency `adj` has the property.
inline bool has_property(std::span<const VertexMask> adj, Property p) {
  switch (p) {
    case Property::nonplanar: return !is_planar(adj);
    case Property::non_outerplanar: return !is_outerplanar(Graph::from_masks(adj));
    case Property::non_series_parallel: return has_k4_subdivision(adj);
  }
  return false;
}

/// Strong, has the property, and no proper subdigraph is strong with it.
///
/// Each property is closed under taking supergraphs. A proper strong
/// subdigraph misses some arc e and sits inside a strong component of d - e,
/// so only those components need testing.
inline bool is_minimal_strong_with(const Digraph& d, Property p) {
  if (d.vertex_count() < 3 || !is_strong(d)) return false;
  if (!has_property(underlying(d).adjacency(), p)) return false;
  const int n = d.vertex_count();
  std::vector<VertexMask> out(d.out_adjacency().begin(), d.out_adjacency().end());
  std::vector<VertexMask> in(d.in_adjacency().begin(), d.in_adjacency().end());
  std::vector<VertexMask> und(static_cast<std::size_t>(n));
  for (const Arc& e : d.arcs()) {
    out[e.tail] &= ~bit(e.head);
    in[e.head] &= ~bit(e.tail);
    bool ok = true;
    for (VertexMask comp : strong_components(out, in, d.vertices())) {
      if (popcount(comp) < 4) continue;
      for (int v = 0; v < n; ++v) und[v] = contains(comp, v) ? (out[v] | in[v]) & comp : 0;
      if (has_property(und, p)) {
        ok = false;
        break;
      }
    }
    out[e.tail] |= bit(e.head);
    in[e.head] |= bit(e.tail);
    if (!ok) return false;
  }
  return true;
}

/// All isomorphism classes on at most n vertices that are minimal strong
/// with the property, smallest first.
inline std::vector<Digraph> minimal_strong_with(Property p, int n, int jobs = 1, EnumerationLimits limits = {}) {
  if (n < 1 || n > limits.max_digraph_vertices) {
    throw size_cap_exceeded("minimal_strong_with: n must be between 1 and " +
                            std::to_string(limits.max_digraph_vertices));
  }
  std::vector<Digraph> out;
  for (int k = 1; k <= n; ++k) {
    auto level = enumerate_digraphs(k, [p](const Digraph& d) { return is_minimal_strong_with(d, p); }, jobs, limits);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// Vertex set and arcs of a minimal strong subdigraph with the property, in
/// host labels, or none when no strong subdigraph has it.
inline std::optional<std::vector<Arc>> minimal_strong_subdigraph(const Digraph& d, Property p) {
  const int n = d.vertex_count();
  std::vector<VertexMask> out(d.out_adjacency().begin(), d.out_adjacency().end());
  std::vector<VertexMask> in(d.in_adjacency().begin(), d.in_adjacency().end());
  std::vector<VertexMask> und(static_cast<std::size_t>(n));
  const auto qualifying = [&](VertexMask within) -> std::optional<VertexMask> {
    for (VertexMask comp : strong_components(out, in, within)) {
      if (popcount(comp) < 4) continue;
      for (int v = 0; v < n; ++v) und[v] = contains(comp, v) ? (out[v] | in[v]) & comp : 0;
      if (has_property(und, p)) return comp;
    }
    return std::nullopt;
  };
  auto current = qualifying(d.vertices());
  if (!current) return std::nullopt;
  const auto restrict_to_current = [&] {
    for (int v = 0; v < n; ++v) {
      out[v] = contains(*current, v) ? out[v] & *current : 0;
      in[v] = contains(*current, v) ? in[v] & *current : 0;
    }
  };
  restrict_to_current();
  // Drop arcs while some strong component of the rest keeps the property.
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (int u = 0; u < n && !shrunk; ++u) {
      for_each_bit(out[u], [&](int v) {
        if (shrunk) return;
        out[u] &= ~bit(v);
        in[v] &= ~bit(u);
        if (auto next = qualifying(*current)) {
          current = next;
          restrict_to_current();
          shrunk = true;
        } else {
          out[u] |= bit(v);
          in[v] |= bit(u);
        }
      });
    }
  }
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u) for_each_bit(out[u], [&](int v) { arcs.push_back(Arc{u, v}); });
  return arcs;
}

/// A subdigraph that is a directed subdivision of a Kuratowski digraph; none
/// iff every strong component has a planar underlying graph.
inline std::optional<ObstructionWitness> detect_planar_obstruction(const Digraph& d) {
  const auto arcs = minimal_strong_subdigraph(d, Property::nonplanar);
  if (!arcs) return std::nullopt;
  const Digraph m(d.vertex_count(), *arcs);
  VertexMask used = 0;
  for (const Arc& a : *arcs) used |= bit(a.tail) | bit(a.head);
  std::vector<int> kept;
  const Digraph core = suppress(m, {}, &kept);
  // suppress() also drops the isolated vertices of m; keep only used ones.
  std::vector<int> branch_map;
  std::vector<int> pattern_id(static_cast<std::size_t>(d.vertex_count()), -1);
  for (int old : kept) {
    if (contains(used, old)) {
      pattern_id[old] = static_cast<int>(branch_map.size());
      branch_map.push_back(old);
    }
  }
  std::vector<Arc> pattern_arcs;
  std::vector<std::vector<int>> paths;
  for (const Arc& a : core.arcs()) {
    const int from = kept[a.tail];
    const int to = kept[a.head];
    // Follow the suppressed chain that ends at `to`.
    for_each_bit(m.out(from), [&](int first) {
      std::vector<int> path{from, first};
      while (pattern_id[path.back()] < 0) path.push_back(lowest(m.out(path.back())));
      if (path.back() == to) {
        pattern_arcs.push_back(Arc{pattern_id[from], pattern_id[to]});
        paths.push_back(std::move(path));
      }
    });
  }
  const Digraph pattern(static_cast<int>(branch_map.size()), pattern_arcs);
  // Reorder paths to match pattern.arcs().
  std::vector<std::vector<int>> ordered;
  for (const Arc& a : pattern.arcs()) {
    const auto it = std::find(pattern_arcs.begin(), pattern_arcs.end(), a);
    ordered.push_back(paths[static_cast<std::size_t>(it - pattern_arcs.begin())]);
  }
  ObstructionWitness w{ObstructionKind::kuratowski_digraph, 0,
                       DirectedSubdivisionWitness{pattern, branch_map, std::move(ordered)}};
  if (!is_valid_witness(d, w.witness) || !is_kuratowski_digraph(pattern)) {
    throw theorem_violation("detect_planar_obstruction: minimal strong nonplanar subdigraph did not suppress "
                            "to a Kuratowski digraph");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Theorem verification

enum class TheoremId { T1_2, T1_3, T3_1, T5_4, T6_1 };

inline std::string to_string(TheoremId t) {
  switch (t) {
    case TheoremId::T1_2: return "T1.2";
    case TheoremId::T1_3: return "T1.3";
    case TheoremId::T3_1: return "T3.1";
    case TheoremId::T5_4: return "T5.4";
    case TheoremId::T6_1: return "T6.1";
  }
  return "unknown";
}

inline std::optional<TheoremId> theorem_from_string(const std::string& s) {
  for (TheoremId t : {TheoremId::T1_2, TheoremId::T1_3, TheoremId::T3_1, TheoremId::T5_4, TheoremId::T6_1}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

inline int default_max_n(TheoremId t) {
  return t == TheoremId::T1_2 || t == TheoremId::T1_3 ? 5 : 6;
}

struct Counterexample {
  Digraph digraph;
  std::string reason;
};

struct VerificationReport {
  std::string theorem;
  int min_n = 1;
  int max_n = 0;
  std::size_t enumerated = 0;  // strong digraph classes examined
  std::size_t holders = 0;     // of those, how many have the property
  std::size_t minimal = 0;     // minimal strong digraphs with the property
  std::size_t mismatches = 0;
  std::vector<Counterexample> counterexamples;
  std::map<std::string, std::size_t> details;

  bool pass() const { return mismatches == 0 && counterexamples.empty(); }
};

namespace detail {

inline void record(VerificationReport& r, const Digraph& d, std::string reason) {
  ++r.mismatches;
  r.counterexamples.push_back(Counterexample{d, std::move(reason)});
}

// Obstruction theorems: property holds iff an obstruction is found.
inline void check_obstruction_equivalence(VerificationReport& r, const Digraph& d, Property p) {
  const bool holds = has_property(underlying(d).adjacency(), p);
  if (holds) ++r.holders;
  if (is_minimal_strong_with(d, p)) ++r.minimal;
  const auto w = p == Property::non_outerplanar ? detect_outerplanar_obstruction(d)
                                                : detect_series_parallel_obstruction(d);
  if (holds != w.has_value()) {
    record(r, d, holds ? "property holds but no obstruction found" : "obstruction found but property fails");
    return;
  }
  if (w) {
    if (!is_valid_witness(d, w->witness)) record(r, d, "obstruction witness does not validate");
    ++r.details["obstruction:" + to_string(w->kind)];
  }
}

// Checks run on each minimal strong nonplanar digraph.
inline void check_minimal_nonplanar(VerificationReport& r, const Digraph& d, TheoremId t,
                                    std::set<CanonicalForm>& seen_kuratowski) {
  const Digraph h = suppress(d);
  if (!is_kuratowski_digraph(h)) {
    record(r, d, "suppressed digraph is not a Kuratowski digraph");
    return;
  }
  const Graph u = underlying(h);
  if (!is_almost_planar(u)) {
    record(r, d, "underlying graph of the suppressed digraph is not almost-planar");
    return;
  }
  if (t == TheoremId::T3_1) return;
  if (t == TheoremId::T5_4) {
    try {
      const auto certs = classify_almost_planar(u);
      ++r.details["family:" + to_string(certs.front().family())];
    } catch (const theorem_violation&) {
      record(r, d, "almost-planar graph outside every family");
    }
    return;
  }
  // T6.1, once per Kuratowski digraph class.
  const auto key = canonical_form(h);
  if (!seen_kuratowski.insert(key).second) return;
  ++r.details["kuratowski_digraphs"];
  const EdgeSet f = critical_edges(u, Criterion::nonplanar);
  for (const Arc& e : h.arcs()) {
    if (!f.contains(make_edge(e.tail, e.head))) continue;
    ++r.details["critical_arcs"];
    std::optional<BackCut> by_closure, by_search;
    try {
      by_closure = clean_back_cut(h, e, BackCutMethod::closure);
    } catch (const theorem_violation&) {
    }
    try {
      by_search = clean_back_cut(h, e, BackCutMethod::subset_search);
    } catch (const theorem_violation&) {
    }
    if (!by_search) {
      record(r, h, "no clean back-cut for arc " + std::to_string(e.tail) + "->" + std::to_string(e.head));
    } else if (!by_closure) {
      record(r, h, "closure method missed a clean back-cut");
    } else if (!is_clean_back_cut(h, f, e, by_closure->cut.side_a) ||
               !is_clean_back_cut(h, f, e, by_search->cut.side_a)) {
      record(r, h, "reported back-cut is not clean");
    }
  }
}

}  // namespace detail

/// Runs the exhaustive check for one theorem over every strong digraph class
/// on 1..max_n vertices. Reports are identical for every value of `jobs`.
inline VerificationReport verify_theorem(TheoremId t, int max_n, int jobs = 1, EnumerationLimits limits = {}) {
  if (max_n < 1 || max_n > limits.max_digraph_vertices) {
    throw size_cap_exceeded("verify_theorem: max_n must be between 1 and " +
                            std::to_string(limits.max_digraph_vertices));
  }
  VerificationReport r;
  r.theorem = to_string(t);
  r.max_n = max_n;
  std::set<CanonicalForm> seen;
  for (int k = 1; k <= max_n; ++k) {
    const auto strong = enumerate_digraphs(k, [](const Digraph& d) { return is_strong(d); }, jobs, limits);
    r.enumerated += strong.size();
    for (const Digraph& d : strong) {
      switch (t) {
        case TheoremId::T1_2: detail::check_obstruction_equivalence(r, d, Property::non_outerplanar); break;
        case TheoremId::T1_3: detail::check_obstruction_equivalence(r, d, Property::non_series_parallel); break;
        default: {
          if (!has_property(underlying(d).adjacency(), Property::nonplanar)) break;
          ++r.holders;
          if (!is_minimal_strong_with(d, Property::nonplanar)) break;
          ++r.minimal;
          detail::check_minimal_nonplanar(r, d, t, seen);
        }
      }
    }
  }
  return r;
}

}  // namespace kdg
