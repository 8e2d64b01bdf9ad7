#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kdg/digraph.hpp"
#include "kdg/subdivision.hpp"

namespace kdg {

/// Like SubdivisionWitness, with paths[i] a directed path from
/// branch_map[tail] to branch_map[head] of pattern.arcs()[i].
struct DirectedSubdivisionWitness {
  Digraph pattern;
  std::vector<int> branch_map;
  std::vector<std::vector<int>> paths;
};

inline bool is_valid_witness(const Digraph& host, const DirectedSubdivisionWitness& w) {
  std::vector<std::pair<int, int>> pa;
  for (const Arc& a : w.pattern.arcs()) pa.emplace_back(a.tail, a.head);
  return detail::valid_embedding(host.vertex_count(), w.pattern.vertex_count(), pa, w.branch_map,
                                 w.paths, [&](int a, int b) { return host.has_arc(a, b); });
}

/// Exact search for a subdigraph of `d` that is a directed subdivision of
/// `pattern`. `subdividable[i]` (default all true) allows pattern.arcs()[i]
/// to be realised by a path longer than one arc.
inline std::optional<DirectedSubdivisionWitness> contains_directed_subdivision(
    const Digraph& d, const Digraph& pattern, const std::vector<bool>& subdividable = {},
    SearchLimits limits = {}) {
  if (pattern.vertex_count() == 0) {
    throw precondition_error("contains_directed_subdivision: pattern is empty");
  }
  if (d.vertex_count() > limits.max_host_vertices) {
    throw size_cap_exceeded("contains_directed_subdivision: host has " +
                            std::to_string(d.vertex_count()) + " vertices, cap is " +
                            std::to_string(limits.max_host_vertices));
  }
  if (!subdividable.empty() && subdividable.size() != pattern.arcs().size()) {
    throw precondition_error("contains_directed_subdivision: subdividable mask has the wrong size");
  }
  detail::EmbeddingSearch::Problem p;
  p.host_n = d.vertex_count();
  p.out.assign(d.out_adjacency().begin(), d.out_adjacency().end());
  p.in.assign(d.in_adjacency().begin(), d.in_adjacency().end());
  p.pattern_n = pattern.vertex_count();
  for (const Arc& a : pattern.arcs()) p.pattern_edges.emplace_back(a.tail, a.head);
  p.subdividable = subdividable;
  p.directed = true;
  auto found = detail::EmbeddingSearch(std::move(p)).run();
  if (!found) return std::nullopt;
  return DirectedSubdivisionWitness{pattern, std::move(found->first), std::move(found->second)};
}

}  // namespace kdg
