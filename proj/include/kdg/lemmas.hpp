#pragma once

#include <algorithm>
#include <cstdint>
#include <variant>
#include <vector>

#include "kdg/digraph.hpp"

namespace kdg {

/// Number of simple directed paths from `from` to `to` avoiding `blocked`.
inline std::uint64_t count_directed_paths(const Digraph& d, int from, int to, VertexMask blocked) {
  if (from == to) return 1;
  std::uint64_t total = 0;
  const VertexMask next = d.out(from) & ~blocked;
  for_each_bit(next, [&](int w) { total += count_directed_paths(d, w, to, blocked | bit(from)); });
  return total;
}

/// Number of directed cycles through arc a.
inline std::uint64_t directed_cycles_through(const Digraph& d, Arc a) {
  return count_directed_paths(d, a.head, a.tail, 0);
}

inline bool is_cycle_of(const Graph& g, const std::vector<int>& cycle) {
  if (cycle.size() < 3) return false;
  VertexMask seen = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int a = cycle[i];
    const int b = cycle[(i + 1) % cycle.size()];
    if (a < 0 || a >= g.vertex_count() || contains(seen, a)) return false;
    seen |= bit(a);
    if (b < 0 || b >= g.vertex_count() || !g.has_edge(a, b)) return false;
  }
  return true;
}

using DeletableOutcome = std::variant<Arc, CutCertificate>;

/// For a strong digraph and a cycle of its underlying graph: either an arc of
/// the cycle whose deletion leaves the digraph strong, or a vertex partition
/// crossed by exactly one arc in each direction.
inline DeletableOutcome deletable_cycle_edge(const Digraph& d, const std::vector<int>& cycle) {
  if (!is_strong(d)) throw precondition_error("deletable_cycle_edge: digraph is not strong");
  if (!is_cycle_of(underlying(d), cycle)) {
    throw precondition_error("deletable_cycle_edge: not a cycle of the underlying graph");
  }
  std::vector<Arc> cycle_arcs;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int a = cycle[i];
    const int b = cycle[(i + 1) % cycle.size()];
    cycle_arcs.push_back(d.has_arc(a, b) ? Arc{a, b} : Arc{b, a});
  }
  for (const Arc& a : cycle_arcs) {
    if (is_strong(without_arc(d, a))) return a;
  }
  // Every deletion breaks strongness. The arc on fewest directed cycles has
  // a single arc coming back into the set its tail still reaches.
  std::vector<std::uint64_t> counts;
  for (const Arc& a : cycle_arcs) counts.push_back(directed_cycles_through(d, a));
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(counts.begin(), counts.end()) - counts.begin());
  const Arc e = cycle_arcs[best];
  const Digraph rest = without_arc(d, e);
  const VertexMask a_side = reach(rest.out_adjacency(), e.tail, rest.vertices());
  CutCertificate cut = crossing_arcs(d, a_side);
  if (contains(a_side, e.head) || cut.out_arcs.size() != 1 || cut.in_arcs.size() != 1) {
    throw theorem_violation("deletable_cycle_edge: no deletable arc and no 1-1 partition");
  }
  // Report the smaller side.
  if (2 * popcount(a_side) > d.vertex_count()) return crossing_arcs(d, d.vertices() & ~a_side);
  return cut;
}

/// For a strong digraph with 2-connected underlying graph and a 2-cut {u, v}:
/// one directed path of length at least two between u and v through each
/// component of the underlying graph minus {u, v}.
inline std::vector<std::vector<int>> paths_across_2cut(const Digraph& d, int u, int v) {
  const Graph g = underlying(d);
  if (u == v || u < 0 || v < 0 || u >= d.vertex_count() || v >= d.vertex_count()) {
    throw precondition_error("paths_across_2cut: u and v must be distinct vertices");
  }
  if (!is_strong(d)) throw precondition_error("paths_across_2cut: digraph is not strong");
  const VertexMask rest = g.vertices() & ~bit(u) & ~bit(v);
  const auto comps = components(g, rest);
  if (comps.size() < 2) throw precondition_error("paths_across_2cut: {u, v} is not a 2-cut");
  for (int x = 0; x < g.vertex_count(); ++x) {
    const VertexMask r = g.vertices() & ~bit(x);
    if (r != 0 && !is_connected(g, r)) {
      throw precondition_error("paths_across_2cut: underlying graph is not 2-connected");
    }
  }
  // BFS from s through `comp`, ending with an arc into t.
  auto route = [&](int s, int t, VertexMask comp) -> std::vector<int> {
    std::vector<int> parent(static_cast<std::size_t>(d.vertex_count()), -1);
    std::vector<int> queue;
    for_each_bit(d.out(s) & comp, [&](int w) {
      parent[w] = s;
      queue.push_back(w);
    });
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int x = queue[i];
      if (d.has_arc(x, t)) {
        std::vector<int> path{t, x};
        while (path.back() != s) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      for_each_bit(d.out(x) & comp, [&](int w) {
        if (parent[w] < 0) {
          parent[w] = x;
          queue.push_back(w);
        }
      });
    }
    return {};
  };
  std::vector<std::vector<int>> out;
  for (VertexMask comp : comps) {
    auto p = route(u, v, comp);
    if (p.empty()) p = route(v, u, comp);
    if (p.empty()) throw theorem_violation("paths_across_2cut: component without a directed u-v path");
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace kdg
