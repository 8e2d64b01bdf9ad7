#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "kdg/graph.hpp"
#include "kdg/planarity.hpp"
#include "kdg/subdivision.hpp"

namespace kdg {

/// min(3, vertex connectivity). A graph on n <= 3 vertices that is complete
/// gets n - 1; the empty graph and K1 get 0.
inline int connectivity_level(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 1) return 0;
  const VertexMask all = g.vertices();
  if (!is_connected(g, all)) return 0;
  for (int a = 0; a < n; ++a) {
    const VertexMask rest = all & ~bit(a);
    if (rest != 0 && !is_connected(g, rest)) return 1;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const VertexMask rest = all & ~bit(a) & ~bit(b);
      if (rest != 0 && !is_connected(g, rest)) return 2;
    }
  }
  return std::min(3, n - 1);
}

/// Series-parallel reduction: a graph has no K4 subdivision iff repeatedly
/// deleting vertices with at most one neighbour and suppressing vertices with
/// exactly two neighbours empties it.
inline bool has_k4_subdivision(std::span<const VertexMask> adj_in) {
  std::vector<VertexMask> adj(adj_in.begin(), adj_in.end());
  const int n = static_cast<int>(adj.size());
  VertexMask alive = first_n(n);
  bool changed = true;
  while (changed && alive != 0) {
    changed = false;
    for_each_bit(alive, [&](int v) {
      const VertexMask nb = adj[v];
      const int d = popcount(nb);
      if (d > 2) return;
      for_each_bit(nb, [&](int w) { adj[w] &= ~bit(v); });
      if (d == 2) {
        const int a = lowest(nb);
        const int b = lowest(nb & (nb - 1));
        adj[a] |= bit(b);
        adj[b] |= bit(a);
      }
      adj[v] = 0;
      alive &= ~bit(v);
      changed = true;
    });
  }
  return alive != 0;
}

inline bool has_k4_subdivision(const Graph& g) { return has_k4_subdivision(g.adjacency()); }

/// Largest k >= 2 such that g contains a subdivision of the k-rung Moebius
/// ladder, or nullopt if g has no K4 subdivision. Searches k <= 6.
inline std::optional<int> ladder_number(const Graph& g, SearchLimits limits = {}) {
  if (!has_k4_subdivision(g)) return std::nullopt;
  int heavy = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) >= 3) ++heavy;
  }
  // A k-rung ladder has cycle rank k + 1 and 2k vertices of degree three.
  const int rank = g.edge_count() - g.vertex_count() +
                   static_cast<int>(components(g, g.vertices()).size());
  const int top = std::min({6, rank - 1, heavy / 2});
  for (int k = top; k >= 3; --k) {
    if (contains_subdivision(g, mobius_ladder(k), limits)) return k;
  }
  return 2;
}

enum class Criterion { nonplanar, k4_subdivision };

inline bool satisfies(std::span<const VertexMask> adj, Criterion c) {
  return c == Criterion::nonplanar ? !is_planar(adj) : has_k4_subdivision(adj);
}

/// The edges whose deletion keeps the criterion true.
inline EdgeSet critical_edges(const Graph& g, Criterion c) {
  std::vector<VertexMask> adj(g.adjacency().begin(), g.adjacency().end());
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    adj[e.u] &= ~bit(e.v);
    adj[e.v] &= ~bit(e.u);
    if (satisfies(adj, c)) out.push_back(e);
    adj[e.u] |= bit(e.v);
    adj[e.v] |= bit(e.u);
  }
  return EdgeSet(std::move(out));
}

inline bool has_F_cycle(const Graph& g, const EdgeSet& f) {
  if (!is_subset_of(f, g)) throw precondition_error("has_F_cycle: edge set is not inside the graph");
  return has_cycle(g.vertex_count(), f.edges());
}

struct WheelCertificate {
  int k = 0;
  int hub = 0;
  std::vector<int> rim;                  // cycle vertex order
  std::vector<std::vector<int>> spokes;  // hub to rim branch vertex
};

/// Whether g is a subdivision of a k-wheel (k >= 3).
inline std::optional<WheelCertificate> recognize_wheel_subdivision(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 4 || !is_connected(g)) return std::nullopt;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) < 2) return std::nullopt;
  }
  for (int hub = 0; hub < n; ++hub) {
    const int k = g.degree(hub);
    if (k < 3) continue;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (v != hub && g.degree(v) > 3) ok = false;
    }
    if (!ok) continue;
    std::vector<std::vector<int>> spokes;
    VertexMask spoke_inner = 0;
    VertexMask ends = 0;
    for_each_bit(g.neighbors(hub), [&](int first) {
      if (!ok) return;
      std::vector<int> path{hub, first};
      int prev = hub;
      int cur = first;
      while (g.degree(cur) == 2) {
        const VertexMask next = g.neighbors(cur) & ~bit(prev);
        prev = cur;
        cur = lowest(next);
        if (cur == hub) {
          ok = false;
          return;
        }
        path.push_back(cur);
      }
      if (contains(ends, cur)) {
        ok = false;
        return;
      }
      ends |= bit(cur);
      for (std::size_t i = 1; i + 1 < path.size(); ++i) spoke_inner |= bit(path[i]);
      spokes.push_back(std::move(path));
    });
    if (!ok) continue;
    // The rest must be a single cycle through all spoke ends.
    const VertexMask rest = g.vertices() & ~bit(hub) & ~spoke_inner;
    std::vector<VertexMask> radj(static_cast<std::size_t>(n), 0);
    int rest_edges = 0;
    for (const Edge& e : g.edges()) {
      if (contains(rest, e.u) && contains(rest, e.v)) {
        radj[e.u] |= bit(e.v);
        radj[e.v] |= bit(e.u);
        ++rest_edges;
      }
    }
    bool cycle = rest_edges == popcount(rest) && reach(radj, lowest(rest), rest) == rest;
    for_each_bit(rest, [&](int v) {
      if (popcount(radj[v]) != 2) cycle = false;
    });
    if (!cycle) continue;
    std::size_t spoke_edges = 0;
    for (const auto& s : spokes) spoke_edges += s.size() - 1;
    if (spoke_edges + static_cast<std::size_t>(rest_edges) != g.edges().size()) continue;
    WheelCertificate cert;
    cert.k = k;
    cert.hub = hub;
    cert.spokes = std::move(spokes);
    int prev = -1;
    int cur = lowest(rest);
    do {
      cert.rim.push_back(cur);
      const VertexMask next = radj[cur] & ~(prev >= 0 ? bit(prev) : 0);
      prev = cur;
      cur = lowest(next);
    } while (cur != cert.rim.front());
    return cert;
  }
  return std::nullopt;
}

}  // namespace kdg
