#pragma once

#include <algorithm>
#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kdg/bits.hpp"

namespace kdg {

/// Unordered vertex pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges are kept sorted; adjacency is mirrored into bitmasks so that the
/// exhaustive searches can work with word operations.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(checked_count(n)), adj_(static_cast<std::size_t>(n), 0) {}

  /// Throws invalid_input on loops, duplicate edges or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges) : Graph(n) {
    for (Edge& e : edges) {
      if (e.u == e.v) {
        throw invalid_input("loop at vertex " + std::to_string(e.u));
      }
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw invalid_input("edge endpoint out of range: " + std::to_string(e.u) + " " +
                            std::to_string(e.v));
      }
      e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
      throw invalid_input("duplicate edge " + std::to_string(it->u) + " " + std::to_string(it->v));
    }
    edges_ = std::move(edges);
    for (const Edge& e : edges_) {
      adj_[e.u] |= bit(e.v);
      adj_[e.v] |= bit(e.u);
    }
  }

  static Graph from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.push_back(Edge{a, b});
    return Graph(n, std::move(edges));
  }

  /// Builds a graph from adjacency masks; assumes they are symmetric and loop free.
  static Graph from_masks(std::span<const VertexMask> adj) {
    std::vector<Edge> edges;
    const int n = static_cast<int>(adj.size());
    for (int u = 0; u < n; ++u) {
      for_each_bit(adj[u] & ~first_n(u + 1), [&](int v) { edges.push_back(Edge{u, v}); });
    }
    return Graph(n, std::move(edges));
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const VertexMask> adjacency() const { return adj_; }
  VertexMask neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  bool has_edge(int a, int b) const { return contains(adj_[a], b); }
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }
  VertexMask vertices() const { return first_n(n_); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static int checked_count(int n) {
    if (n < 0 || n > max_vertices) {
      throw invalid_input("vertex count out of range: " + std::to_string(n));
    }
    return n;
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexMask> adj_;
};

/// A subset of the edges of some host graph, kept sorted.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
    for (Edge& e : edges_) e = make_edge(e.u, e.v);
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  bool contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(e.u, e.v));
  }
  bool empty() const { return edges_.empty(); }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> edges_;
};

inline bool is_subset_of(const EdgeSet& f, const Graph& g) {
  return std::all_of(f.begin(), f.end(), [&](Edge e) { return g.has_edge(e); });
}

// ---------------------------------------------------------------------------
// Small structural helpers

inline Graph without_edge(const Graph& g, Edge e) {
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  const Edge key = make_edge(e.u, e.v);
  for (const Edge& x : g.edges()) {
    if (x != key) edges.push_back(x);
  }
  return Graph(g.vertex_count(), std::move(edges));
}

inline Graph with_edge(const Graph& g, Edge e) {
  std::vector<Edge> edges = g.edges();
  edges.push_back(e);
  return Graph(g.vertex_count(), std::move(edges));
}

/// Keeps the vertex numbering and drops every edge with an end outside `keep`.
inline Graph restrict_to(const Graph& g, VertexMask keep) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (contains(keep, e.u) && contains(keep, e.v)) edges.push_back(e);
  }
  return Graph(g.vertex_count(), std::move(edges));
}

/// Vertex v of `g` becomes vertex perm[v].
inline Graph relabel(const Graph& g, std::span<const int> perm) {
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) edges.push_back(make_edge(perm[e.u], perm[e.v]));
  return Graph(g.vertex_count(), std::move(edges));
}

/// Adds an extra vertex adjacent to every existing vertex.
inline Graph add_apex(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<Edge> edges = g.edges();
  for (int v = 0; v < n; ++v) edges.push_back(Edge{v, n});
  return Graph(n + 1, std::move(edges));
}

/// Vertices reachable from `start` without leaving `within`.
inline VertexMask reach(std::span<const VertexMask> adj, int start, VertexMask within) {
  VertexMask seen = bit(start) & within;
  VertexMask frontier = seen;
  while (frontier != 0) {
    VertexMask next = 0;
    for_each_bit(frontier, [&](int v) { next |= adj[v]; });
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

inline std::vector<VertexMask> components(std::span<const VertexMask> adj, VertexMask within) {
  std::vector<VertexMask> out;
  VertexMask rest = within;
  while (rest != 0) {
    const VertexMask c = reach(adj, lowest(rest), within);
    out.push_back(c);
    rest &= ~c;
  }
  return out;
}

inline std::vector<VertexMask> components(const Graph& g, VertexMask within) {
  return components(g.adjacency(), within);
}

inline bool is_connected(const Graph& g, VertexMask within) {
  if (within == 0) return true;
  return reach(g.adjacency(), lowest(within), within) == within;
}

inline bool is_connected(const Graph& g) { return is_connected(g, g.vertices()); }

/// Vertices of positive degree.
inline VertexMask non_isolated(const Graph& g) {
  VertexMask m = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.neighbors(v) != 0) m |= bit(v);
  }
  return m;
}

/// Whether the edges of `f` (on the vertices of `g`) contain a cycle.
inline bool has_cycle(int n, std::span<const Edge> f) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : f) {
    const int a = find(e.u);
    const int b = find(e.v);
    if (a == b) return true;
    parent[a] = b;
  }
  return false;
}

/// Returns the unique path between a and b inside the forest `forest`, or an
/// empty vector if they lie in different trees.
inline std::vector<int> forest_path(std::span<const VertexMask> forest, int a, int b) {
  const int n = static_cast<int>(forest.size());
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{a};
  parent[a] = a;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int x = queue[i];
    if (x == b) break;
    for_each_bit(forest[x], [&](int y) {
      if (parent[y] < 0) {
        parent[y] = x;
        queue.push_back(y);
      }
    });
  }
  if (parent[b] < 0) return {};
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::vector<VertexMask> edge_masks(int n, std::span<const Edge> edges) {
  std::vector<VertexMask> adj(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    adj[e.u] |= bit(e.v);
    adj[e.v] |= bit(e.u);
  }
  return adj;
}

// ---------------------------------------------------------------------------
// Standard graphs

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back(Edge{u, v});
  }
  return Graph(n, std::move(edges));
}

/// Sides are {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u) {
    for (int v = 0; v < b; ++v) edges.push_back(Edge{u, a + v});
  }
  return Graph(a + b, std::move(edges));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return Graph(n, std::move(edges));
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1});
  return Graph(n, std::move(edges));
}

/// Rim 0..k-1, hub k.
inline Graph wheel_graph(int k) {
  std::vector<Edge> edges;
  for (int v = 0; v < k; ++v) {
    edges.push_back(make_edge(v, (v + 1) % k));
    edges.push_back(Edge{v, k});
  }
  return Graph(k + 1, std::move(edges));
}

/// The k-rung Moebius ladder: a 2k-cycle plus the k long diagonals.
inline Graph mobius_ladder(int k) {
  std::vector<Edge> edges;
  const int n = 2 * k;
  for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  for (int v = 0; v < k; ++v) edges.push_back(Edge{v, v + k});
  return Graph(n, std::move(edges));
}

}  // namespace kdg
