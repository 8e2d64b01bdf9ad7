#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kdg/graph.hpp"

namespace kdg {

/// Ordered vertex pair tail -> head.
struct Arc {
  int tail = 0;
  int head = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Simple digraph without loops, parallel arcs or 2-cycles.
class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(int n)
      : n_(checked_count(n)), out_(static_cast<std::size_t>(n), 0), in_(static_cast<std::size_t>(n), 0) {}

  /// Throws invalid_input on loops, repeated arcs, digons or bad endpoints.
  Digraph(int n, std::vector<Arc> arcs) : Digraph(n) {
    for (const Arc& a : arcs) {
      if (a.tail == a.head) throw invalid_input("loop at vertex " + std::to_string(a.tail));
      if (a.tail < 0 || a.head < 0 || a.tail >= n || a.head >= n) {
        throw invalid_input("arc endpoint out of range: " + std::to_string(a.tail) + " " +
                            std::to_string(a.head));
      }
      if (contains(out_[a.tail], a.head)) {
        throw invalid_input("duplicate arc " + std::to_string(a.tail) + " " + std::to_string(a.head));
      }
      if (contains(out_[a.head], a.tail)) {
        throw invalid_input("digon between " + std::to_string(a.tail) + " and " +
                            std::to_string(a.head));
      }
      out_[a.tail] |= bit(a.head);
      in_[a.head] |= bit(a.tail);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs_ = std::move(arcs);
  }

  static Digraph from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Arc> arcs;
    for (auto [a, b] : pairs) arcs.push_back(Arc{a, b});
    return Digraph(n, std::move(arcs));
  }

  static Digraph from_out_masks(std::span<const VertexMask> out) {
    std::vector<Arc> arcs;
    const int n = static_cast<int>(out.size());
    for (int u = 0; u < n; ++u) {
      for_each_bit(out[u], [&](int v) { arcs.push_back(Arc{u, v}); });
    }
    return Digraph(n, std::move(arcs));
  }

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::span<const VertexMask> out_adjacency() const { return out_; }
  std::span<const VertexMask> in_adjacency() const { return in_; }
  VertexMask out(int v) const { return out_[v]; }
  VertexMask in(int v) const { return in_[v]; }
  int out_degree(int v) const { return popcount(out_[v]); }
  int in_degree(int v) const { return popcount(in_[v]); }
  bool has_arc(int a, int b) const { return contains(out_[a], b); }
  bool has_arc(Arc a) const { return has_arc(a.tail, a.head); }
  VertexMask vertices() const { return first_n(n_); }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  static int checked_count(int n) {
    if (n < 0 || n > max_vertices) {
      throw invalid_input("vertex count out of range: " + std::to_string(n));
    }
    return n;
  }

  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<VertexMask> out_, in_;
};

/// An orientation of `base`: forward[i] says base.edges()[i] = {u < v} is
/// directed u -> v.
struct Orientation {
  Graph base;
  std::vector<bool> forward;

  Arc arc(std::size_t i) const {
    const Edge& e = base.edges()[i];
    return forward[i] ? Arc{e.u, e.v} : Arc{e.v, e.u};
  }

  Digraph digraph() const {
    std::vector<Arc> arcs;
    arcs.reserve(forward.size());
    for (std::size_t i = 0; i < forward.size(); ++i) arcs.push_back(arc(i));
    return Digraph(base.vertex_count(), std::move(arcs));
  }

  Orientation reversed() const {
    Orientation r = *this;
    r.forward.flip();
    return r;
  }

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// Forgets directions.
inline Graph underlying(const Digraph& d) {
  std::vector<Edge> edges;
  edges.reserve(d.arcs().size());
  for (const Arc& a : d.arcs()) edges.push_back(make_edge(a.tail, a.head));
  return Graph(d.vertex_count(), std::move(edges));
}

inline Orientation orientation_of(const Digraph& d) {
  Orientation o{underlying(d), {}};
  for (const Edge& e : o.base.edges()) o.forward.push_back(d.has_arc(e.u, e.v));
  return o;
}

// ---------------------------------------------------------------------------
// Reachability and strong connectivity

/// Strong components of the subdigraph induced on `within`.
inline std::vector<VertexMask> strong_components(std::span<const VertexMask> out,
                                                 std::span<const VertexMask> in,
                                                 VertexMask within) {
  std::vector<VertexMask> comps;
  VertexMask rest = within;
  while (rest != 0) {
    const int v = lowest(rest);
    const VertexMask c = reach(out, v, within) & reach(in, v, within);
    comps.push_back(c);
    rest &= ~c;
  }
  return comps;
}

inline std::vector<VertexMask> strong_components(const Digraph& d) {
  return strong_components(d.out_adjacency(), d.in_adjacency(), d.vertices());
}

inline bool is_strong(std::span<const VertexMask> out, std::span<const VertexMask> in,
                      VertexMask within) {
  if (within == 0) return true;
  const int v = lowest(within);
  return reach(out, v, within) == within && reach(in, v, within) == within;
}

/// Single-vertex and empty digraphs count as strong.
inline bool is_strong(const Digraph& d) {
  return is_strong(d.out_adjacency(), d.in_adjacency(), d.vertices());
}

/// Vertices with at least one incident arc.
inline VertexMask non_isolated(const Digraph& d) {
  VertexMask m = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if ((d.out(v) | d.in(v)) != 0) m |= bit(v);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Arc-level edits

inline Digraph without_arc(const Digraph& d, Arc a) {
  if (!d.has_arc(a)) throw precondition_error("without_arc: arc not present");
  std::vector<Arc> arcs;
  for (const Arc& x : d.arcs()) {
    if (x != a) arcs.push_back(x);
  }
  return Digraph(d.vertex_count(), std::move(arcs));
}

inline Digraph relabel(const Digraph& d, std::span<const int> perm) {
  std::vector<Arc> arcs;
  arcs.reserve(d.arcs().size());
  for (const Arc& a : d.arcs()) arcs.push_back(Arc{perm[a.tail], perm[a.head]});
  return Digraph(d.vertex_count(), std::move(arcs));
}

inline Digraph reversed(const Digraph& d) {
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs()) arcs.push_back(Arc{a.head, a.tail});
  return Digraph(d.vertex_count(), std::move(arcs));
}

/// Deletes the vertices outside `keep` and renumbers the rest in order.
inline Digraph induced_compact(const Digraph& d, VertexMask keep, std::vector<int>* old_of_new = nullptr) {
  std::vector<int> id(static_cast<std::size_t>(d.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (contains(keep, v)) {
      id[v] = next++;
      if (old_of_new) old_of_new->push_back(v);
    }
  }
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs()) {
    if (id[a.tail] >= 0 && id[a.head] >= 0) arcs.push_back(Arc{id[a.tail], id[a.head]});
  }
  return Digraph(next, std::move(arcs));
}

/// The vertices that suppress() may remove next: in- and out-degree one,
/// with the bypass arc neither present nor forming a digon.
inline std::vector<int> suppressible_vertices(const Digraph& d) {
  std::vector<int> out;
  for (int w = 0; w < d.vertex_count(); ++w) {
    if (d.in_degree(w) != 1 || d.out_degree(w) != 1) continue;
    const int u = lowest(d.in(w));
    const int v = lowest(d.out(w));
    if (u == v || d.has_arc(u, v) || d.has_arc(v, u)) continue;
    out.push_back(w);
  }
  return out;
}

/// Repeatedly replaces u -> w -> v by u -> v at vertices w of in- and
/// out-degree one, unless that creates a repeated arc or a digon. `choose`
/// picks which candidate to suppress next (default: the smallest). Removed
/// vertices are deleted and the rest renumbered in increasing order;
/// `old_of_new` receives the original id of each surviving vertex.
inline Digraph suppress(const Digraph& d,
                        const std::function<int(const std::vector<int>&)>& choose = {},
                        std::vector<int>* old_of_new = nullptr) {
  std::vector<VertexMask> out(d.out_adjacency().begin(), d.out_adjacency().end());
  std::vector<VertexMask> in(d.in_adjacency().begin(), d.in_adjacency().end());
  VertexMask alive = d.vertices();
  for (;;) {
    std::vector<int> cand;
    for_each_bit(alive, [&](int w) {
      if (popcount(in[w]) != 1 || popcount(out[w]) != 1) return;
      const int u = lowest(in[w]);
      const int v = lowest(out[w]);
      if (u == v || contains(out[u], v) || contains(out[v], u)) return;
      cand.push_back(w);
    });
    if (cand.empty()) break;
    const int w = choose ? choose(cand) : cand.front();
    const int u = lowest(in[w]);
    const int v = lowest(out[w]);
    out[u] = (out[u] & ~bit(w)) | bit(v);
    in[v] = (in[v] & ~bit(w)) | bit(u);
    out[w] = in[w] = 0;
    alive &= ~bit(w);
  }
  std::vector<Arc> arcs;
  std::vector<int> id(static_cast<std::size_t>(d.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (contains(alive, v)) {
      id[v] = next++;
      if (old_of_new) old_of_new->push_back(v);
    }
  }
  for_each_bit(alive, [&](int u) {
    for_each_bit(out[u], [&](int v) { arcs.push_back(Arc{id[u], id[v]}); });
  });
  return Digraph(next, std::move(arcs));
}

/// Replaces `a` by a directed path of `length` arcs through new vertices
/// numbered from vertex_count() upwards.
inline Digraph subdivide(const Digraph& d, Arc a, int length) {
  if (!d.has_arc(a)) throw precondition_error("subdivide: arc not present");
  if (length < 1) throw precondition_error("subdivide: length must be at least 1");
  if (length == 1) return d;
  const int n = d.vertex_count();
  std::vector<Arc> arcs;
  for (const Arc& x : d.arcs()) {
    if (x != a) arcs.push_back(x);
  }
  int prev = a.tail;
  for (int i = 0; i < length - 1; ++i) {
    arcs.push_back(Arc{prev, n + i});
    prev = n + i;
  }
  arcs.push_back(Arc{prev, a.head});
  return Digraph(n + length - 1, std::move(arcs));
}

// ---------------------------------------------------------------------------
// Cuts

/// delta+(A), delta-(A) for a vertex set A.
struct CutCertificate {
  VertexMask side_a = 0;
  std::vector<Arc> out_arcs;
  std::vector<Arc> in_arcs;

  friend bool operator==(const CutCertificate&, const CutCertificate&) = default;
};

inline CutCertificate crossing_arcs(const Digraph& d, VertexMask x) {
  CutCertificate c{x, {}, {}};
  for (const Arc& a : d.arcs()) {
    const bool t = contains(x, a.tail);
    const bool h = contains(x, a.head);
    if (t && !h) c.out_arcs.push_back(a);
    if (!t && h) c.in_arcs.push_back(a);
  }
  return c;
}

inline CutCertificate delta(const Digraph& d, VertexMask x) {
  if (x == 0 || (x & ~d.vertices()) != 0 || x == d.vertices()) {
    throw precondition_error("delta: vertex set must be a proper nonempty subset");
  }
  return crossing_arcs(d, x);
}

inline bool is_valid_cut(const Digraph& d, const CutCertificate& c) {
  if (c.side_a == 0 || (c.side_a & ~d.vertices()) != 0 || c.side_a == d.vertices()) return false;
  return crossing_arcs(d, c.side_a) == c;
}

// ---------------------------------------------------------------------------
// Standard digraphs

inline Digraph directed_cycle(int n) {
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v) arcs.push_back(Arc{v, (v + 1) % n});
  return Digraph(n, std::move(arcs));
}

inline Digraph directed_path(int n) {
  std::vector<Arc> arcs;
  for (int v = 0; v + 1 < n; ++v) arcs.push_back(Arc{v, v + 1});
  return Digraph(n, std::move(arcs));
}

}  // namespace kdg
