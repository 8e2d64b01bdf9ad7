#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "kdg/digraph.hpp"
#include "kdg/families.hpp"
#include "kdg/graph_props.hpp"
#include "kdg/planarity.hpp"

namespace kdg {

// ---------------------------------------------------------------------------
// The forest of critical edges

struct Tree {
  VertexMask vertices = 0;
  std::vector<Edge> edges;
};

/// F = the edges whose deletion keeps the host nonplanar, and the trees of
/// (V, F), including single-vertex trees.
struct CriticalForest {
  Graph host;
  EdgeSet f;
  std::vector<Tree> components;
};

namespace detail {

inline void require_forest(const Graph& g, const EdgeSet& f, const char* who) {
  if (!is_subset_of(f, g)) throw precondition_error(std::string(who) + ": f is not a subset of the edges");
  if (has_cycle(g.vertex_count(), f.edges())) throw precondition_error(std::string(who) + ": f contains a cycle");
}

}  // namespace detail

inline std::vector<Tree> forest_components(int n, const EdgeSet& f) {
  const auto adj = edge_masks(n, f.edges());
  std::vector<Tree> out;
  for (VertexMask c : components(adj, first_n(n))) {
    Tree t{c, {}};
    for (const Edge& e : f) {
      if (contains(c, e.u)) t.edges.push_back(e);
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline CriticalForest critical_forest(const Graph& g) {
  EdgeSet f = critical_edges(g, Criterion::nonplanar);
  detail::require_forest(g, f, "critical_forest");
  auto comps = forest_components(g.vertex_count(), f);
  return CriticalForest{g, std::move(f), std::move(comps)};
}

// ---------------------------------------------------------------------------
// Fundamental cycles and cells

/// A cycle with exactly one edge outside f: `chord` plus the f-path between
/// its ends. `vertices` runs along the path from chord.u to chord.v.
struct FundamentalCycle {
  Edge chord;
  std::vector<int> vertices;

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      out.push_back(make_edge(vertices[i], vertices[(i + 1) % vertices.size()]));
    }
    return out;
  }
};

inline std::vector<FundamentalCycle> fundamental_cycles(const Graph& g, const EdgeSet& f) {
  detail::require_forest(g, f, "fundamental_cycles");
  const auto forest = edge_masks(g.vertex_count(), f.edges());
  std::vector<FundamentalCycle> out;
  for (const Edge& e : g.edges()) {
    if (f.contains(e)) continue;
    auto path = forest_path(forest, e.u, e.v);
    if (path.empty()) continue;
    out.push_back(FundamentalCycle{e, std::move(path)});
  }
  return out;
}

struct Cell {
  std::vector<Edge> edges;  // sorted
  VertexMask vertices = 0;
};

/// The closure of each f-edge under "a fundamental cycle meeting the set lies
/// inside it", deduplicated, in order of their smallest edge.
inline std::vector<Cell> compute_cells(const Graph& g, const EdgeSet& f) {
  const auto cycles = fundamental_cycles(g, f);
  std::vector<std::vector<Edge>> cycle_edges;
  for (const auto& c : cycles) {
    auto es = c.edges();
    std::sort(es.begin(), es.end());
    cycle_edges.push_back(std::move(es));
  }
  std::vector<Cell> cells;
  for (const Edge& seed : f) {
    const bool seen = std::any_of(cells.begin(), cells.end(), [&](const Cell& c) {
      return std::binary_search(c.edges.begin(), c.edges.end(), seed);
    });
    if (seen) continue;
    std::vector<Edge> j{seed};
    std::vector<bool> used(cycles.size(), false);
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (used[c]) continue;
        const bool meets = std::any_of(cycle_edges[c].begin(), cycle_edges[c].end(), [&](const Edge& e) {
          return std::binary_search(j.begin(), j.end(), e);
        });
        if (!meets) continue;
        used[c] = true;
        grew = true;
        j.insert(j.end(), cycle_edges[c].begin(), cycle_edges[c].end());
        std::sort(j.begin(), j.end());
        j.erase(std::unique(j.begin(), j.end()), j.end());
      }
    }
    Cell cell{std::move(j), 0};
    for (const Edge& e : cell.edges) cell.vertices |= bit(e.u) | bit(e.v);
    cells.push_back(std::move(cell));
  }
  return cells;
}

/// Orientations of a cell's edges (parallel to cell.edges; true = low to high
/// endpoint) making every fundamental cycle inside the cell directed.
struct CellOrientations {
  Cell cell;
  std::vector<std::vector<bool>> orientations;
};

/// Fixes the seed edge low-to-high and propagates around fundamental cycles.
/// Each cell gets zero orientations or two mutually reversed ones.
inline std::vector<CellOrientations> propagate_orientation(const Graph& g, const EdgeSet& f) {
  const auto cycles = fundamental_cycles(g, f);
  std::vector<CellOrientations> out;
  for (Cell& cell : compute_cells(g, f)) {
    const auto index = [&](Edge e) {
      return static_cast<std::size_t>(std::lower_bound(cell.edges.begin(), cell.edges.end(), e) -
                                      cell.edges.begin());
    };
    // Constraint graph on edges: relation[i] lists (j, same) where same means
    // edges i and j have equal low-to-high flags.
    std::vector<std::vector<std::pair<std::size_t, bool>>> rel(cell.edges.size());
    for (const auto& c : cycles) {
      if (!std::binary_search(cell.edges.begin(), cell.edges.end(), c.chord)) continue;
      const std::size_t len = c.vertices.size();
      for (std::size_t i = 0; i < len; ++i) {
        const int a = c.vertices[i];
        const int b = c.vertices[(i + 1) % len];
        const int x = c.vertices[(i + 2) % len];
        // Walking a -> b -> x: both edges must go the walking direction.
        const bool f1 = a < b;
        const bool f2 = b < x;
        const std::size_t p = index(make_edge(a, b));
        const std::size_t q = index(make_edge(b, x));
        rel[p].push_back({q, f1 == f2});
        rel[q].push_back({p, f1 == f2});
      }
    }
    std::vector<int> value(cell.edges.size(), -1);
    value[0] = 1;
    std::vector<std::size_t> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (auto [j, same] : rel[i]) {
        const int want = same ? value[i] : 1 - value[i];
        if (value[j] < 0) {
          value[j] = want;
          stack.push_back(j);
        } else if (value[j] != want) {
          ok = false;
          break;
        }
      }
    }
    CellOrientations co{std::move(cell), {}};
    if (ok) {
      std::vector<bool> one;
      for (int v : value) one.push_back(v == 1);
      std::vector<bool> two = one;
      two.flip();
      co.orientations = {std::move(one), std::move(two)};
    }
    out.push_back(std::move(co));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Odd subtree obstruction

/// Vertex-disjoint subtrees T_0..T_k (k odd, k >= 3) of the spanning tree,
/// with tree edges tree_edges[i-1] between T_i and T_0 and non-tree edges
/// cross_edges[i-1] between T_i and T_{i+1} (indices mod k).
struct SubtreeObstruction {
  std::vector<VertexMask> subtrees;
  std::vector<Edge> tree_edges;
  std::vector<Edge> cross_edges;
};

inline bool is_valid_obstruction(const Graph& g, const EdgeSet& f, const SubtreeObstruction& o) {
  const std::size_t k = o.tree_edges.size();
  if (k < 3 || k % 2 == 0 || o.subtrees.size() != k + 1 || o.cross_edges.size() != k) return false;
  const auto forest = edge_masks(g.vertex_count(), f.edges());
  VertexMask used = 0;
  for (VertexMask t : o.subtrees) {
    if (t == 0 || (t & used) != 0 || (t & ~g.vertices()) != 0) return false;
    if (!is_connected(Graph::from_masks(forest), t)) return false;
    used |= t;
  }
  const auto between = [](Edge e, VertexMask a, VertexMask b) {
    return (contains(a, e.u) && contains(b, e.v)) || (contains(a, e.v) && contains(b, e.u));
  };
  for (std::size_t i = 1; i <= k; ++i) {
    const Edge te = o.tree_edges[i - 1];
    const Edge ce = o.cross_edges[i - 1];
    if (!f.contains(te) || !between(te, o.subtrees[i], o.subtrees[0])) return false;
    const std::size_t next = i % k + 1;
    if (!g.has_edge(ce) || f.contains(ce) || !between(ce, o.subtrees[i], o.subtrees[next])) return false;
  }
  return true;
}

/// For f a spanning tree: the obstruction exists exactly when no orientation
/// makes every fundamental cycle directed. Constraints only link tree edges
/// at a common vertex, so a contradiction is an odd cycle among the tree
/// edges at one vertex v, and T_0 = {v}.
inline std::optional<SubtreeObstruction> odd_subtree_obstruction(const Graph& g, const EdgeSet& f) {
  detail::require_forest(g, f, "odd_subtree_obstruction");
  const int n = g.vertex_count();
  if (f.size() != n - 1) throw precondition_error("odd_subtree_obstruction: f is not a spanning tree");
  const auto forest = edge_masks(n, f.edges());
  const auto cycles = fundamental_cycles(g, f);
  for (int v = 0; v < n; ++v) {
    // Tree neighbours of v stand for the tree edges at v; link two of them
    // when a fundamental cycle passes through both edges.
    std::vector<int> nbrs;
    for_each_bit(forest[v], [&](int w) { nbrs.push_back(w); });
    const int k = static_cast<int>(nbrs.size());
    if (k < 3) continue;
    std::vector<std::vector<std::pair<int, Edge>>> link(static_cast<std::size_t>(k));
    const auto slot = [&](int w) {
      return static_cast<int>(std::find(nbrs.begin(), nbrs.end(), w) - nbrs.begin());
    };
    for (const auto& c : cycles) {
      const std::size_t len = c.vertices.size();
      for (std::size_t i = 0; i < len; ++i) {
        if (c.vertices[i] != v) continue;
        const int a = c.vertices[(i + len - 1) % len];
        const int b = c.vertices[(i + 1) % len];
        if (!contains(forest[v], a) || !contains(forest[v], b)) continue;
        link[slot(a)].push_back({slot(b), c.chord});
        link[slot(b)].push_back({slot(a), c.chord});
      }
    }
    // 2-colour; an odd cycle appears as an edge inside one colour class.
    std::vector<int> colour(static_cast<std::size_t>(k), -1), parent(static_cast<std::size_t>(k), -1);
    std::vector<Edge> parent_chord(static_cast<std::size_t>(k));
    std::vector<int> depth(static_cast<std::size_t>(k), 0);
    for (int s = 0; s < k; ++s) {
      if (colour[s] >= 0) continue;
      colour[s] = 0;
      std::vector<int> queue{s};
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int x = queue[qi];
        for (auto [y, chord] : link[x]) {
          if (colour[y] < 0) {
            colour[y] = 1 - colour[x];
            parent[y] = x;
            parent_chord[y] = chord;
            depth[y] = depth[x] + 1;
            queue.push_back(y);
            continue;
          }
          if (colour[y] != colour[x]) continue;
          // Odd cycle: x .. lca .. y plus the link x-y.
          std::vector<int> left{x}, right{y};
          std::vector<Edge> lchords, rchords;
          int a = x, b = y;
          while (a != b) {
            if (depth[a] >= depth[b]) {
              lchords.push_back(parent_chord[a]);
              a = parent[a];
              left.push_back(a);
            } else {
              rchords.push_back(parent_chord[b]);
              b = parent[b];
              right.push_back(b);
            }
          }
          // left: x..lca, right: y..lca. Cycle order: lca..x (reversed left), then y..(before lca).
          std::vector<int> order(left.rbegin(), left.rend());
          std::vector<Edge> chords(lchords.rbegin(), lchords.rend());
          chords.push_back(chord);
          for (std::size_t t = 0; t + 1 < right.size(); ++t) order.push_back(right[t]);
          for (const Edge& e : rchords) chords.push_back(e);
          SubtreeObstruction o;
          o.subtrees.push_back(bit(v));
          for (int s2 : order) {
            const int w = nbrs[s2];
            o.subtrees.push_back(reach(forest, w, first_n(n) & ~bit(v)));
            o.tree_edges.push_back(make_edge(v, w));
          }
          o.cross_edges = std::move(chords);
          return o;
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Kuratowski digraphs

/// Strong, nonplanar, no proper subdigraph strong and nonplanar, and no
/// suppressible vertex. A proper strong subdigraph avoids some arc e and lies
/// inside a strong component of d - e, so it suffices to test those.
inline bool is_kuratowski_digraph(const Digraph& d) {
  if (d.vertex_count() == 0 || !is_strong(d)) return false;
  if (is_planar(underlying(d))) return false;
  if (!suppressible_vertices(d).empty()) return false;
  const int n = d.vertex_count();
  std::vector<VertexMask> out(d.out_adjacency().begin(), d.out_adjacency().end());
  std::vector<VertexMask> in(d.in_adjacency().begin(), d.in_adjacency().end());
  std::vector<VertexMask> und(static_cast<std::size_t>(n));
  for (const Arc& e : d.arcs()) {
    out[e.tail] &= ~bit(e.head);
    in[e.head] &= ~bit(e.tail);
    for (VertexMask comp : strong_components(out, in, d.vertices())) {
      if (popcount(comp) < 5) continue;
      for (int v = 0; v < n; ++v) und[v] = contains(comp, v) ? (out[v] | in[v]) & comp : 0;
      if (!is_planar(std::span<const VertexMask>(und))) return false;
    }
    out[e.tail] |= bit(e.head);
    in[e.head] |= bit(e.tail);
  }
  return true;
}

/// The same test straight from the definition: every proper arc subset.
/// Throws size_cap_exceeded above `max_arcs`.
inline bool is_kuratowski_digraph_bruteforce(const Digraph& d, int max_arcs = 20) {
  const int m = d.arc_count();
  if (m > max_arcs) throw size_cap_exceeded("is_kuratowski_digraph_bruteforce: too many arcs");
  if (d.vertex_count() == 0 || !is_strong(d) || is_planar(underlying(d))) return false;
  if (!suppressible_vertices(d).empty()) return false;
  const int n = d.vertex_count();
  for (std::uint32_t sub = 0; sub + 1 < (std::uint32_t{1} << m); ++sub) {
    if (std::popcount(sub) < 9) continue;  // a Kuratowski subdivision has >= 9 edges
    std::vector<VertexMask> out(static_cast<std::size_t>(n), 0), in(static_cast<std::size_t>(n), 0);
    std::vector<VertexMask> und(static_cast<std::size_t>(n), 0);
    VertexMask touched = 0;
    for (int i = 0; i < m; ++i) {
      if (!(sub >> i & 1u)) continue;
      const Arc a = d.arcs()[static_cast<std::size_t>(i)];
      out[a.tail] |= bit(a.head);
      in[a.head] |= bit(a.tail);
      und[a.tail] |= bit(a.head);
      und[a.head] |= bit(a.tail);
      touched |= bit(a.tail) | bit(a.head);
    }
    if (!is_strong(out, in, touched)) continue;
    if (!is_planar(std::span<const VertexMask>(und))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Good orientations

struct OrientLimits {
  int max_free_bits = 26;      // cell choices plus free edges in the structured search
  int max_bruteforce_edges = 22;
};

namespace detail {

// Visits every orientation consistent with the cells; stops when visit
// returns true.
template <class Visit>
void for_each_cell_orientation(const Graph& g, const OrientLimits& lim, Visit&& visit) {
  const EdgeSet f = critical_edges(g, Criterion::nonplanar);
  require_forest(g, f, "find_good_orientation");
  const auto cells = propagate_orientation(g, f);
  for (const auto& c : cells) {
    if (c.orientations.empty()) return;
  }
  const auto& edges = g.edges();
  const auto index = [&](Edge e) {
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  std::vector<bool> in_cell(edges.size(), false);
  for (const auto& c : cells) {
    for (const Edge& e : c.cell.edges) in_cell[index(e)] = true;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!in_cell[i]) free.push_back(i);
  }
  // The first cell is fixed to its first orientation: reversal preserves goodness.
  const int bits = static_cast<int>(cells.size()) - (cells.empty() ? 0 : 1) + static_cast<int>(free.size());
  if (bits > lim.max_free_bits) {
    throw size_cap_exceeded("find_good_orientation: " + std::to_string(bits) + " free choices exceed the cap");
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::vector<bool> forward(edges.size(), true);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const bool flip = k == 0 ? false : (c & 1u) != 0;
      if (k > 0) c >>= 1;
      const auto& orient = cells[k].orientations[flip ? 1 : 0];
      for (std::size_t t = 0; t < cells[k].cell.edges.size(); ++t) {
        forward[index(cells[k].cell.edges[t])] = orient[t];
      }
    }
    for (std::size_t i : free) {
      forward[i] = (c & 1u) != 0;
      c >>= 1;
    }
    if (visit(Orientation{g, forward})) return;
  }
}

}  // namespace detail

/// A good orientation (one that is a Kuratowski digraph), searched over the
/// orientations consistent with the cells.
inline std::optional<Orientation> find_good_orientation(const Graph& g, OrientLimits lim = {}) {
  if (!is_almost_planar(g)) throw precondition_error("find_good_orientation: graph is not almost-planar");
  std::optional<Orientation> found;
  detail::for_each_cell_orientation(g, lim, [&](const Orientation& o) {
    if (is_kuratowski_digraph(o.digraph())) {
      found = o;
      return true;
    }
    return false;
  });
  return found;
}

/// All good orientations up to reversal, each represented by the member of
/// the pair whose first edge points low to high; sorted.
inline std::vector<Orientation> all_good_orientations(const Graph& g, OrientLimits lim = {}) {
  if (!is_almost_planar(g)) throw precondition_error("all_good_orientations: graph is not almost-planar");
  std::vector<Orientation> out;
  detail::for_each_cell_orientation(g, lim, [&](const Orientation& o) {
    if (is_kuratowski_digraph(o.digraph())) out.push_back(o.forward.empty() || o.forward[0] ? o : o.reversed());
    return false;
  });
  std::sort(out.begin(), out.end(), [](const Orientation& a, const Orientation& b) { return a.forward < b.forward; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Every orientation of g, filtered by is_kuratowski_digraph; up to reversal
/// as in all_good_orientations.
inline std::vector<Orientation> all_good_orientations_bruteforce(const Graph& g, OrientLimits lim = {}) {
  const int m = g.edge_count();
  if (m > lim.max_bruteforce_edges) throw size_cap_exceeded("all_good_orientations_bruteforce: too many edges");
  std::vector<Orientation> out;
  if (m == 0) return out;
  // Edge 0 fixed low to high.
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (m - 1)); ++code) {
    Orientation o{g, std::vector<bool>(static_cast<std::size_t>(m), true)};
    for (int i = 1; i < m; ++i) o.forward[static_cast<std::size_t>(i)] = (code >> (i - 1) & 1u) != 0;
    if (is_kuratowski_digraph(o.digraph())) out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const Orientation& a, const Orientation& b) { return a.forward < b.forward; });
  return out;
}

// ---------------------------------------------------------------------------
// Back-cuts

struct BackCut {
  CutCertificate cut;
  Arc target;
  bool clean = false;
};

enum class BackCutMethod { automatic, closure, subset_search };

namespace detail {

inline bool arc_in(const std::vector<Arc>& arcs, Arc a) {
  return std::find(arcs.begin(), arcs.end(), a) != arcs.end();
}

inline bool f_contains_arc(const EdgeSet& f, Arc a) { return f.contains(make_edge(a.tail, a.head)); }

}  // namespace detail

/// Whether A is a clean back-cut for e: delta+(A) = {e} and no F-arc enters A.
inline bool is_clean_back_cut(const Digraph& d, const EdgeSet& f, Arc e, VertexMask a) {
  if (a == 0 || a == d.vertices()) return false;
  const CutCertificate c = crossing_arcs(d, a);
  if (c.out_arcs.size() != 1 || c.out_arcs[0] != e) return false;
  return std::none_of(c.in_arcs.begin(), c.in_arcs.end(), [&](Arc x) { return detail::f_contains_arc(f, x); });
}

/// A clean back-cut for an F-arc of a Kuratowski digraph. The closure method
/// takes the smallest set containing tail(e) that is closed under out-arcs
/// other than e and under F-arcs backwards; every clean back-cut contains
/// it, so one exists iff it avoids head(e). Subset search tries every vertex
/// set. `automatic` uses subset search up to 20 vertices. Throws
/// theorem_violation if there is none.
inline BackCut clean_back_cut(const Digraph& d, Arc e, BackCutMethod method = BackCutMethod::automatic) {
  if (!d.has_arc(e)) throw precondition_error("clean_back_cut: arc not in digraph");
  const EdgeSet f = critical_edges(underlying(d), Criterion::nonplanar);
  if (!detail::f_contains_arc(f, e)) throw precondition_error("clean_back_cut: arc is not critical");
  if (method == BackCutMethod::automatic) {
    method = d.vertex_count() <= 20 ? BackCutMethod::subset_search : BackCutMethod::closure;
  }
  std::optional<VertexMask> found;
  if (method == BackCutMethod::closure) {
    const int n = d.vertex_count();
    std::vector<VertexMask> step(static_cast<std::size_t>(n), 0);
    for (const Arc& a : d.arcs()) {
      if (a == e) continue;
      step[a.tail] |= bit(a.head);
      if (detail::f_contains_arc(f, a)) step[a.head] |= bit(a.tail);
    }
    const VertexMask a_side = reach(step, e.tail, d.vertices());
    if (!contains(a_side, e.head)) found = a_side;
  } else {
    const int n = d.vertex_count();
    // tail(e) in A, head(e) not in A; enumerate the rest.
    std::vector<int> others;
    for (int v = 0; v < n; ++v) {
      if (v != e.tail && v != e.head) others.push_back(v);
    }
    const std::uint64_t total = std::uint64_t{1} << others.size();
    for (std::uint64_t code = 0; code < total && !found; ++code) {
      VertexMask a = bit(e.tail);
      for (std::size_t i = 0; i < others.size(); ++i) {
        if (code >> i & 1u) a |= bit(others[i]);
      }
      if (is_clean_back_cut(d, f, e, a)) found = a;
    }
  }
  if (!found) throw theorem_violation("clean_back_cut: no clean back-cut for a critical arc");
  return BackCut{crossing_arcs(d, *found), e, true};
}

// ---------------------------------------------------------------------------
// Parity conditions

/// Each condition evaluated literally; empty when the structure it needs is
/// absent (for instance mussel_parity on a graph without a mussel certificate).
struct ParityReport {
  bool even_degree_condition = true;
  bool no_P4_condition = true;
  std::optional<bool> spine_condition;
  std::optional<bool> mussel_parity;
  std::optional<bool> double_wheel_parity;
  std::vector<int> spine;
};

/// The minimal path of the tree meeting every edge: its non-leaf vertices,
/// when they form a path. Empty if the tree is not a caterpillar.
inline std::optional<std::vector<int>> tree_spine(int n, const std::vector<Edge>& tree_edges) {
  const auto adj = edge_masks(n, tree_edges);
  if (tree_edges.empty()) return std::nullopt;
  VertexMask inner = 0;
  for (int v = 0; v < n; ++v) {
    if (popcount(adj[v]) >= 2) inner |= bit(v);
  }
  if (inner == 0) return std::vector<int>{tree_edges.front().u};  // a single edge
  int start = -1;
  bool ok = true;
  for_each_bit(inner, [&](int v) {
    const int d = popcount(adj[v] & inner);
    if (d > 2) ok = false;
    if (d <= 1 && start < 0) start = v;
  });
  if (!ok || start < 0) return std::nullopt;
  std::vector<int> path{start};
  int prev = -1;
  for (;;) {
    VertexMask next = adj[path.back()] & inner;
    if (prev >= 0) next &= ~bit(prev);
    if (next == 0) break;
    prev = path.back();
    path.push_back(lowest(next));
  }
  if (static_cast<int>(path.size()) != popcount(inner)) return std::nullopt;
  return path;
}

inline ParityReport parity_predicates(const Graph& g, const std::optional<FamilyCertificate>& roles = std::nullopt) {
  if (roles && !verify_certificate(g, *roles)) {
    throw precondition_error("parity_predicates: certificate does not describe the graph");
  }
  const int n = g.vertex_count();
  const EdgeSet f = critical_edges(g, Criterion::nonplanar);
  detail::require_forest(g, f, "parity_predicates");
  const auto t = edge_masks(n, f.edges());
  const auto tdeg = [&](int v) { return popcount(t[v]); };
  ParityReport r;
  for (int v = 0; v < n; ++v) {
    // u - v - w in T with all three of T-degree >= 2.
    int heavy = 0;
    for_each_bit(t[v], [&](int u) {
      if (tdeg(u) >= 2) ++heavy;
    });
    if (tdeg(v) >= 2 && heavy >= 2 && tdeg(v) % 2 != 0) r.even_degree_condition = false;
  }
  for (const Edge& e : f) {
    if (tdeg(e.u) >= 2 && tdeg(e.v) >= 2) r.no_P4_condition = false;
  }
  if (f.size() == n - 1) {
    if (auto spine = tree_spine(n, f.edges())) {
      r.spine = *spine;
      r.spine_condition = std::all_of(spine->begin(), spine->end(), [&](int v) { return tdeg(v) % 2 == 0; });
    }
  }
  if (roles) {
    if (const auto* m = std::get_if<MusselSpec>(&roles->spec)) {
      r.mussel_parity = m->a % 2 == m->b % 2 && m->b % 2 == m->c % 2;
    }
    if (const auto* w = std::get_if<DoubleWheelSpec>(&roles->spec)) r.double_wheel_parity = w->n % 2 == 0;
  }
  return r;
}

}  // namespace kdg
