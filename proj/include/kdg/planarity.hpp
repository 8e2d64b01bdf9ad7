#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "kdg/graph.hpp"
#include "kdg/subdivision.hpp"

namespace kdg {

namespace detail {

// Left-right planarity test (de Fraysseix-Rosenstiehl criterion, in the
// formulation of Brandes). Only the testing phase is implemented; no
// embedding is produced.
class LrPlanarity {
 public:
  LrPlanarity(int n, std::span<const VertexMask> adj) : n_(n) {
    nbrs_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      for_each_bit(adj[v], [&](int w) { nbrs_[v].push_back(w); });
    }
  }

  bool run() {
    int m = 0;
    for (const auto& a : nbrs_) m += static_cast<int>(a.size());
    m /= 2;
    if (n_ > 2 && m > 3 * n_ - 6) return false;

    height_.assign(static_cast<std::size_t>(n_), inf);
    parent_edge_.assign(static_cast<std::size_t>(n_), none);
    oriented_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
    out_.assign(static_cast<std::size_t>(n_), {});
    std::vector<int> roots;
    for (int s = 0; s < n_; ++s) {
      if (height_[s] == inf) {
        height_[s] = 0;
        roots.push_back(s);
        orient(s);
      }
    }
    for (auto& edges : out_) {
      std::stable_sort(edges.begin(), edges.end(),
                       [&](int a, int b) { return nesting_[a] < nesting_[b]; });
    }
    const std::size_t e_count = src_.size();
    ref_.assign(e_count, none);
    lowpt_edge_.assign(e_count, none);
    stack_bottom_.assign(e_count, 0);
    for (int s : roots) {
      if (!test(s)) return false;
    }
    return true;
  }

 private:
  static constexpr int none = -1;
  static constexpr int inf = std::numeric_limits<int>::max();

  struct Interval {
    int low = none;
    int high = none;
    bool empty() const { return low == none && high == none; }
  };

  struct ConflictPair {
    Interval left;
    Interval right;
    void swap() { std::swap(left, right); }
  };

  int new_edge(int v, int w) {
    src_.push_back(v);
    dst_.push_back(w);
    lowpt_.push_back(0);
    lowpt2_.push_back(0);
    nesting_.push_back(0);
    return static_cast<int>(src_.size()) - 1;
  }

  void orient(int v) {
    const int e = parent_edge_[v];
    for (int w : nbrs_[v]) {
      const std::size_t key = static_cast<std::size_t>(v) * n_ + w;
      if (oriented_[key]) continue;
      oriented_[key] = 1;
      oriented_[static_cast<std::size_t>(w) * n_ + v] = 1;
      const int vw = new_edge(v, w);
      out_[v].push_back(vw);
      lowpt_[vw] = height_[v];
      lowpt2_[vw] = height_[v];
      if (height_[w] == inf) {
        parent_edge_[w] = vw;
        height_[w] = height_[v] + 1;
        orient(w);
      } else {
        lowpt_[vw] = height_[w];
      }
      nesting_[vw] = 2 * lowpt_[vw] + (lowpt2_[vw] < height_[v] ? 1 : 0);
      if (e != none) {
        if (lowpt_[vw] < lowpt_[e]) {
          lowpt2_[e] = std::min(lowpt_[e], lowpt2_[vw]);
          lowpt_[e] = lowpt_[vw];
        } else if (lowpt_[vw] > lowpt_[e]) {
          lowpt2_[e] = std::min(lowpt2_[e], lowpt_[vw]);
        } else {
          lowpt2_[e] = std::min(lowpt2_[e], lowpt2_[vw]);
        }
      }
    }
  }

  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt_[i.high] > lowpt_[b];
  }

  int lowest(const ConflictPair& p) const {
    if (p.left.empty()) return lowpt_[p.right.low];
    if (p.right.empty()) return lowpt_[p.left.low];
    return std::min(lowpt_[p.left.low], lowpt_[p.right.low]);
  }

  bool test(int v) {
    const int e = parent_edge_[v];
    for (int ei : out_[v]) {
      const int w = dst_[ei];
      stack_bottom_[ei] = stack_.size();
      if (ei == parent_edge_[w]) {
        if (!test(w)) return false;
      } else {
        lowpt_edge_[ei] = ei;
        stack_.push_back(ConflictPair{Interval{}, Interval{ei, ei}});
      }
      if (lowpt_[ei] < height_[v]) {
        if (ei == out_[v].front()) {
          lowpt_edge_[e] = lowpt_edge_[ei];
        } else if (!add_constraints(ei, e)) {
          return false;
        }
      }
    }
    if (e != none) remove_back_edges(e);
    return true;
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    do {
      ConflictPair q = stack_.back();
      stack_.pop_back();
      if (!q.left.empty()) q.swap();
      if (!q.left.empty()) return false;
      if (lowpt_[q.right.low] > lowpt_[e]) {
        if (p.right.empty()) {
          p.right = q.right;
        } else {
          ref_[p.right.low] = q.right.high;
        }
        p.right.low = q.right.low;
      } else {
        ref_[q.right.low] = lowpt_edge_[e];
      }
    } while (stack_.size() != stack_bottom_[ei]);

    while (!stack_.empty() &&
           (conflicting(stack_.back().left, ei) || conflicting(stack_.back().right, ei))) {
      ConflictPair q = stack_.back();
      stack_.pop_back();
      if (conflicting(q.right, ei)) q.swap();
      if (conflicting(q.right, ei)) return false;
      if (p.right.low != none) ref_[p.right.low] = q.right.high;
      if (q.right.low != none) p.right.low = q.right.low;
      if (p.left.empty()) {
        p.left = q.left;
      } else {
        ref_[p.left.low] = q.left.high;
      }
      p.left.low = q.left.low;
    }
    if (!(p.left.empty() && p.right.empty())) stack_.push_back(p);
    return true;
  }

  void remove_back_edges(int e) {
    const int u = src_[e];
    while (!stack_.empty() && lowest(stack_.back()) == height_[u]) stack_.pop_back();
    if (stack_.empty()) return;
    ConflictPair p = stack_.back();
    stack_.pop_back();
    while (p.left.high != none && dst_[p.left.high] == u) p.left.high = ref_[p.left.high];
    if (p.left.high == none && p.left.low != none) {
      ref_[p.left.low] = p.right.low;
      p.left.low = none;
    }
    while (p.right.high != none && dst_[p.right.high] == u) p.right.high = ref_[p.right.high];
    if (p.right.high == none && p.right.low != none) {
      ref_[p.right.low] = p.left.low;
      p.right.low = none;
    }
    stack_.push_back(p);
  }

  int n_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<char> oriented_;
  std::vector<std::vector<int>> out_;
  std::vector<int> height_, parent_edge_;
  std::vector<int> src_, dst_, lowpt_, lowpt2_, nesting_, ref_, lowpt_edge_;
  std::vector<std::size_t> stack_bottom_;
  std::vector<ConflictPair> stack_;
};

}  // namespace detail

/// Planarity of the graph given by adjacency masks.
inline bool is_planar(std::span<const VertexMask> adj) {
  const int n = static_cast<int>(adj.size());
  // Cheap exits: a nonplanar graph contains a Kuratowski subdivision, which
  // needs at least nine edges and five vertices of degree at least three.
  int m2 = 0;
  int heavy = 0;
  for (int v = 0; v < n; ++v) {
    const int d = popcount(adj[v]);
    m2 += d;
    if (d >= 3) ++heavy;
  }
  if (m2 < 18 || heavy < 5) return true;
  return detail::LrPlanarity(n, adj).run();
}

inline bool is_planar(const Graph& g) { return is_planar(g.adjacency()); }

/// Reduces a nonplanar graph to a Kuratowski subdivision by greedy edge
/// deletion and reads off the branch vertices and paths.
inline SubdivisionWitness kuratowski_witness(const Graph& g) {
  if (is_planar(g)) throw precondition_error("kuratowski_witness: graph is planar");
  const int n = g.vertex_count();
  std::vector<VertexMask> adj(g.adjacency().begin(), g.adjacency().end());
  for (const Edge& e : g.edges()) {
    adj[e.u] &= ~bit(e.v);
    adj[e.v] &= ~bit(e.u);
    if (is_planar(adj)) {
      adj[e.u] |= bit(e.v);
      adj[e.v] |= bit(e.u);
    }
  }
  // What is left is a subdivision of K5 or K3,3 plus isolated vertices.
  std::vector<int> branch;
  for (int v = 0; v < n; ++v) {
    if (popcount(adj[v]) >= 3) branch.push_back(v);
  }
  VertexMask branch_mask = 0;
  for (int v : branch) branch_mask |= bit(v);

  // Trace each path leaving a branch vertex until it hits another one.
  struct Traced {
    int a, b;
    std::vector<int> path;
  };
  std::vector<Traced> traced;
  for (int s : branch) {
    for_each_bit(adj[s], [&](int first) {
      std::vector<int> path{s, first};
      int prev = s;
      int cur = first;
      while (!contains(branch_mask, cur)) {
        const VertexMask next = adj[cur] & ~bit(prev);
        prev = cur;
        cur = lowest(next);
        path.push_back(cur);
      }
      if (s < cur) traced.push_back(Traced{s, cur, std::move(path)});
    });
  }

  SubdivisionWitness w;
  const int b = static_cast<int>(branch.size());
  std::vector<int> index_of(static_cast<std::size_t>(n), -1);
  if (b == 5) {
    w.pattern = complete_graph(5);
    w.branch_map = branch;
    for (int i = 0; i < 5; ++i) index_of[branch[i]] = i;
  } else if (b == 6) {
    // Two-colour the branch vertices through the traced paths.
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    colour[branch[0]] = 0;
    for (int round = 0; round < 6; ++round) {
      for (const Traced& t : traced) {
        if (colour[t.a] >= 0 && colour[t.b] < 0) colour[t.b] = 1 - colour[t.a];
        if (colour[t.b] >= 0 && colour[t.a] < 0) colour[t.a] = 1 - colour[t.b];
      }
    }
    w.pattern = complete_bipartite(3, 3);
    int left = 0;
    int right = 3;
    w.branch_map.assign(6, -1);
    for (int v : branch) {
      const int slot = colour[v] == 0 ? left++ : right++;
      w.branch_map[slot] = v;
      index_of[v] = slot;
    }
  } else {
    throw theorem_violation("minimal nonplanar subgraph is not a Kuratowski subdivision");
  }
  w.paths.resize(w.pattern.edges().size());
  for (Traced& t : traced) {
    const Edge pe = make_edge(index_of[t.a], index_of[t.b]);
    const auto& pedges = w.pattern.edges();
    const auto it = std::lower_bound(pedges.begin(), pedges.end(), pe);
    const std::size_t slot = static_cast<std::size_t>(it - pedges.begin());
    if (index_of[t.a] != pe.u) std::reverse(t.path.begin(), t.path.end());
    w.paths[slot] = std::move(t.path);
  }
  return w;
}

/// Planarity with a Kuratowski witness on failure.
inline bool is_planar(const Graph& g, std::optional<SubdivisionWitness>& witness) {
  if (is_planar(g)) {
    witness.reset();
    return true;
  }
  witness = kuratowski_witness(g);
  return false;
}

/// Outerplanar iff adding one vertex adjacent to everything keeps it planar.
inline bool is_outerplanar(const Graph& g) {
  if (g.vertex_count() >= max_vertices) {
    throw size_cap_exceeded("is_outerplanar: apex construction needs one spare vertex id");
  }
  return is_planar(add_apex(g));
}

}  // namespace kdg
