#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdg/graph.hpp"

namespace kdg {

/// An embedding of `pattern` into a host graph as a subdivision: pattern
/// vertices go to distinct branch vertices, pattern edges to internally
/// disjoint host paths. paths[i] belongs to pattern.edges()[i] and runs from
/// branch_map[edge.u] to branch_map[edge.v].
struct SubdivisionWitness {
  Graph pattern;
  std::vector<int> branch_map;
  std::vector<std::vector<int>> paths;
};

struct SearchLimits {
  int max_host_vertices = 16;
};

namespace detail {

// Checks the structural invariants shared by undirected and directed
// witnesses. `step_ok(a, b)` says whether the host has a usable a->b step.
template <class StepOk>
bool valid_embedding(int host_n, int pattern_n, std::span<const std::pair<int, int>> pattern_edges,
                     const std::vector<int>& branch_map,
                     const std::vector<std::vector<int>>& paths, StepOk step_ok) {
  if (static_cast<int>(branch_map.size()) != pattern_n) return false;
  if (paths.size() != pattern_edges.size()) return false;
  VertexMask branch = 0;
  for (int h : branch_map) {
    if (h < 0 || h >= host_n || contains(branch, h)) return false;
    branch |= bit(h);
  }
  VertexMask internal = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    if (p.size() < 2) return false;
    if (p.front() != branch_map[pattern_edges[i].first]) return false;
    if (p.back() != branch_map[pattern_edges[i].second]) return false;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      if (p[k] < 0 || p[k] >= host_n || p[k + 1] < 0 || p[k + 1] >= host_n) return false;
      if (!step_ok(p[k], p[k + 1])) return false;
    }
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      if (contains(branch, p[k]) || contains(internal, p[k])) return false;
      internal |= bit(p[k]);
    }
  }
  return true;
}

// Exact backtracking search for a subdivision of a pattern inside a host.
//
// Pattern edges are processed in an order where at least one end is already
// placed; the path for an edge is grown from the placed end, and when the
// other end is still free, every unused vertex the path reaches is tried as
// its branch vertex. For directed problems `out`/`in` differ and paths follow
// arcs; for undirected ones both are the adjacency.
class EmbeddingSearch {
 public:
  struct Problem {
    int host_n = 0;
    std::vector<VertexMask> out, in;
    int pattern_n = 0;
    std::vector<std::pair<int, int>> pattern_edges;  // (tail, head)
    std::vector<bool> subdividable;                  // per pattern edge
    bool directed = false;
  };

  explicit EmbeddingSearch(Problem p) : p_(std::move(p)) {
    const int pn = p_.pattern_n;
    need_out_.assign(static_cast<std::size_t>(pn), 0);
    need_in_.assign(static_cast<std::size_t>(pn), 0);
    for (auto [a, b] : p_.pattern_edges) {
      if (p_.directed) {
        ++need_out_[a];
        ++need_in_[b];
      } else {
        ++need_out_[a];
        ++need_out_[b];
      }
    }
    if (p_.subdividable.empty()) p_.subdividable.assign(p_.pattern_edges.size(), true);
    order_edges();
  }

  std::optional<std::pair<std::vector<int>, std::vector<std::vector<int>>>> run() {
    const int pn = p_.pattern_n;
    if (pn > p_.host_n) return std::nullopt;
    if (p_.pattern_edges.size() > count_host_edges()) return std::nullopt;
    image_.assign(static_cast<std::size_t>(pn), -1);
    remaining_.assign(static_cast<std::size_t>(pn), 0);
    for (auto [a, b] : p_.pattern_edges) {
      ++remaining_[a];
      ++remaining_[b];
    }
    paths_.assign(p_.pattern_edges.size(), {});
    used_ = 0;
    if (!place_next_root(0)) {
      if (!found_) return std::nullopt;
    }
    if (!found_) return std::nullopt;
    return std::make_pair(image_, paths_);
  }

 private:
  std::size_t count_host_edges() const {
    std::size_t m = 0;
    for (VertexMask x : p_.out) m += static_cast<std::size_t>(popcount(x));
    return p_.directed ? m : m / 2;
  }

  void order_edges() {
    const int pn = p_.pattern_n;
    std::vector<int> pos(static_cast<std::size_t>(pn), -1);
    std::vector<int> order;
    std::vector<VertexMask> padj(static_cast<std::size_t>(pn), 0);
    for (auto [a, b] : p_.pattern_edges) {
      padj[a] |= bit(b);
      padj[b] |= bit(a);
    }
    while (static_cast<int>(order.size()) < pn) {
      int root = -1;
      for (int v = 0; v < pn; ++v) {
        if (pos[v] >= 0) continue;
        if (root < 0 || need_out_[v] + need_in_[v] > need_out_[root] + need_in_[root]) root = v;
      }
      component_roots_.push_back(root);
      pos[root] = static_cast<int>(order.size());
      order.push_back(root);
      for (std::size_t i = order.size() - 1; i < order.size(); ++i) {
        // Visit neighbours with the most connections into the placed set first.
        std::vector<int> fresh;
        for_each_bit(padj[order[i]], [&](int w) {
          if (pos[w] < 0) fresh.push_back(w);
        });
        for (int w : fresh) {
          if (pos[w] < 0) {
            pos[w] = static_cast<int>(order.size());
            order.push_back(w);
          }
        }
      }
    }
    edge_order_.resize(p_.pattern_edges.size());
    for (std::size_t i = 0; i < edge_order_.size(); ++i) edge_order_[i] = static_cast<int>(i);
    auto key = [&](int i) {
      auto [a, b] = p_.pattern_edges[i];
      return std::make_pair(std::max(pos[a], pos[b]), std::min(pos[a], pos[b]));
    };
    std::sort(edge_order_.begin(), edge_order_.end(),
              [&](int x, int y) { return key(x) < key(y); });
    // Where a new component starts in the edge order.
    pos_ = std::move(pos);
  }

  bool degree_ok(int pv, int h) const {
    return popcount(p_.out[h]) >= need_out_[pv] && popcount(p_.in[h]) >= need_in_[pv];
  }

  // Every placed branch vertex must still have enough free host neighbours
  // for the pattern edges not yet routed.
  bool feasible() const {
    for (int pv = 0; pv < p_.pattern_n; ++pv) {
      const int h = image_[pv];
      if (h < 0 || remaining_[pv] == 0) continue;
      const VertexMask avail = ~used_ | branch_images_;
      int have = 0;
      if (p_.directed) {
        have = popcount(p_.out[h] & avail) + popcount(p_.in[h] & avail);
      } else {
        have = popcount(p_.out[h] & avail);
      }
      if (have < remaining_[pv]) return false;
    }
    return true;
  }

  void place(int pv, int h) {
    image_[pv] = h;
    used_ |= bit(h);
    branch_images_ |= bit(h);
  }
  void unplace(int pv, int h) {
    image_[pv] = -1;
    used_ &= ~bit(h);
    branch_images_ &= ~bit(h);
  }

  // Places the root of the next pattern component (if the next edge in the
  // order has no placed end) and continues with edge routing.
  bool place_next_root(std::size_t k) {
    if (k == edge_order_.size()) {
      // Isolated pattern vertices still need an image.
      for (int pv = 0; pv < p_.pattern_n; ++pv) {
        if (image_[pv] >= 0) continue;
        for (int h = 0; h < p_.host_n; ++h) {
          if (!contains(used_, h)) {
            place(pv, h);
            if (place_next_root(k)) return true;
            unplace(pv, h);
          }
        }
        return false;
      }
      found_ = true;
      return true;
    }
    const auto [a, b] = p_.pattern_edges[edge_order_[k]];
    if (image_[a] >= 0 || image_[b] >= 0) return route(k);
    const int root = pos_[a] < pos_[b] ? a : b;
    for (int h = 0; h < p_.host_n; ++h) {
      if (contains(used_, h) || !degree_ok(root, h)) continue;
      place(root, h);
      if (feasible() && route(k)) return true;
      unplace(root, h);
    }
    return false;
  }

  bool route(std::size_t k) {
    const int ei = edge_order_[k];
    const auto [tail, head] = p_.pattern_edges[ei];
    const bool forward = image_[tail] >= 0;
    const int from = forward ? tail : head;
    const int to = forward ? head : tail;
    std::vector<int> path{image_[from]};
    --remaining_[from];
    --remaining_[to];
    const bool ok = extend(k, ei, forward, to, path);
    ++remaining_[from];
    ++remaining_[to];
    return ok;
  }

  bool finish_edge(std::size_t k, int ei, bool forward, std::vector<int>& path) {
    std::vector<int> stored = path;
    if (!forward) std::reverse(stored.begin(), stored.end());
    paths_[ei] = std::move(stored);
    if (feasible() && place_next_root(k + 1)) return true;
    paths_[ei].clear();
    return false;
  }

  // Whether `target` can still be reached from `cur` through unused vertices.
  bool reachable(int cur, int target, bool forward) const {
    const auto& adj = forward ? p_.out : p_.in;
    VertexMask seen = bit(cur);
    VertexMask frontier = seen;
    const VertexMask free = ~used_;
    while (frontier != 0) {
      VertexMask next = 0;
      for_each_bit(frontier, [&](int v) { next |= adj[v]; });
      if (contains(next, target)) return true;
      next &= free & ~seen;
      seen |= next;
      frontier = next;
    }
    return false;
  }

  bool extend(std::size_t k, int ei, bool forward, int to, std::vector<int>& path) {
    const int cur = path.back();
    const VertexMask step = forward ? p_.out[cur] : p_.in[cur];
    const bool can_subdivide = p_.subdividable[ei];
    const int target = image_[to];
    if (target >= 0) {
      if (contains(step, target)) {
        path.push_back(target);
        if (finish_edge(k, ei, forward, path)) return true;
        path.pop_back();
      }
      if (!can_subdivide) return false;
      VertexMask cand = step & ~used_;
      bool ok = false;
      for_each_bit(cand, [&](int x) {
        if (ok) return;
        used_ |= bit(x);
        path.push_back(x);
        if (reachable(x, target, forward) && extend(k, ei, forward, to, path)) ok = true;
        if (!ok) {
          path.pop_back();
          used_ &= ~bit(x);
        }
      });
      return ok;
    }
    // The far end is still free: each unused vertex reached is a candidate.
    VertexMask cand = step & ~used_;
    bool ok = false;
    for_each_bit(cand, [&](int x) {
      if (ok) return;
      if (degree_ok(to, x)) {
        place(to, x);
        path.push_back(x);
        if (finish_edge(k, ei, forward, path)) {
          ok = true;
          return;
        }
        path.pop_back();
        unplace(to, x);
      }
      if (can_subdivide && path.size() < static_cast<std::size_t>(p_.host_n)) {
        used_ |= bit(x);
        path.push_back(x);
        if (extend(k, ei, forward, to, path)) {
          ok = true;
          return;
        }
        path.pop_back();
        used_ &= ~bit(x);
      }
    });
    return ok;
  }

  Problem p_;
  std::vector<int> need_out_, need_in_;
  std::vector<int> edge_order_, pos_, component_roots_;
  std::vector<int> image_, remaining_;
  std::vector<std::vector<int>> paths_;
  VertexMask used_ = 0;
  VertexMask branch_images_ = 0;
  bool found_ = false;
};

}  // namespace detail

inline bool is_valid_witness(const Graph& host, const SubdivisionWitness& w) {
  std::vector<std::pair<int, int>> pe;
  for (const Edge& e : w.pattern.edges()) pe.emplace_back(e.u, e.v);
  return detail::valid_embedding(host.vertex_count(), w.pattern.vertex_count(), pe, w.branch_map,
                                 w.paths, [&](int a, int b) { return host.has_edge(a, b); });
}

/// Exact search for a subgraph of `g` that is a subdivision of `pattern`.
/// Exponential; refuses hosts above limits.max_host_vertices.
inline std::optional<SubdivisionWitness> contains_subdivision(const Graph& g, const Graph& pattern,
                                                              SearchLimits limits = {}) {
  if (g.vertex_count() > limits.max_host_vertices) {
    throw size_cap_exceeded("contains_subdivision: host has " + std::to_string(g.vertex_count()) +
                            " vertices, cap is " + std::to_string(limits.max_host_vertices));
  }
  for (int v = 0; v < pattern.vertex_count(); ++v) {
    if (pattern.degree(v) == 0) {
      throw precondition_error("contains_subdivision: pattern has an isolated vertex");
    }
  }
  detail::EmbeddingSearch::Problem p;
  p.host_n = g.vertex_count();
  p.out.assign(g.adjacency().begin(), g.adjacency().end());
  p.in = p.out;
  p.pattern_n = pattern.vertex_count();
  for (const Edge& e : pattern.edges()) p.pattern_edges.emplace_back(e.u, e.v);
  auto found = detail::EmbeddingSearch(std::move(p)).run();
  if (!found) return std::nullopt;
  return SubdivisionWitness{pattern, std::move(found->first), std::move(found->second)};
}

}  // namespace kdg
