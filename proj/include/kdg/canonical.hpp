#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "kdg/digraph.hpp"
#include "kdg/graph.hpp"

namespace kdg {

/// Adjacency code of a labelled graph or digraph: one entry per vertex pair
/// i < j, in column order (j = 1, 2, ...; within a column i = 0..j-1). Graph
/// entries are 0/1; digraph entries are 0 (no arc), 1 (i -> j), 2 (j -> i).
/// The canonical form is the lexicographically largest code over all
/// relabelings, so two objects have equal canonical forms iff isomorphic.
struct CanonicalForm {
  int n = 0;
  bool directed = false;
  std::vector<std::uint8_t> code;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

inline std::size_t pair_index(int i, int j) {
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(j - 1) / 2 + static_cast<std::size_t>(i);
}

// Pair values read from adjacency masks. For graphs out == in.
struct PairSource {
  std::span<const VertexMask> out;
  bool directed;

  std::uint8_t value(int a, int b) const {  // a plays the smaller position
    if (contains(out[a], b)) return 1;
    if (directed && contains(out[b], a)) return 2;
    return 0;
  }
};

// Branch-and-bound over relabelings, one new position at a time. In `test`
// mode it stops at the first relabeling whose code beats `best`; in `search`
// mode it replaces `best` by every better code it meets. Either way it counts
// relabelings reproducing `best` exactly (the automorphisms, when `best` is
// already canonical).
class CodeSearch {
 public:
  CodeSearch(int n, PairSource src, std::vector<std::uint8_t> best, bool search)
      : n_(n), src_(src), best_(std::move(best)), search_(search) {
    perm_.resize(static_cast<std::size_t>(n));
    cur_.assign(best_.size(), 0);
  }

  /// Returns false if (in test mode) a larger code exists.
  bool run() {
    go(0, 0, 0);
    return !beaten_;
  }

  const std::vector<std::uint8_t>& best() const { return best_; }
  const std::vector<int>& best_perm() const { return best_perm_; }
  std::uint64_t equal_count() const { return equal_; }

 private:
  // state: 0 equal so far, 1 already larger (only in search mode).
  void go(int k, VertexMask used, int state) {
    if (beaten_) return;
    if (k == n_) {
      if (state == 1) {
        best_ = cur_;
        best_perm_ = perm_;
        equal_ = 1;
        ++updates_;
      } else {
        if (best_perm_.empty()) best_perm_ = perm_;
        ++equal_;
      }
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (contains(used, v)) continue;
      int s = state;
      const std::size_t base = k == 0 ? 0 : pair_index(0, k);
      for (int i = 0; i < k; ++i) {
        const std::uint8_t x = src_.value(perm_[i], v);
        cur_[base + i] = x;
        if (s == 0) {
          const std::uint8_t b = best_[base + i];
          if (x > b) {
            if (!search_) {
              beaten_ = true;
              return;
            }
            s = 1;
          } else if (x < b) {
            s = -1;
            break;
          }
        }
      }
      if (s < 0) continue;
      perm_[k] = v;
      const std::uint64_t before = updates_;
      go(k + 1, used | bit(v), s);
      if (beaten_) return;
      // A new best shares this frame's prefix, so the prefix is now equal.
      if (updates_ != before) state = 0;
    }
  }

  int n_;
  PairSource src_;
  std::vector<std::uint8_t> best_;
  bool search_;
  std::vector<int> perm_;
  std::vector<int> best_perm_;
  std::vector<std::uint8_t> cur_;
  std::uint64_t equal_ = 0;
  std::uint64_t updates_ = 0;
  bool beaten_ = false;
};

inline std::vector<std::uint8_t> identity_code(int n, PairSource src) {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) c[pair_index(i, j)] = src.value(i, j);
  }
  return c;
}

inline bool is_canonical(int n, PairSource src) {
  CodeSearch s(n, src, identity_code(n, src), false);
  return s.run();
}

inline std::vector<std::uint8_t> max_code(int n, PairSource src, std::vector<int>* perm = nullptr,
                                          std::uint64_t* automorphisms = nullptr) {
  CodeSearch s(n, src, identity_code(n, src), true);
  s.run();
  if (perm) *perm = s.best_perm();
  if (automorphisms) *automorphisms = s.equal_count();
  return s.best();
}

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  detail::PairSource src{g.adjacency(), false};
  return CanonicalForm{g.vertex_count(), false, detail::max_code(g.vertex_count(), src)};
}

inline CanonicalForm canonical_form(const Digraph& d) {
  detail::PairSource src{d.out_adjacency(), true};
  return CanonicalForm{d.vertex_count(), true, detail::max_code(d.vertex_count(), src)};
}

/// Number of automorphisms.
inline std::uint64_t automorphism_count(const Digraph& d) {
  std::uint64_t a = 0;
  detail::max_code(d.vertex_count(), detail::PairSource{d.out_adjacency(), true}, nullptr, &a);
  return a;
}

inline std::uint64_t automorphism_count(const Graph& g) {
  std::uint64_t a = 0;
  detail::max_code(g.vertex_count(), detail::PairSource{g.adjacency(), false}, nullptr, &a);
  return a;
}

inline bool is_canonically_labelled(const Digraph& d) {
  return detail::is_canonical(d.vertex_count(), detail::PairSource{d.out_adjacency(), true});
}

inline bool is_canonically_labelled(const Graph& g) {
  return detail::is_canonical(g.vertex_count(), detail::PairSource{g.adjacency(), false});
}

/// The relabelling of d with the canonical code.
inline Digraph canonical_labelling(const Digraph& d) {
  std::vector<int> perm;
  detail::max_code(d.vertex_count(), detail::PairSource{d.out_adjacency(), true}, &perm);
  // perm[position] = old vertex; relabel wants new id of each old vertex.
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return relabel(d, inv);
}

inline Graph canonical_labelling(const Graph& g) {
  std::vector<int> perm;
  detail::max_code(g.vertex_count(), detail::PairSource{g.adjacency(), false}, &perm);
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return relabel(g, inv);
}

inline bool isomorphic(const Digraph& a, const Digraph& b) {
  return a.vertex_count() == b.vertex_count() && a.arc_count() == b.arc_count() &&
         canonical_form(a) == canonical_form(b);
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
         canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Orderly generation
//
// Canonical codes have canonical prefixes (the code of the first n-1
// vertices is a prefix of the whole code, and a larger prefix would give a
// larger whole code), so every class on n vertices arises exactly once by
// appending a vertex to a canonical object on n-1 vertices and keeping the
// result when it is canonical.

struct EnumerationLimits {
  int max_digraph_vertices = 6;
  int max_graph_vertices = 9;
};

namespace detail {

// Extends canonical adjacency `out` (n - 1 vertices) depth-first up to
// `target` vertices. The final-level filter runs before the canonicity test.
template <class Leaf>
void orderly_extend(std::vector<VertexMask>& out, int target, bool directed,
                    const std::function<bool(std::span<const VertexMask>)>& filter, Leaf&& leaf) {
  const int n = static_cast<int>(out.size());
  if (n == target) {
    leaf(std::span<const VertexMask>(out));
    return;
  }
  const int k = n;  // new vertex id
  out.push_back(0);
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= directed ? 3 : 2;
  std::vector<int> digit(static_cast<std::size_t>(k), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    // Decode connections of the new vertex to 0..k-1.
    std::uint64_t c = code;
    for (int i = 0; i < k; ++i) {
      digit[i] = static_cast<int>(c % (directed ? 3 : 2));
      c /= directed ? 3 : 2;
    }
    out[k] = 0;
    for (int i = 0; i < k; ++i) {
      out[i] &= ~bit(k);
      if (digit[i] == 1) {
        out[i] |= bit(k);
        if (!directed) out[k] |= bit(i);
      } else if (digit[i] == 2) {
        out[k] |= bit(i);
      }
    }
    const std::span<const VertexMask> view(out);
    if (k + 1 == target && filter && !filter(view)) continue;
    if (!is_canonical(k + 1, PairSource{view, directed})) continue;
    orderly_extend(out, target, directed, filter, leaf);
  }
  for (int i = 0; i < k; ++i) out[i] &= ~bit(k);
  out.pop_back();
}

inline std::vector<std::vector<VertexMask>> orderly_level(int level, bool directed) {
  std::vector<std::vector<VertexMask>> roots;
  std::vector<VertexMask> start;
  orderly_extend(start, level, directed, {}, [&](std::span<const VertexMask> adj) {
    roots.emplace_back(adj.begin(), adj.end());
  });
  return roots;
}

// Runs the orderly generation for `n` vertices, split into independent jobs
// by the canonical object on the first three vertices. Results are sorted by
// canonical code, so the output does not depend on `jobs`.
template <class Make>
auto orderly_generate(int n, bool directed, const std::function<bool(std::span<const VertexMask>)>& filter,
                      int jobs, Make make) {
  using Object = decltype(make(std::span<const VertexMask>{}));
  const int split = std::min(n, 3);
  const auto roots = orderly_level(split, directed);
  std::vector<std::vector<Object>> per_root(roots.size());
  auto work = [&](std::size_t r) {
    std::vector<VertexMask> adj = roots[r];
    if (split == n) {
      if (!filter || filter(adj)) per_root[r].push_back(make(adj));
      return;
    }
    orderly_extend(adj, n, directed, filter,
                   [&](std::span<const VertexMask> a) { per_root[r].push_back(make(a)); });
  };
  if (jobs <= 1 || roots.size() <= 1) {
    for (std::size_t r = 0; r < roots.size(); ++r) work(r);
  } else {
    std::size_t next = 0;
    std::mutex m;
    std::vector<std::thread> pool;
    const int workers = std::min<int>(jobs, static_cast<int>(roots.size()));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t r;
          {
            std::lock_guard<std::mutex> lock(m);
            if (next >= roots.size()) return;
            r = next++;
          }
          work(r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<Object> all;
  for (auto& v : per_root) {
    for (auto& o : v) all.push_back(std::move(o));
  }
  return all;
}

}  // namespace detail

using DigraphFilter = std::function<bool(const Digraph&)>;
using GraphFilter = std::function<bool(const Graph&)>;

/// One digraph (without digons) per isomorphism class on exactly n vertices
/// passing `filter`, in canonical labelling, sorted by canonical code.
inline std::vector<Digraph> enumerate_digraphs(int n, const DigraphFilter& filter = {}, int jobs = 1,
                                               EnumerationLimits limits = {}) {
  if (n < 0 || n > limits.max_digraph_vertices) {
    throw size_cap_exceeded("enumerate_digraphs: n must be between 0 and " +
                            std::to_string(limits.max_digraph_vertices));
  }
  std::function<bool(std::span<const VertexMask>)> f;
  if (filter) f = [&](std::span<const VertexMask> out) { return filter(Digraph::from_out_masks(out)); };
  auto out = detail::orderly_generate(n, true, f, jobs,
                                      [](std::span<const VertexMask> a) { return Digraph::from_out_masks(a); });
  std::sort(out.begin(), out.end(), [](const Digraph& a, const Digraph& b) {
    return detail::identity_code(a.vertex_count(), {a.out_adjacency(), true}) >
           detail::identity_code(b.vertex_count(), {b.out_adjacency(), true});
  });
  return out;
}

/// One graph per isomorphism class on exactly n vertices passing `filter`.
inline std::vector<Graph> enumerate_graphs(int n, const GraphFilter& filter = {}, int jobs = 1,
                                           EnumerationLimits limits = {}) {
  if (n < 0 || n > limits.max_graph_vertices) {
    throw size_cap_exceeded("enumerate_graphs: n must be between 0 and " +
                            std::to_string(limits.max_graph_vertices));
  }
  std::function<bool(std::span<const VertexMask>)> f;
  if (filter) f = [&](std::span<const VertexMask> adj) { return filter(Graph::from_masks(adj)); };
  auto out = detail::orderly_generate(n, false, f, jobs,
                                      [](std::span<const VertexMask> a) { return Graph::from_masks(a); });
  std::sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) {
    return detail::identity_code(a.vertex_count(), {a.adjacency(), false}) >
           detail::identity_code(b.vertex_count(), {b.adjacency(), false});
  });
  return out;
}

}  // namespace kdg
