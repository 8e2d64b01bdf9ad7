#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kdg/graph.hpp"
#include "kdg/graph_props.hpp"
#include "kdg/planarity.hpp"

namespace kdg {

// ---------------------------------------------------------------------------
// Parameters
//
// Every family is built on labelled vertices: the base cycle (or the cycle
// P + Q for conches and mussels) comes first, the extra vertices last. All
// positions below are 0-based.

/// Cycle 0..n-1 plus chords between cycle positions.
struct MobiusChainSpec {
  int n = 0;
  std::vector<Edge> chords;
  friend bool operator==(const MobiusChainSpec&, const MobiusChainSpec&) = default;
};

/// Cycle 0..n-1, wheel centres u = n and v = n + 1 (adjacent), with their
/// neighbours on the cycle.
struct DoubleWheelSpec {
  int n = 0;
  std::vector<int> u_neighbors;
  std::vector<int> v_neighbors;
  friend bool operator==(const DoubleWheelSpec&, const DoubleWheelSpec&) = default;
};

/// Paths P, Q between p1 and p2 of lengths a, b, and R between p2 and p3 of
/// length c. p3 is adjacent to the P-interior vertices at distances p3_on_p
/// from p1 and to the Q-interior vertices at distances p3_on_q from p1; p1 is
/// adjacent to the R-interior vertices at distances p1_on_r from p2.
///
/// Labels: p1 = 0, P interior 1..a-1, p2 = a, Q interior a+1..a+b-1 (walking
/// from p2), R interior a+b..a+b+c-2 (walking from p2), p3 = a+b+c-1.
struct ConchSpec {
  int a = 0, b = 0, c = 0;
  std::vector<int> p3_on_p;
  std::vector<int> p3_on_q;
  std::vector<int> p1_on_r;
  bool p1p2 = false;
  bool p1p3 = false;
  friend bool operator==(const ConchSpec&, const ConchSpec&) = default;
};

/// Three paths of lengths a, b, c >= 3 between the tips p1 and p2; the hinge
/// p3 is adjacent to every interior vertex. At most two of the optional
/// edges p1p2, p2p3, p1p3.
///
/// Labels: p1 = 0, P interior 1..a-1, p2 = a, Q interior a+1..a+b-1 (walking
/// from p2), R interior a+b..a+b+c-2 (walking from p1), p3 = a+b+c-1.
struct MusselSpec {
  int a = 0, b = 0, c = 0;
  bool p1p2 = false;
  bool p2p3 = false;
  bool p1p3 = false;
  friend bool operator==(const MusselSpec&, const MusselSpec&) = default;
};

/// Cycle c_0..c_{n-1}, u = n, v = n + 1, w = n + 2. u, v, c_0, c_{n-1} are
/// pairwise adjacent; w is adjacent to u, v, c_1..c_{n-2} and optionally to
/// c_0 and c_{n-1}. `k5` selects the special case K5 instead.
struct ScallopSpec {
  int n = 0;
  bool w_c_first = false;
  bool w_c_last = false;
  bool k5 = false;
  friend bool operator==(const ScallopSpec&, const ScallopSpec&) = default;
};

/// Cycle c_0..c_{n-1}, u = n, v = n + 1 adjacent; u sees c_{n-1}, c_0..c_j and
/// v sees c_j..c_{n-1}, c_0, for 1 <= j <= n-2.
struct ClamSpec {
  int n = 0;
  int j = 0;
  friend bool operator==(const ClamSpec&, const ClamSpec&) = default;
};

/// Cycle c_0..c_{n-1}, u = n, v = n + 1 adjacent; u sees c_0..c_j and v sees
/// c_j..c_{n-1} and c_i, for 1 <= i < j <= n-1.
struct WhelkSpec {
  int n = 0;
  int i = 0;
  int j = 0;
  friend bool operator==(const WhelkSpec&, const WhelkSpec&) = default;
};

using FamilySpec =
    std::variant<MobiusChainSpec, DoubleWheelSpec, ConchSpec, MusselSpec, ScallopSpec, ClamSpec, WhelkSpec>;

enum class Family { mobius_chain, double_wheel, conch, mussel, scallop, clam, whelk };

inline constexpr std::array<Family, 7> all_families = {Family::mobius_chain, Family::double_wheel,
                                                       Family::conch,        Family::mussel,
                                                       Family::scallop,      Family::clam,
                                                       Family::whelk};

inline Family family_of(const FamilySpec& s) { return static_cast<Family>(s.index()); }

inline std::string to_string(Family f) {
  switch (f) {
    case Family::mobius_chain: return "mobius-chain";
    case Family::double_wheel: return "double-wheel";
    case Family::conch: return "conch";
    case Family::mussel: return "mussel";
    case Family::scallop: return "scallop";
    case Family::clam: return "clam";
    case Family::whelk: return "whelk";
  }
  return "unknown";
}

inline std::optional<Family> family_from_string(const std::string& s) {
  for (Family f : all_families) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

/// A family membership proof: generate(spec) relabelled by vertex_map
/// (generated vertex -> host vertex) is exactly the host graph.
struct FamilyCertificate {
  FamilySpec spec;
  std::vector<int> vertex_map;

  Family family() const { return family_of(spec); }
};

// ---------------------------------------------------------------------------
// Chord geometry

/// Whether chords {a,b} and {c,d} of an n-cycle labelled in order cross.
inline bool chords_cross(Edge x, Edge y) {
  if (x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v) return false;
  const auto inside = [&](int p) { return x.u < p && p < x.v; };
  return inside(y.u) != inside(y.v);
}

inline bool chords_cross_or_share(Edge x, Edge y) {
  const bool share = x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v;
  return share || chords_cross(x, y);
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw precondition_error(msg);
}

inline void add_cycle(std::vector<Edge>& edges, int n) {
  for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
}

inline std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline Graph build(int n, std::vector<Edge> edges, const std::string& who) {
  for (Edge& e : edges) e = make_edge(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw precondition_error(who + ": parameters produce a repeated edge");
  }
  return Graph(n, std::move(edges));
}

inline Graph generate_mobius_chain(const MobiusChainSpec& s) {
  require(s.n >= 4, "mobius-chain: cycle length must be >= 4");
  std::vector<Edge> chords;
  for (const Edge& c : s.chords) {
    const Edge e = make_edge(c.u, c.v);
    require(e.u >= 0 && e.v < s.n && e.u != e.v, "mobius-chain: chord out of range");
    const bool cycle_edge = e.v - e.u == 1 || (e.u == 0 && e.v == s.n - 1);
    require(!cycle_edge, "mobius-chain: chord joins consecutive cycle vertices");
    chords.push_back(e);
  }
  std::sort(chords.begin(), chords.end());
  require(std::adjacent_find(chords.begin(), chords.end()) == chords.end(), "mobius-chain: repeated chord");
  for (std::size_t x = 0; x < chords.size(); ++x) {
    for (std::size_t y = x + 1; y < chords.size(); ++y) {
      require(chords_cross_or_share(chords[x], chords[y]),
              "mobius-chain: two chords neither cross nor share an end");
    }
  }
  VertexMask covered = 0;
  for (const Edge& e : chords) covered |= bit(e.u) | bit(e.v);
  require(covered == first_n(s.n), "mobius-chain: some cycle vertex is on no chord");
  require(!has_cycle(s.n, chords), "mobius-chain: the chords contain a cycle");
  std::vector<Edge> edges;
  add_cycle(edges, s.n);
  edges.insert(edges.end(), chords.begin(), chords.end());
  return build(s.n, std::move(edges), "mobius-chain");
}

inline Graph generate_double_wheel(const DoubleWheelSpec& s) {
  require(s.n >= 3, "double-wheel: cycle length must be >= 3");
  const auto un = sorted_unique(s.u_neighbors);
  const auto vn = sorted_unique(s.v_neighbors);
  require(un.size() == s.u_neighbors.size() && vn.size() == s.v_neighbors.size(),
          "double-wheel: repeated neighbour");
  const int u = s.n;
  const int v = s.n + 1;
  std::vector<Edge> edges;
  add_cycle(edges, s.n);
  edges.push_back(Edge{u, v});
  int common = 0;
  for (int x : un) {
    require(x >= 0 && x < s.n, "double-wheel: neighbour out of range");
    edges.push_back(Edge{x, u});
  }
  for (int x : vn) {
    require(x >= 0 && x < s.n, "double-wheel: neighbour out of range");
    edges.push_back(Edge{x, v});
    if (std::binary_search(un.begin(), un.end(), x)) ++common;
  }
  require(common <= 1, "double-wheel: more than one common neighbour of the centres");
  Graph g = build(s.n + 2, std::move(edges), "double-wheel");
  require(connectivity_level(g) == 3, "double-wheel: graph is not 3-connected");
  require(!is_planar(g), "double-wheel: graph is planar");
  return g;
}

inline Graph generate_conch(const ConchSpec& s) {
  require(s.a >= 3 && s.b >= 3 && s.c >= 3, "conch: every path needs two interior neighbours, so length >= 3");
  const auto pp = sorted_unique(s.p3_on_p);
  const auto pq = sorted_unique(s.p3_on_q);
  const auto pr = sorted_unique(s.p1_on_r);
  require(pp.size() >= 2 && pq.size() >= 2 && pr.size() >= 2, "conch: need at least two neighbours on each path");
  require(pp.size() == s.p3_on_p.size() && pq.size() == s.p3_on_q.size() && pr.size() == s.p1_on_r.size(),
          "conch: repeated neighbour");
  const int a = s.a, b = s.b, c = s.c;
  const int p1 = 0, p2 = a, p3 = a + b + c - 1;
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) edges.push_back(Edge{i, i + 1});
  // Q from p2: a, a+1, ..., a+b-1, then back to p1.
  edges.push_back(Edge{p2, a + 1});
  for (int t = 1; t < b - 1; ++t) edges.push_back(Edge{a + t, a + t + 1});
  edges.push_back(Edge{p1, a + b - 1});
  // R from p2: a, a+b, ..., a+b+c-2, p3.
  edges.push_back(Edge{p2, a + b});
  for (int t = 1; t < c - 1; ++t) edges.push_back(Edge{a + b - 1 + t, a + b + t});
  edges.push_back(Edge{a + b + c - 2, p3});
  for (int d : pp) {
    require(d >= 1 && d <= a - 1, "conch: p3 neighbour not interior to P");
    edges.push_back(Edge{d, p3});
  }
  for (int d : pq) {
    require(d >= 1 && d <= b - 1, "conch: p3 neighbour not interior to Q");
    edges.push_back(Edge{a + (b - d), p3});  // distance d from p1 = distance b-d from p2
  }
  for (int d : pr) {
    require(d >= 1 && d <= c - 1, "conch: p1 neighbour not interior to R");
    edges.push_back(Edge{p1, a + b - 1 + d});
  }
  if (s.p1p2) edges.push_back(Edge{p1, p2});
  if (s.p1p3) edges.push_back(Edge{p1, p3});
  Graph g = build(a + b + c, std::move(edges), "conch");
  require(connectivity_level(g) == 3, "conch: graph is not 3-connected");
  return g;
}

inline Graph generate_mussel(const MusselSpec& s) {
  require(s.a >= 3 && s.b >= 3 && s.c >= 3, "mussel: path lengths must be >= 3");
  require(static_cast<int>(s.p1p2) + s.p2p3 + s.p1p3 <= 2, "mussel: at most two of p1p2, p2p3, p1p3");
  const int a = s.a, b = s.b, c = s.c;
  const int p1 = 0, p2 = a, p3 = a + b + c - 1;
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i) edges.push_back(Edge{i, i + 1});
  edges.push_back(Edge{p2, a + 1});
  for (int t = 1; t < b - 1; ++t) edges.push_back(Edge{a + t, a + t + 1});
  edges.push_back(Edge{p1, a + b - 1});
  edges.push_back(Edge{p1, a + b});
  for (int t = 1; t < c - 1; ++t) edges.push_back(Edge{a + b - 1 + t, a + b + t});
  edges.push_back(Edge{a + b + c - 2, p2});
  for (int x = 1; x < a + b + c - 1; ++x) {
    if (x != p2) edges.push_back(Edge{x, p3});
  }
  if (s.p1p2) edges.push_back(Edge{p1, p2});
  if (s.p2p3) edges.push_back(Edge{p2, p3});
  if (s.p1p3) edges.push_back(Edge{p1, p3});
  Graph g = build(a + b + c, std::move(edges), "mussel");
  require(connectivity_level(g) == 3, "mussel: graph is not 3-connected");
  return g;
}

inline Graph generate_scallop(const ScallopSpec& s) {
  if (s.k5) return complete_graph(5);
  require(s.n >= 3, "scallop: cycle length must be >= 3");
  const int n = s.n, u = n, v = n + 1, w = n + 2;
  std::vector<Edge> edges;
  add_cycle(edges, n);
  for (Edge e : {Edge{u, v}, Edge{0, u}, Edge{n - 1, u}, Edge{0, v}, Edge{n - 1, v}, Edge{u, w}, Edge{v, w}}) {
    edges.push_back(e);
  }
  for (int x = 1; x <= n - 2; ++x) edges.push_back(Edge{x, w});
  if (s.w_c_first) edges.push_back(Edge{0, w});
  if (s.w_c_last) edges.push_back(Edge{n - 1, w});
  Graph g = build(n + 3, std::move(edges), "scallop");
  require(connectivity_level(g) == 3, "scallop: graph is not 3-connected");
  return g;
}

inline Graph generate_clam(const ClamSpec& s) {
  require(s.n >= 3, "clam: cycle length must be >= 3");
  require(s.j >= 1 && s.j <= s.n - 2, "clam: need 1 <= j <= n-2");
  const int n = s.n, u = n, v = n + 1;
  std::vector<Edge> edges;
  add_cycle(edges, n);
  edges.push_back(Edge{u, v});
  edges.push_back(Edge{n - 1, u});
  for (int x = 0; x <= s.j; ++x) edges.push_back(Edge{x, u});
  for (int x = s.j; x <= n - 1; ++x) edges.push_back(Edge{x, v});
  edges.push_back(Edge{0, v});
  Graph g = build(n + 2, std::move(edges), "clam");
  require(connectivity_level(g) == 3, "clam: graph is not 3-connected");
  return g;
}

inline Graph generate_whelk(const WhelkSpec& s) {
  require(s.n >= 3, "whelk: cycle length must be >= 3");
  require(s.i >= 1 && s.i < s.j && s.j <= s.n - 1, "whelk: need 1 <= i < j <= n-1");
  const int n = s.n, u = n, v = n + 1;
  std::vector<Edge> edges;
  add_cycle(edges, n);
  edges.push_back(Edge{u, v});
  for (int x = 0; x <= s.j; ++x) edges.push_back(Edge{x, u});
  for (int x = s.j; x <= n - 1; ++x) edges.push_back(Edge{x, v});
  edges.push_back(Edge{s.i, v});
  return build(n + 2, std::move(edges), "whelk");
}

}  // namespace detail

/// The graph described by the parameters. Throws precondition_error when
/// they violate the family definition.
inline Graph generate(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> Graph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MobiusChainSpec>) return detail::generate_mobius_chain(s);
        else if constexpr (std::is_same_v<T, DoubleWheelSpec>) return detail::generate_double_wheel(s);
        else if constexpr (std::is_same_v<T, ConchSpec>) return detail::generate_conch(s);
        else if constexpr (std::is_same_v<T, MusselSpec>) return detail::generate_mussel(s);
        else if constexpr (std::is_same_v<T, ScallopSpec>) return detail::generate_scallop(s);
        else if constexpr (std::is_same_v<T, ClamSpec>) return detail::generate_clam(s);
        else return detail::generate_whelk(s);
      },
      spec);
}

/// The k-rung Moebius ladder as a chain: 2k-cycle with the k long diagonals.
inline MobiusChainSpec mobius_ladder_spec(int k) {
  MobiusChainSpec s{2 * k, {}};
  for (int v = 0; v < k; ++v) s.chords.push_back(Edge{v, v + k});
  return s;
}

// U8: vertex i is p_{i+1} of the left drawing; W8: vertex i is b_{i+1} of
// the right drawing.
inline Graph generate_U8() {
  return Graph::from_pairs(8, {{0, 6}, {0, 4}, {1, 5}, {1, 7}, {2, 4}, {2, 5}, {2, 6},
                               {2, 7}, {2, 3}, {4, 5}, {6, 7}, {0, 3}, {1, 3}});
}

inline Graph generate_W8() {
  return Graph::from_pairs(8, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {2, 5}, {3, 6},
                               {4, 7}, {5, 7}, {6, 7}, {0, 5}, {0, 6}, {0, 4}});
}

inline Graph generate_V8() { return mobius_ladder(4); }

// ---------------------------------------------------------------------------
// Parameter sweeps

namespace detail {

// Every chord set of an n-cycle whose chords pairwise cross or share an end,
// cover the cycle and form a forest.
inline std::vector<MobiusChainSpec> all_chord_sets(int n) {
  std::vector<Edge> candidates;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      candidates.push_back(Edge{a, b});
    }
  }
  std::vector<MobiusChainSpec> out;
  std::vector<Edge> chosen;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == candidates.size()) {
      VertexMask covered = 0;
      for (const Edge& e : chosen) covered |= bit(e.u) | bit(e.v);
      if (covered == first_n(n) && !has_cycle(n, chosen)) out.push_back(MobiusChainSpec{n, chosen});
      return;
    }
    go(k + 1);
    const Edge e = candidates[k];
    for (const Edge& f : chosen) {
      if (!chords_cross_or_share(e, f)) return;
    }
    chosen.push_back(e);
    go(k + 1);
    chosen.pop_back();
  };
  go(0);
  return out;
}

inline std::vector<std::vector<int>> subsets_at_least_two(int lo, int hi) {
  std::vector<std::vector<int>> out;
  const int width = hi - lo + 1;
  for (VertexMask m = 0; m < (VertexMask{1} << width); ++m) {
    if (popcount(m) < 2) continue;
    std::vector<int> s;
    for_each_bit(m, [&](int x) { s.push_back(lo + x); });
    out.push_back(std::move(s));
  }
  return out;
}

template <class T>
void keep_valid(std::vector<FamilySpec>& out, T spec) {
  try {
    (void)generate(spec);
    out.push_back(std::move(spec));
  } catch (const precondition_error&) {
  }
}

}  // namespace detail

/// The fixed parameter sweep used for round-trip testing. Parameter choices
/// that violate a family definition are skipped.
///   Moebius chain: every chord set on cycles of length 6..8 giving a
///     nonplanar graph, plus the ladders with 3..8 rungs.
///   Double wheel: every attachment of the centres to cycles of length 4..6.
///   Conch: path lengths 3..4, every neighbour set, every optional edge.
///   Mussel: path lengths 3..5, every allowed optional edge set.
///   Scallop: K5 and n = 3..9 with every optional edge.
///   Clam: n = 3..10, every j. Whelk: n = 3..10, every i, j.
inline std::vector<FamilySpec> parameter_sweep(Family f) {
  std::vector<FamilySpec> out;
  switch (f) {
    case Family::mobius_chain:
      for (int n = 6; n <= 8; ++n) {
        for (auto& s : detail::all_chord_sets(n)) {
          if (!is_planar(detail::generate_mobius_chain(s))) out.push_back(std::move(s));
        }
      }
      for (int k = 3; k <= 8; ++k) out.push_back(mobius_ladder_spec(k));
      break;
    case Family::double_wheel:
      for (int n = 4; n <= 6; ++n) {
        // Each cycle vertex sees u only, v only, neither, or both.
        int total = 1;
        for (int i = 0; i < n; ++i) total *= 4;
        for (int code = 0; code < total; ++code) {
          DoubleWheelSpec s{n, {}, {}};
          int c = code;
          for (int i = 0; i < n; ++i, c /= 4) {
            if (c % 4 == 1 || c % 4 == 3) s.u_neighbors.push_back(i);
            if (c % 4 == 2 || c % 4 == 3) s.v_neighbors.push_back(i);
          }
          detail::keep_valid(out, std::move(s));
        }
      }
      break;
    case Family::conch:
      for (int a = 3; a <= 4; ++a) {
        for (int b = 3; b <= 4; ++b) {
          for (int c = 3; c <= 4; ++c) {
            for (const auto& sp : detail::subsets_at_least_two(1, a - 1)) {
              for (const auto& sq : detail::subsets_at_least_two(1, b - 1)) {
                for (const auto& sr : detail::subsets_at_least_two(1, c - 1)) {
                  for (int opt = 0; opt < 4; ++opt) {
                    detail::keep_valid(out, ConchSpec{a, b, c, sp, sq, sr, (opt & 1) != 0, (opt & 2) != 0});
                  }
                }
              }
            }
          }
        }
      }
      break;
    case Family::mussel:
      for (int a = 3; a <= 5; ++a) {
        for (int b = a; b <= 5; ++b) {
          for (int c = b; c <= 5; ++c) {
            for (int opt = 0; opt < 8; ++opt) {
              if (opt == 7) continue;
              detail::keep_valid(out, MusselSpec{a, b, c, (opt & 1) != 0, (opt & 2) != 0, (opt & 4) != 0});
            }
          }
        }
      }
      break;
    case Family::scallop:
      out.push_back(ScallopSpec{0, false, false, true});
      for (int n = 3; n <= 9; ++n) {
        for (int opt = 0; opt < 4; ++opt) {
          detail::keep_valid(out, ScallopSpec{n, (opt & 1) != 0, (opt & 2) != 0, false});
        }
      }
      break;
    case Family::clam:
      for (int n = 3; n <= 10; ++n) {
        for (int j = 1; j <= n - 2; ++j) detail::keep_valid(out, ClamSpec{n, j});
      }
      break;
    case Family::whelk:
      for (int n = 3; n <= 10; ++n) {
        for (int j = 2; j <= n - 1; ++j) {
          for (int i = 1; i < j; ++i) detail::keep_valid(out, WhelkSpec{n, i, j});
        }
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Almost-planar graphs

/// 3-connected, nonplanar, and the critical edges (whose deletion keeps the
/// graph nonplanar) form a forest.
inline bool is_almost_planar(const Graph& g) {
  if (is_planar(g)) return false;
  if (connectivity_level(g) < 3) return false;
  return !has_cycle(g.vertex_count(), critical_edges(g, Criterion::nonplanar).edges());
}

inline bool verify_certificate(const Graph& g, const FamilyCertificate& cert) {
  Graph h;
  try {
    h = generate(cert.spec);
  } catch (const precondition_error&) {
    return false;
  }
  if (h.vertex_count() != g.vertex_count()) return false;
  if (cert.vertex_map.size() != static_cast<std::size_t>(h.vertex_count())) return false;
  VertexMask seen = 0;
  for (int x : cert.vertex_map) {
    if (x < 0 || x >= g.vertex_count() || contains(seen, x)) return false;
    seen |= bit(x);
  }
  return relabel(h, cert.vertex_map) == g;
}

// ---------------------------------------------------------------------------
// Recognition

struct RecognizeLimits {
  int max_vertices = 40;
  long long max_hamilton_cycles = 2'000'000;
};

namespace detail {

inline std::optional<FamilyCertificate> confirm(const Graph& g, FamilySpec spec, std::vector<int> map) {
  FamilyCertificate cert{std::move(spec), std::move(map)};
  if (verify_certificate(g, cert)) return cert;
  return std::nullopt;
}

// If the vertices outside `removed` induce a single cycle covering all of
// them, returns it starting at its lowest vertex, heading to the smaller of
// that vertex's two cycle neighbours.
inline std::optional<std::vector<int>> remaining_cycle(const Graph& g, VertexMask removed) {
  const VertexMask rest = g.vertices() & ~removed;
  const int size = popcount(rest);
  if (size < 3) return std::nullopt;
  bool ok = true;
  for_each_bit(rest, [&](int v) {
    if (popcount(g.neighbors(v) & rest) != 2) ok = false;
  });
  if (!ok) return std::nullopt;
  std::vector<int> order{lowest(rest)};
  int prev = -1;
  int cur = order.front();
  for (;;) {
    VertexMask next = g.neighbors(cur) & rest;
    if (prev >= 0) next &= ~bit(prev);
    const int nx = lowest(next);
    if (nx == order.front()) break;
    order.push_back(nx);
    prev = cur;
    cur = nx;
    if (static_cast<int>(order.size()) > size) return std::nullopt;
  }
  if (static_cast<int>(order.size()) != size) return std::nullopt;
  return order;
}

// The 2n labellings of a cycle: rotations, each in both directions.
inline std::vector<std::vector<int>> cycle_labellings(const std::vector<int>& cyc) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(cyc.size());
  for (int dir = 0; dir < 2; ++dir) {
    for (int s = 0; s < n; ++s) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) c[t] = dir == 0 ? cyc[(s + t) % n] : cyc[((s - t) % n + n) % n];
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline std::vector<int> positions_of(const std::vector<int>& labelling, VertexMask targets) {
  std::vector<int> out;
  for (std::size_t t = 0; t < labelling.size(); ++t) {
    if (contains(targets, labelling[t])) out.push_back(static_cast<int>(t));
  }
  return out;
}

inline std::optional<FamilyCertificate> recognize_mobius_chain(const Graph& g, const RecognizeLimits& lim) {
  const int n = g.vertex_count();
  if (n < 4 || g.edge_count() > 2 * n - 1) return std::nullopt;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) < 3) return std::nullopt;
  }
  if (is_planar(g)) return std::nullopt;
  std::optional<FamilyCertificate> found;
  long long visited = 0;
  std::vector<int> path{0};
  // Depth-first Hamilton cycle search from vertex 0.
  std::function<void(VertexMask)> dfs = [&](VertexMask used) {
    if (found) return;
    if (++visited > lim.max_hamilton_cycles) {
      throw size_cap_exceeded("mobius-chain recognition: Hamilton cycle search exceeded its budget");
    }
    const int cur = path.back();
    if (static_cast<int>(path.size()) == n) {
      if (!g.has_edge(cur, 0) || path[1] > path.back()) return;
      std::vector<int> pos(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) pos[path[t]] = t;
      MobiusChainSpec spec{n, {}};
      for (const Edge& e : g.edges()) {
        const int d = std::abs(pos[e.u] - pos[e.v]);
        if (d == 1 || d == n - 1) continue;
        spec.chords.push_back(make_edge(pos[e.u], pos[e.v]));
      }
      std::sort(spec.chords.begin(), spec.chords.end());
      for (std::size_t x = 0; x < spec.chords.size(); ++x) {
        for (std::size_t y = x + 1; y < spec.chords.size(); ++y) {
          if (!chords_cross_or_share(spec.chords[x], spec.chords[y])) return;
        }
      }
      if (has_cycle(n, spec.chords)) return;
      found = confirm(g, std::move(spec), path);
      return;
    }
    const VertexMask next = g.neighbors(cur) & ~used;
    for_each_bit(next, [&](int w) {
      if (found) return;
      path.push_back(w);
      dfs(used | bit(w));
      path.pop_back();
    });
  };
  dfs(bit(0));
  return found;
}

// Shared by the families built from a cycle plus two adjacent vertices u, v.
template <class Try>
std::optional<FamilyCertificate> for_each_centre_pair(const Graph& g, Try&& attempt) {
  for (const Edge& e : g.edges()) {
    const auto cyc = remaining_cycle(g, bit(e.u) | bit(e.v));
    if (!cyc) continue;
    for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (auto c = attempt(*cyc, u, v)) return c;
    }
  }
  return std::nullopt;
}

inline std::optional<FamilyCertificate> recognize_double_wheel(const Graph& g) {
  if (g.vertex_count() < 5) return std::nullopt;
  if (connectivity_level(g) < 3 || is_planar(g)) return std::nullopt;
  return for_each_centre_pair(g, [&](const std::vector<int>& cyc, int u, int v) -> std::optional<FamilyCertificate> {
    if (u > v) return std::nullopt;  // the pair is symmetric
    const int n = static_cast<int>(cyc.size());
    DoubleWheelSpec spec{n, positions_of(cyc, g.neighbors(u)), positions_of(cyc, g.neighbors(v))};
    std::vector<int> map = cyc;
    map.push_back(u);
    map.push_back(v);
    return confirm(g, std::move(spec), std::move(map));
  });
}

inline std::optional<FamilyCertificate> recognize_clam(const Graph& g) {
  return for_each_centre_pair(g, [&](const std::vector<int>& cyc, int u, int v) -> std::optional<FamilyCertificate> {
    const int n = static_cast<int>(cyc.size());
    for (const auto& lab : cycle_labellings(cyc)) {
      const auto un = positions_of(lab, g.neighbors(u));
      // u sees c_0..c_j and c_{n-1}.
      if (un.size() < 3 || un.back() != n - 1) continue;
      const int j = static_cast<int>(un.size()) - 2;
      if (un[static_cast<std::size_t>(j)] != j || j < 1 || j > n - 2) continue;
      std::vector<int> map = lab;
      map.push_back(u);
      map.push_back(v);
      if (auto c = confirm(g, ClamSpec{n, j}, std::move(map))) return c;
    }
    return std::nullopt;
  });
}

inline std::optional<FamilyCertificate> recognize_whelk(const Graph& g) {
  return for_each_centre_pair(g, [&](const std::vector<int>& cyc, int u, int v) -> std::optional<FamilyCertificate> {
    const int n = static_cast<int>(cyc.size());
    for (const auto& lab : cycle_labellings(cyc)) {
      const auto un = positions_of(lab, g.neighbors(u));
      const auto vn = positions_of(lab, g.neighbors(v));
      // u sees exactly c_0..c_j.
      if (un.empty() || un.front() != 0) continue;
      const int j = un.back();
      if (static_cast<int>(un.size()) != j + 1 || j < 2) continue;
      // v sees c_j..c_{n-1} and one more c_i with 1 <= i < j.
      if (vn.empty()) continue;
      const int i = vn.front();
      if (i < 1 || i >= j) continue;
      std::vector<int> map = lab;
      map.push_back(u);
      map.push_back(v);
      if (auto c = confirm(g, WhelkSpec{n, i, j}, std::move(map))) return c;
    }
    return std::nullopt;
  });
}

inline std::optional<FamilyCertificate> recognize_scallop(const Graph& g) {
  if (g.vertex_count() == 5 && g.edge_count() == 10) {
    return FamilyCertificate{ScallopSpec{0, false, false, true}, {0, 1, 2, 3, 4}};
  }
  const int total = g.vertex_count();
  if (total < 6) return std::nullopt;
  for (const Edge& e : g.edges()) {
    {
      const int u = e.u;
      const int v = e.v;
      if (g.degree(u) != 4 || g.degree(v) != 4) continue;
      const VertexMask common = g.neighbors(u) & g.neighbors(v);
      std::optional<FamilyCertificate> hit;
      for_each_bit(common, [&](int w) {
        if (hit) return;
        const auto cyc = remaining_cycle(g, bit(u) | bit(v) | bit(w));
        if (!cyc) return;
        const int n = static_cast<int>(cyc->size());
        for (const auto& lab : cycle_labellings(*cyc)) {
          // c_0 and c_{n-1} are the cycle neighbours of u.
          if (!g.has_edge(u, lab.front()) || !g.has_edge(u, lab.back())) continue;
          ScallopSpec spec{n, g.has_edge(w, lab.front()), g.has_edge(w, lab.back()), false};
          std::vector<int> map = lab;
          map.push_back(u);
          map.push_back(v);
          map.push_back(w);
          hit = confirm(g, spec, std::move(map));
          if (hit) return;
        }
      });
      if (hit) return hit;
    }
  }
  return std::nullopt;
}

// Components of g minus {p1, p2, p3}, each an induced path with at least two
// vertices, listed end to end.
inline std::optional<std::vector<std::vector<int>>> three_paths(const Graph& g, VertexMask removed) {
  const VertexMask rest = g.vertices() & ~removed;
  const auto comps = components(g, rest);
  if (comps.size() != 3) return std::nullopt;
  std::vector<std::vector<int>> paths;
  for (VertexMask c : comps) {
    const int size = popcount(c);
    if (size < 2) return std::nullopt;
    int ends = 0;
    int start = -1;
    int edges2 = 0;
    bool ok = true;
    for_each_bit(c, [&](int x) {
      const int d = popcount(g.neighbors(x) & c);
      edges2 += d;
      if (d == 1) {
        ++ends;
        if (start < 0) start = x;
      } else if (d != 2) {
        ok = false;
      }
    });
    if (!ok || ends != 2 || edges2 != 2 * (size - 1)) return std::nullopt;
    std::vector<int> p{start};
    int prev = -1;
    while (static_cast<int>(p.size()) < size) {
      VertexMask next = g.neighbors(p.back()) & c;
      if (prev >= 0) next &= ~bit(prev);
      prev = p.back();
      p.push_back(lowest(next));
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

inline std::vector<int> distances_of(const std::vector<int>& walk, VertexMask targets) {
  std::vector<int> out;
  for (std::size_t t = 0; t < walk.size(); ++t) {
    if (contains(targets, walk[t])) out.push_back(static_cast<int>(t) + 1);
  }
  return out;
}

inline std::optional<FamilyCertificate> recognize_mussel(const Graph& g) {
  const int total = g.vertex_count();
  if (total < 9) return std::nullopt;
  for (int p3 = 0; p3 < total; ++p3) {
    if (g.degree(p3) < 6) continue;
    for (int p1 = 0; p1 < total; ++p1) {
      for (int p2 = p1 + 1; p2 < total; ++p2) {
        if (p1 == p3 || p2 == p3) continue;
        auto paths = three_paths(g, bit(p1) | bit(p2) | bit(p3));
        if (!paths) continue;
        // Orient each interior from p1 to p2.
        bool ok = true;
        for (auto& p : *paths) {
          if (g.has_edge(p1, p.back()) && !g.has_edge(p1, p.front())) std::reverse(p.begin(), p.end());
          if (!g.has_edge(p1, p.front()) || !g.has_edge(p2, p.back())) ok = false;
        }
        if (!ok) continue;
        std::sort(paths->begin(), paths->end(),
                  [](const auto& x, const auto& y) { return x.size() < y.size(); });
        const auto& P = (*paths)[0];
        const auto& Q = (*paths)[1];
        const auto& R = (*paths)[2];
        MusselSpec spec{static_cast<int>(P.size()) + 1, static_cast<int>(Q.size()) + 1,
                        static_cast<int>(R.size()) + 1, g.has_edge(p1, p2), g.has_edge(p2, p3),
                        g.has_edge(p1, p3)};
        std::vector<int> map{p1};
        map.insert(map.end(), P.begin(), P.end());
        map.push_back(p2);
        map.insert(map.end(), Q.rbegin(), Q.rend());
        map.insert(map.end(), R.begin(), R.end());
        map.push_back(p3);
        if (auto c = confirm(g, spec, std::move(map))) return c;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<FamilyCertificate> recognize_conch(const Graph& g) {
  const int total = g.vertex_count();
  if (total < 9) return std::nullopt;
  for (int p1 = 0; p1 < total; ++p1) {
    for (int p2 = 0; p2 < total; ++p2) {
      for (int p3 = 0; p3 < total; ++p3) {
        if (p1 == p2 || p2 == p3 || p1 == p3) continue;
        auto paths = three_paths(g, bit(p1) | bit(p2) | bit(p3));
        if (!paths) continue;
        for (int r = 0; r < 3; ++r) {
          std::vector<int> R = (*paths)[static_cast<std::size_t>(r)];
          std::vector<int> P = (*paths)[static_cast<std::size_t>((r + 1) % 3)];
          std::vector<int> Q = (*paths)[static_cast<std::size_t>((r + 2) % 3)];
          // P and Q walk from p1 to p2; R walks from p2 to p3.
          auto orient = [&](std::vector<int>& w, int from) {
            if (g.has_edge(from, w.back()) && !g.has_edge(from, w.front())) std::reverse(w.begin(), w.end());
          };
          orient(P, p1);
          orient(Q, p1);
          orient(R, p2);
          for (int swap = 0; swap < 2; ++swap) {
            if (swap) std::swap(P, Q);
            ConchSpec spec;
            spec.a = static_cast<int>(P.size()) + 1;
            spec.b = static_cast<int>(Q.size()) + 1;
            spec.c = static_cast<int>(R.size()) + 1;
            spec.p3_on_p = distances_of(P, g.neighbors(p3));
            spec.p3_on_q = distances_of(Q, g.neighbors(p3));
            spec.p1_on_r = distances_of(R, g.neighbors(p1));
            spec.p1p2 = g.has_edge(p1, p2);
            spec.p1p3 = g.has_edge(p1, p3);
            std::vector<int> map{p1};
            map.insert(map.end(), P.begin(), P.end());
            map.push_back(p2);
            map.insert(map.end(), Q.rbegin(), Q.rend());
            map.insert(map.end(), R.begin(), R.end());
            map.push_back(p3);
            if (auto c = confirm(g, std::move(spec), std::move(map))) return c;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Whole-graph recognition of one family. The returned certificate always
/// passes verify_certificate.
inline std::optional<FamilyCertificate> recognize(const Graph& g, Family f, RecognizeLimits lim = {}) {
  if (g.vertex_count() > lim.max_vertices) {
    throw size_cap_exceeded("recognize: graph has " + std::to_string(g.vertex_count()) +
                            " vertices, cap is " + std::to_string(lim.max_vertices));
  }
  switch (f) {
    case Family::mobius_chain: return detail::recognize_mobius_chain(g, lim);
    case Family::double_wheel: return detail::recognize_double_wheel(g);
    case Family::conch: return detail::recognize_conch(g);
    case Family::mussel: return detail::recognize_mussel(g);
    case Family::scallop: return detail::recognize_scallop(g);
    case Family::clam: return detail::recognize_clam(g);
    case Family::whelk: return detail::recognize_whelk(g);
  }
  return std::nullopt;
}

/// Certificates for an almost-planar graph, trying K5 (as a scallop), then
/// Moebius chain, double wheel, conch, mussel, scallop, clam, whelk. Returns
/// the first hit, or every hit when `all_hits` is set. Throws
/// theorem_violation if nothing fires.
inline std::vector<FamilyCertificate> classify_almost_planar(const Graph& g, bool all_hits = false,
                                                            RecognizeLimits lim = {}) {
  if (!is_almost_planar(g)) throw precondition_error("classify_almost_planar: graph is not almost-planar");
  std::vector<FamilyCertificate> hits;
  if (g.vertex_count() == 5) {
    if (auto c = recognize(g, Family::scallop, lim)) {
      hits.push_back(std::move(*c));
      if (!all_hits) return hits;
    }
  }
  for (Family f : {Family::mobius_chain, Family::double_wheel, Family::conch, Family::mussel,
                   Family::scallop, Family::clam, Family::whelk}) {
    if (f == Family::scallop && g.vertex_count() == 5) continue;
    if (auto c = recognize(g, f, lim)) {
      hits.push_back(std::move(*c));
      if (!all_hits) return hits;
    }
  }
  if (hits.empty()) throw theorem_violation("classification gap: almost-planar graph in none of the seven families");
  return hits;
}

}  // namespace kdg
