#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kdg/digraph.hpp"
#include "kdg/directed_subdivision.hpp"
#include "kdg/graph_props.hpp"

namespace kdg {

// ---------------------------------------------------------------------------
// Generators

namespace detail {

// Appends a directed path from a to b with `length` arcs through new vertices.
inline void add_directed_path(std::vector<Arc>& arcs, int& next, int a, int b, int length) {
  int prev = a;
  for (int i = 0; i < length - 1; ++i) {
    arcs.push_back(Arc{prev, next});
    prev = next++;
  }
  arcs.push_back(Arc{prev, b});
}

}  // namespace detail

/// Hubs 0 and 1; paths of l1 and l2 arcs from 0 to 1 and one of l3 arcs back.
inline Digraph make_strong_theta(int l1, int l2, int l3) {
  if (l1 < 2 || l2 < 2 || l3 < 2) throw precondition_error("make_strong_theta: lengths must be >= 2");
  std::vector<Arc> arcs;
  int next = 2;
  detail::add_directed_path(arcs, next, 0, 1, l1);
  detail::add_directed_path(arcs, next, 0, 1, l2);
  detail::add_directed_path(arcs, next, 1, 0, l3);
  return Digraph(next, std::move(arcs));
}

/// Hubs 0 and 1; three paths from 0 to 1 and the single arc 1 -> 0.
inline Digraph make_reinforced_theta(int l1, int l2, int l3) {
  if (l1 < 2 || l2 < 2 || l3 < 2) {
    throw precondition_error("make_reinforced_theta: lengths must be >= 2");
  }
  std::vector<Arc> arcs;
  int next = 2;
  detail::add_directed_path(arcs, next, 0, 1, l1);
  detail::add_directed_path(arcs, next, 0, 1, l2);
  detail::add_directed_path(arcs, next, 0, 1, l3);
  arcs.push_back(Arc{1, 0});
  return Digraph(next, std::move(arcs));
}

/// The strong tournament on four vertices: Hamilton cycle 0-1-2-3 plus 0->2, 1->3.
inline Digraph make_strong_directed_K4() {
  return Digraph::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
}

/// Rim 0..two_k-1 with arcs alternating in direction (even vertices are rim
/// sources), hub two_k; every hub triangle is a directed triangle.
inline Digraph make_diwheel(int two_k) {
  if (two_k < 4 || two_k % 2 != 0) throw precondition_error("make_diwheel: rim length must be even and >= 4");
  std::vector<Arc> arcs;
  const int hub = two_k;
  for (int i = 0; i < two_k; ++i) {
    const int j = (i + 1) % two_k;
    arcs.push_back(i % 2 == 0 ? Arc{i, j} : Arc{j, i});
    arcs.push_back(i % 2 == 0 ? Arc{hub, i} : Arc{i, hub});
  }
  return Digraph(two_k + 1, std::move(arcs));
}

// ---------------------------------------------------------------------------
// Detection

enum class ObstructionKind { strong_theta, reinforced_theta, strong_directed_k4, diwheel, kuratowski_digraph };

inline std::string to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::strong_theta: return "strong-theta";
    case ObstructionKind::reinforced_theta: return "reinforced-theta";
    case ObstructionKind::strong_directed_k4: return "strong-directed-K4";
    case ObstructionKind::diwheel: return "diwheel";
    case ObstructionKind::kuratowski_digraph: return "kuratowski-digraph";
  }
  return "unknown";
}

struct ObstructionWitness {
  ObstructionKind kind = ObstructionKind::strong_theta;
  int rim_length = 0;  // diwheels only
  DirectedSubdivisionWitness witness;
};

/// Which arcs of a diwheel are rim arcs.
inline std::vector<bool> diwheel_rim_mask(const Digraph& wheel) {
  const int hub = wheel.vertex_count() - 1;
  std::vector<bool> mask;
  for (const Arc& a : wheel.arcs()) mask.push_back(a.tail != hub && a.head != hub);
  return mask;
}

struct DetectOptions {
  // Only allow subdivision of the arcs whose subdivision does not already
  // create a smaller obstruction: the rim of a diwheel, the theta paths.
  bool rim_only = false;
  SearchLimits limits{};
};

namespace detail {

// The theta patterns as simple digraphs: the degree-two middle vertices of
// the three hub-to-hub paths are explicit pattern vertices.
inline Digraph strong_theta_pattern() { return make_strong_theta(2, 2, 2); }

inline Digraph reinforced_theta_pattern() { return make_reinforced_theta(2, 2, 2); }

inline std::optional<ObstructionWitness> find_pattern(const Digraph& d, ObstructionKind kind,
                                                      const Digraph& pattern,
                                                      const std::vector<bool>& mask,
                                                      const DetectOptions& opt, int rim = 0) {
  auto w = contains_directed_subdivision(d, pattern, mask, opt.limits);
  if (!w) return std::nullopt;
  return ObstructionWitness{kind, rim, std::move(*w)};
}

inline std::optional<ObstructionWitness> find_k4_or_diwheel(const Digraph& d, const DetectOptions& opt) {
  if (auto w = find_pattern(d, ObstructionKind::strong_directed_k4, make_strong_directed_K4(), {}, opt)) {
    return w;
  }
  for (int two_k = 4; two_k + 1 <= d.vertex_count(); two_k += 2) {
    const Digraph wheel = make_diwheel(two_k);
    const std::vector<bool> mask = opt.rim_only ? diwheel_rim_mask(wheel) : std::vector<bool>{};
    if (auto w = find_pattern(d, ObstructionKind::diwheel, wheel, mask, opt, two_k)) return w;
  }
  return std::nullopt;
}

}  // namespace detail

/// A subdigraph that is a strong theta, a reinforced theta, or a directed
/// subdivision of the strong directed K4 or of a diwheel.
inline std::optional<ObstructionWitness> detect_outerplanar_obstruction(const Digraph& d,
                                                                        DetectOptions opt = {}) {
  if (auto w = detail::find_pattern(d, ObstructionKind::strong_theta, detail::strong_theta_pattern(), {},
                                    opt)) {
    return w;
  }
  const Digraph rt = detail::reinforced_theta_pattern();
  std::vector<bool> mask;
  if (opt.rim_only) {
    for (const Arc& a : rt.arcs()) mask.push_back(!(a.tail == 1 && a.head == 0));
  }
  if (auto w = detail::find_pattern(d, ObstructionKind::reinforced_theta, rt, mask, opt)) return w;
  return detail::find_k4_or_diwheel(d, opt);
}

/// A subdigraph that is a directed subdivision of the strong directed K4 or
/// of a diwheel.
inline std::optional<ObstructionWitness> detect_series_parallel_obstruction(const Digraph& d,
                                                                            DetectOptions opt = {}) {
  return detail::find_k4_or_diwheel(d, opt);
}

/// Series-parallel digraph: the underlying graph has no K4 subdivision.
inline bool is_series_parallel_digraph(const Digraph& d) {
  return !has_k4_subdivision(underlying(d));
}

inline bool is_outerplanar_digraph(const Digraph& d) { return is_outerplanar(underlying(d)); }

}  // namespace kdg
