#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace kdg {

/// A set of vertex ids packed into one machine word. Every graph in the
/// library has at most 64 vertices.
using VertexMask = std::uint64_t;

inline constexpr int max_vertices = 64;

constexpr VertexMask bit(int v) { return VertexMask{1} << v; }

constexpr VertexMask first_n(int n) {
  return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

constexpr int popcount(VertexMask m) { return std::popcount(m); }

constexpr int lowest(VertexMask m) { return std::countr_zero(m); }

constexpr bool contains(VertexMask m, int v) { return (m >> v) & 1U; }

template <class F>
void for_each_bit(VertexMask m, F&& f) {
  while (m != 0) {
    const int v = std::countr_zero(m);
    m &= m - 1;
    f(v);
  }
}

// Errors. The CLI maps each class to a distinct exit code.

/// Malformed input: bad file syntax, loops, duplicate edges, digons.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented domain.
struct precondition_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// An exponential search was asked to run on an input above its cap.
struct size_cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A proved structural theorem failed on a concrete input. Always a bug.
struct theorem_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kdg
