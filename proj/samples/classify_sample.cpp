// Builds a few almost-planar graphs, names their family and looks for a good
// orientation.

#include <iostream>

#include "kdg/kdg.hpp"

int main() {
  using namespace kdg;
  const std::pair<const char*, Graph> graphs[] = {
      {"K5", complete_graph(5)},
      {"K3,3", complete_bipartite(3, 3)},
      {"V8", generate_V8()},
      {"U8", generate_U8()},
      {"W8", generate_W8()},
  };
  for (const auto& [name, g] : graphs) {
    const auto certs = classify_almost_planar(g);
    const auto good = find_good_orientation(g);
    std::cout << name << ": " << to_string(certs.front().family()) << ", |F| = "
              << critical_edges(g, Criterion::nonplanar).size() << ", good orientation "
              << (good ? "found" : "none") << '\n';
    if (good) std::cout << io::to_text(good->digraph());
  }
}
