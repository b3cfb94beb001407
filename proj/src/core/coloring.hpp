#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace apspc {

constexpr int kUncolored = -1;

// Partial node coloring: assignment[v] is a color in [0, num_colors) or
// kUncolored. At most one color per node by representation.
struct Coloring {
  std::vector<int> assignment;

  int colored_count() const {
    int c = 0;
    for (int a : assignment) c += (a != kUncolored);
    return c;
  }
};

// Bitmask of the colors present anywhere in the coloring.
inline std::uint32_t present_mask(const Coloring& c, int num_colors) {
  std::uint32_t mask = 0;
  for (int a : c.assignment) {
    if (a != kUncolored && a < num_colors) mask |= 1u << a;
  }
  return mask;
}

inline std::uint32_t full_mask(int num_colors) {
  return (num_colors >= 32) ? ~0u : ((1u << num_colors) - 1);
}

inline Cost coloring_cost(const Coloring& c,
                          const std::vector<Cost>& color_costs) {
  Cost total = 0;
  for (int a : c.assignment) {
    if (a != kUncolored) total += color_costs[a];
  }
  return total;
}

}  // namespace apspc
