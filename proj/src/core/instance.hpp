#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"

namespace apspc {

// Parameters of the random-instance protocol: node count, edge density and
// the color-cost range.
struct GenParams {
  int n = 0;
  double d = 0.0;
  Cost cr_lo = 1;
  Cost cr_hi = 1;
};

// A problem instance: weighted graph, number of colors, per-color costs,
// plus the seed and parameters that produced it (synthesized for
// hand-built instances so every instance serializes the same way).
class Instance {
 public:
  Instance(WeightedGraph graph, int num_colors, std::vector<Cost> color_costs,
           std::uint64_t seed, const GenParams* gen_params = nullptr);

  // Random instance: spanning tree over a shuffled node order first, then
  // uniformly sampled extra edges until round(d*n*(n-1)/2) edges exist.
  // Weights are uniform in [1,200], color costs uniform in [cr_lo,cr_hi],
  // and the color count is derived from the graph via compute_num_colors.
  static Instance generate(const GenParams& params, std::uint64_t seed);

  static Instance from_json(const std::string& text);
  static Instance load(const std::string& path);
  std::string to_json() const;
  void save(const std::string& path) const;

  const WeightedGraph& graph() const { return graph_; }
  int node_count() const { return graph_.node_count(); }
  int num_colors() const { return num_colors_; }
  const std::vector<Cost>& color_costs() const { return color_costs_; }
  std::uint64_t seed() const { return seed_; }
  const GenParams& gen_params() const { return gen_params_; }

 private:
  WeightedGraph graph_;
  int num_colors_;
  std::vector<Cost> color_costs_;
  std::uint64_t seed_;
  GenParams gen_params_;
};

}  // namespace apspc
