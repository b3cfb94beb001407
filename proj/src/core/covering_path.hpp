#pragma once

#include <cstdint>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"

namespace apspc {

constexpr Cost kUndefinedCost = -1;
constexpr int kMaxCoveringColors = 24;

// Cheapest s-t route whose visited nodes collectively carry every color.
// The route is a walk: nodes may repeat (detours to pick up colors).
struct CoveringPathResult {
  Cost cost = kUndefinedCost;
  std::vector<NodeId> walk;    // s first, t last; empty when infeasible
  std::uint32_t covered = 0;   // colors collected by the best route to t
  bool feasible = false;
};

// Label-setting search over (node, covered-color-subset) states. The
// object is a reusable workspace: one run() explores a full single-source
// frontier, after which every target can be queried. Distances are epoch
// stamped so repeated runs do not pay for clearing.
class CoveringSearch {
 public:
  CoveringSearch(const WeightedGraph& g, int num_colors);

  void run(NodeId source, const Coloring& coloring, bool track_walks = false);

  // Cost of the cheapest all-colors walk from the last run's source to t,
  // or kUndefinedCost when no covering walk exists.
  Cost cost_to(NodeId t) const;

  // Best color coverage achievable at t (maximum cardinality, then
  // smallest bitmask), regardless of feasibility.
  std::uint32_t best_coverage_at(NodeId t) const;

  // Walk behind cost_to(t); requires track_walks on the last run.
  std::vector<NodeId> walk_to(NodeId t) const;

  int num_colors() const { return num_colors_; }
  const WeightedGraph& graph() const { return *g_; }

 private:
  struct Item {
    Cost cost;
    NodeId node;
    std::uint32_t mask;
  };
  static bool worse(const Item& a, const Item& b);
  std::size_t state(NodeId v, std::uint32_t mask) const {
    return static_cast<std::size_t>(mask) * n_ + static_cast<std::size_t>(v);
  }

  const WeightedGraph* g_;
  int n_;
  int num_colors_;
  std::uint32_t full_;
  std::vector<Cost> dist_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::int64_t> parent_;
  std::vector<std::uint32_t> cbit_;
  std::vector<Item> heap_;
  std::uint32_t epoch_ = 0;
  NodeId source_ = -1;
  bool tracked_ = false;
};

CoveringPathResult covering_shortest_path(const WeightedGraph& g,
                                          const Coloring& coloring,
                                          int num_colors, NodeId s, NodeId t);

struct AllPairsCoveringResult {
  Cost total_path_cost = kUndefinedCost;
  bool feasible = false;
  long long covered_pairs = 0;  // pairs confirmed covered before any failure
};

// Sum of covering costs over all unordered node pairs; stops at the first
// pair without a covering route. A coloring leaving any color unused is
// rejected up front (no pair can be covered).
AllPairsCoveringResult all_pairs_covering_cost(CoveringSearch& search,
                                               const Coloring& coloring);
AllPairsCoveringResult all_pairs_covering_cost(const WeightedGraph& g,
                                               const Coloring& coloring,
                                               int num_colors);

}  // namespace apspc
