#pragma once

#include <cstdint>
#include <vector>

namespace apspc {

using NodeId = int;
using Cost = std::int64_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Cost w = 0;
};

// Undirected, connected, weighted graph without self loops or parallel
// edges. Edge weights are strictly positive integers. Adjacency is stored
// CSR-style with neighbor lists sorted by node id; the edge list keeps
// insertion order.
class WeightedGraph {
 public:
  WeightedGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  struct Arc {
    NodeId to;
    Cost w;
  };

  // Neighbors of u, sorted by node id.
  const Arc* adj_begin(NodeId u) const { return arcs_.data() + offsets_[u]; }
  const Arc* adj_end(NodeId u) const { return arcs_.data() + offsets_[u + 1]; }
  int degree(NodeId u) const {
    return static_cast<int>(offsets_[u + 1] - offsets_[u]);
  }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

// Classical (color-free) shortest path between two nodes.
struct PathResult {
  Cost cost = 0;
  std::vector<NodeId> node_sequence;  // s first, t last
  int node_count = 0;                 // both endpoints counted
};

// Single-source shortest-path costs; dist[v] for every v. Hops are tracked
// as a secondary criterion so ties in cost resolve toward fewer edges.
struct SsspResult {
  std::vector<Cost> dist;
  std::vector<int> hops;
};

SsspResult dijkstra_costs_hops(const WeightedGraph& g, NodeId source);

// Full single-source tree with deterministic path reconstruction. Among
// equal-cost paths the one with fewer nodes wins; among those, the
// lexicographically smallest node sequence.
class ShortestPathTree {
 public:
  ShortestPathTree(const WeightedGraph& g, NodeId source);

  Cost dist(NodeId v) const { return dist_[v]; }
  int hops(NodeId v) const { return hops_[v]; }
  PathResult path_to(NodeId v) const;

 private:
  NodeId source_;
  std::vector<Cost> dist_;
  std::vector<int> hops_;
  std::vector<NodeId> parent_;
};

// Number of colors as a function of the mean shortest-path node count:
// 3 for values in [2,3), floor(x)-1 when floor(x) is even, floor(x) when
// odd. Defined for x >= 2.
int cd(double x);

// Mean over unordered node pairs of the node count of the classical
// shortest path, fed through cd(). Requires at least 2 nodes.
int compute_num_colors(const WeightedGraph& g);

// Structural aggregates used by the decoder.
struct GraphStats {
  std::vector<int> node_degrees;
  std::vector<double> avg_node_weight;  // mean weight of incident edges
  double avg_graph_degree = 0.0;        // 2|E| / |V|
  double avg_graph_weight = 0.0;        // mean edge weight
};

GraphStats graph_stats(const WeightedGraph& g);

}  // namespace apspc
