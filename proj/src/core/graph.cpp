#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace apspc {

WeightedGraph::WeightedGraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ <= 0) {
    throw std::invalid_argument("graph needs at least one node");
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= node_count_ || e.v < 0 || e.v >= node_count_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self loops are not allowed");
    }
    if (e.w < 1) {
      throw std::invalid_argument("edge weights must be >= 1");
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("parallel edge between " +
                                  std::to_string(key.first) + " and " +
                                  std::to_string(key.second));
    }
  }

  std::vector<int> deg(node_count_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(node_count_ + 1, 0);
  for (int v = 0; v < node_count_; ++v) {
    offsets_[v + 1] = offsets_[v] + static_cast<std::size_t>(deg[v]);
  }
  arcs_.resize(offsets_[node_count_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    arcs_[cursor[e.u]++] = {e.v, e.w};
    arcs_[cursor[e.v]++] = {e.u, e.w};
  }
  for (int v = 0; v < node_count_; ++v) {
    std::sort(arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              arcs_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }

  // Connectivity check (BFS from node 0).
  std::vector<char> reached(node_count_, 0);
  std::queue<NodeId> q;
  q.push(0);
  reached[0] = 1;
  int count = 1;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (const Arc* a = adj_begin(u); a != adj_end(u); ++a) {
      if (!reached[a->to]) {
        reached[a->to] = 1;
        ++count;
        q.push(a->to);
      }
    }
  }
  if (count != node_count_) {
    throw std::invalid_argument("graph is not connected");
  }
}

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

struct QueueItem {
  Cost cost;
  int hops;
  NodeId node;
  bool operator>(const QueueItem& o) const {
    if (cost != o.cost) return cost > o.cost;
    if (hops != o.hops) return hops > o.hops;
    return node > o.node;
  }
};

}  // namespace

SsspResult dijkstra_costs_hops(const WeightedGraph& g, NodeId source) {
  if (source < 0 || source >= g.node_count()) {
    throw std::invalid_argument("source out of range");
  }
  SsspResult r;
  r.dist.assign(g.node_count(), kInf);
  r.hops.assign(g.node_count(), -1);
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> pq;
  r.dist[source] = 0;
  r.hops[source] = 0;
  pq.push({0, 0, source});
  while (!pq.empty()) {
    auto [cost, hops, u] = pq.top();
    pq.pop();
    if (cost != r.dist[u] || hops != r.hops[u]) continue;
    for (const auto* a = g.adj_begin(u); a != g.adj_end(u); ++a) {
      Cost nc = cost + a->w;
      int nh = hops + 1;
      if (nc < r.dist[a->to] ||
          (nc == r.dist[a->to] && nh < r.hops[a->to])) {
        r.dist[a->to] = nc;
        r.hops[a->to] = nh;
        pq.push({nc, nh, a->to});
      }
    }
  }
  return r;
}

ShortestPathTree::ShortestPathTree(const WeightedGraph& g, NodeId source)
    : source_(source) {
  auto sssp = dijkstra_costs_hops(g, source);
  dist_ = std::move(sssp.dist);
  hops_ = std::move(sssp.hops);
  parent_.assign(g.node_count(), -1);

  // Finalize parents in increasing distance order. Weights are >= 1, so
  // every optimal predecessor has strictly smaller distance and is already
  // finalized when its successor is handled.
  std::vector<NodeId> order(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (dist_[a] != dist_[b]) return dist_[a] < dist_[b];
    return a < b;
  });

  auto sequence_of = [&](NodeId v) {
    std::vector<NodeId> seq;
    for (NodeId x = v; x != -1; x = parent_[x]) seq.push_back(x);
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  for (NodeId v : order) {
    if (v == source || dist_[v] >= kInf) continue;
    NodeId best = -1;
    std::vector<NodeId> best_seq;
    for (const auto* a = g.adj_begin(v); a != g.adj_end(v); ++a) {
      NodeId p = a->to;
      if (dist_[p] + a->w != dist_[v] || hops_[p] + 1 != hops_[v]) continue;
      if (best == -1) {
        best = p;
        continue;
      }
      // Several optimal predecessors; keep the one whose own sequence is
      // lexicographically smallest. Candidate sequences share one length.
      if (best_seq.empty()) best_seq = sequence_of(best);
      std::vector<NodeId> cand = sequence_of(p);
      if (cand < best_seq) {
        best = p;
        best_seq = std::move(cand);
      }
    }
    parent_[v] = best;
  }
}

PathResult ShortestPathTree::path_to(NodeId v) const {
  if (v < 0 || v >= static_cast<NodeId>(dist_.size())) {
    throw std::invalid_argument("target out of range");
  }
  PathResult r;
  r.cost = dist_[v];
  for (NodeId x = v; x != -1; x = parent_[x]) r.node_sequence.push_back(x);
  std::reverse(r.node_sequence.begin(), r.node_sequence.end());
  r.node_count = static_cast<int>(r.node_sequence.size());
  return r;
}

int cd(double x) {
  if (!(x >= 2.0)) {
    throw std::domain_error("cd is defined for x >= 2");
  }
  const int f = static_cast<int>(std::floor(x));
  if (f == 2) return 3;
  if (f % 2 == 0) return f - 1;
  return f;
}

int compute_num_colors(const WeightedGraph& g) {
  const int n = g.node_count();
  if (n < 2) {
    throw std::invalid_argument("need at least two nodes");
  }
  // Mean node count over unordered pairs of the classical shortest path;
  // a path with h edges visits h + 1 nodes.
  double total = 0.0;
  for (NodeId s = 0; s < n; ++s) {
    auto sssp = dijkstra_costs_hops(g, s);
    for (NodeId t = s + 1; t < n; ++t) {
      total += static_cast<double>(sssp.hops[t] + 1);
    }
  }
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  return cd(total / pairs);
}

GraphStats graph_stats(const WeightedGraph& g) {
  const int n = g.node_count();
  GraphStats s;
  s.node_degrees.assign(n, 0);
  s.avg_node_weight.assign(n, 0.0);
  double weight_total = 0.0;
  for (const Edge& e : g.edges()) {
    s.node_degrees[e.u] += 1;
    s.node_degrees[e.v] += 1;
    s.avg_node_weight[e.u] += static_cast<double>(e.w);
    s.avg_node_weight[e.v] += static_cast<double>(e.w);
    weight_total += static_cast<double>(e.w);
  }
  for (int v = 0; v < n; ++v) {
    if (s.node_degrees[v] > 0) s.avg_node_weight[v] /= s.node_degrees[v];
  }
  s.avg_graph_degree = 2.0 * g.edge_count() / n;
  s.avg_graph_weight =
      g.edge_count() > 0 ? weight_total / g.edge_count() : 0.0;
  return s;
}

}  // namespace apspc
