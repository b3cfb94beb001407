#include "covering_path.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace apspc {

CoveringSearch::CoveringSearch(const WeightedGraph& g, int num_colors)
    : g_(&g), n_(g.node_count()), num_colors_(num_colors) {
  if (num_colors_ < 1) {
    throw std::invalid_argument("need at least one color");
  }
  if (num_colors_ > kMaxCoveringColors) {
    throw CapacityError("covering search supports at most " +
                        std::to_string(kMaxCoveringColors) + " colors, got " +
                        std::to_string(num_colors_));
  }
  full_ = full_mask(num_colors_);
  const std::size_t states = (static_cast<std::size_t>(full_) + 1) * n_;
  dist_.resize(states);
  stamp_.assign(states, 0);
  cbit_.resize(n_);
}

bool CoveringSearch::worse(const Item& a, const Item& b) {
  if (a.cost != b.cost) return a.cost > b.cost;
  if (a.node != b.node) return a.node > b.node;
  return std::popcount(a.mask) < std::popcount(b.mask);
}

void CoveringSearch::run(NodeId source, const Coloring& coloring,
                         bool track_walks) {
  if (source < 0 || source >= n_) {
    throw std::invalid_argument("source out of range");
  }
  if (static_cast<int>(coloring.assignment.size()) != n_) {
    throw std::invalid_argument("coloring size does not match graph");
  }
  for (int v = 0; v < n_; ++v) {
    const int a = coloring.assignment[v];
    if (a != kUncolored && (a < 0 || a >= num_colors_)) {
      throw std::invalid_argument("color out of range at node " +
                                  std::to_string(v));
    }
    cbit_[v] = (a == kUncolored) ? 0u : (1u << a);
  }
  if (track_walks && parent_.empty()) parent_.resize(dist_.size());
  tracked_ = track_walks;
  source_ = source;

  ++epoch_;
  heap_.clear();
  const std::size_t start = state(source, cbit_[source]);
  stamp_[start] = epoch_;
  dist_[start] = 0;
  if (tracked_) parent_[start] = -1;
  heap_.push_back({0, source, cbit_[source]});

  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), worse);
    const Item it = heap_.back();
    heap_.pop_back();
    const std::size_t cur = state(it.node, it.mask);
    if (dist_[cur] != it.cost) continue;  // superseded entry
    for (const auto* a = g_->adj_begin(it.node); a != g_->adj_end(it.node);
         ++a) {
      const std::uint32_t nmask = it.mask | cbit_[a->to];
      const std::size_t nxt = state(a->to, nmask);
      const Cost ncost = it.cost + a->w;
      if (stamp_[nxt] != epoch_ || ncost < dist_[nxt]) {
        stamp_[nxt] = epoch_;
        dist_[nxt] = ncost;
        if (tracked_) parent_[nxt] = static_cast<std::int64_t>(cur);
        heap_.push_back({ncost, a->to, nmask});
        std::push_heap(heap_.begin(), heap_.end(), worse);
      }
    }
  }
}

Cost CoveringSearch::cost_to(NodeId t) const {
  const std::size_t idx = state(t, full_);
  return stamp_[idx] == epoch_ ? dist_[idx] : kUndefinedCost;
}

std::uint32_t CoveringSearch::best_coverage_at(NodeId t) const {
  int best_bits = -1;
  std::uint32_t best = 0;
  for (std::uint32_t mask = 0; mask <= full_; ++mask) {
    if (stamp_[state(t, mask)] != epoch_) continue;
    const int bits = std::popcount(mask);
    if (bits > best_bits) {
      best_bits = bits;
      best = mask;
    }
  }
  return best;
}

std::vector<NodeId> CoveringSearch::walk_to(NodeId t) const {
  if (!tracked_) {
    throw std::logic_error("walk_to requires track_walks on the last run");
  }
  std::vector<NodeId> walk;
  std::size_t idx = state(t, full_);
  if (stamp_[idx] != epoch_) return walk;
  std::int64_t cur = static_cast<std::int64_t>(idx);
  while (cur != -1) {
    walk.push_back(static_cast<NodeId>(cur % n_));
    cur = parent_[static_cast<std::size_t>(cur)];
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

CoveringPathResult covering_shortest_path(const WeightedGraph& g,
                                          const Coloring& coloring,
                                          int num_colors, NodeId s, NodeId t) {
  if (s == t) throw std::invalid_argument("source and target must differ");
  if (t < 0 || t >= g.node_count()) {
    throw std::invalid_argument("target out of range");
  }
  CoveringSearch search(g, num_colors);
  search.run(s, coloring, true);
  CoveringPathResult r;
  r.cost = search.cost_to(t);
  r.feasible = r.cost != kUndefinedCost;
  if (r.feasible) {
    r.covered = full_mask(num_colors);
    r.walk = search.walk_to(t);
  } else {
    r.covered = search.best_coverage_at(t);
  }
  return r;
}

AllPairsCoveringResult all_pairs_covering_cost(CoveringSearch& search,
                                               const Coloring& coloring) {
  const int n = search.graph().node_count();
  AllPairsCoveringResult r;
  if (present_mask(coloring, search.num_colors()) !=
      full_mask(search.num_colors())) {
    return r;  // some color is entirely absent: no pair can be covered
  }
  Cost total = 0;
  for (NodeId s = 0; s + 1 < n; ++s) {
    search.run(s, coloring);
    for (NodeId t = s + 1; t < n; ++t) {
      const Cost c = search.cost_to(t);
      if (c == kUndefinedCost) {
        r.total_path_cost = kUndefinedCost;
        r.feasible = false;
        return r;
      }
      total += c;
      ++r.covered_pairs;
    }
  }
  r.total_path_cost = total;
  r.feasible = true;
  return r;
}

AllPairsCoveringResult all_pairs_covering_cost(const WeightedGraph& g,
                                               const Coloring& coloring,
                                               int num_colors) {
  CoveringSearch search(g, num_colors);
  return all_pairs_covering_cost(search, coloring);
}

}  // namespace apspc
