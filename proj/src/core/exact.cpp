#include "exact.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "covering_path.hpp"
#include "errors.hpp"

namespace apspc {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

// Minimum-cost simple covering path for one pair, by exhaustive DFS with
// an admissible lower bound (classical distance to the target).
class SimplePathFinder {
 public:
  SimplePathFinder(const WeightedGraph& g, int num_colors)
      : g_(&g), full_(full_mask(num_colors)) {
    const int n = g.node_count();
    dist_to_.resize(n);
    for (NodeId t = 0; t < n; ++t) {
      dist_to_[t] = dijkstra_costs_hops(g, t).dist;
    }
    cbit_.resize(n);
  }

  void set_coloring(const Coloring& c) {
    for (int v = 0; v < g_->node_count(); ++v) {
      const int a = c.assignment[v];
      cbit_[v] = (a == kUncolored) ? 0u : (1u << a);
    }
  }

  // Returns kInf when no simple covering path exists.
  Cost best_cost(NodeId s, NodeId t, std::vector<NodeId>* path_out = nullptr) {
    best_ = kInf;
    best_path_.clear();
    cur_path_.assign(1, s);
    want_path_ = path_out != nullptr;
    dfs(s, t, 1u << s, cbit_[s], 0);
    if (path_out) *path_out = best_path_;
    return best_;
  }

 private:
  void dfs(NodeId v, NodeId t, std::uint32_t visited, std::uint32_t covered,
           Cost cost) {
    if (cost + dist_to_[t][v] >= best_) return;
    if (v == t) {
      if (covered == full_) {
        best_ = cost;
        if (want_path_) best_path_ = cur_path_;
      }
      return;
    }
    for (const auto* a = g_->adj_begin(v); a != g_->adj_end(v); ++a) {
      const std::uint32_t bit = 1u << a->to;
      if (visited & bit) continue;
      cur_path_.push_back(a->to);
      dfs(a->to, t, visited | bit, covered | cbit_[a->to], cost + a->w);
      cur_path_.pop_back();
    }
  }

  const WeightedGraph* g_;
  std::uint32_t full_;
  std::vector<std::vector<Cost>> dist_to_;
  std::vector<std::uint32_t> cbit_;
  Cost best_ = kInf;
  std::vector<NodeId> best_path_;
  std::vector<NodeId> cur_path_;
  bool want_path_ = false;
};

// Sum of simple-mode pair costs, kInf when some pair has no simple
// covering path.
Cost simple_all_pairs(SimplePathFinder& finder, int n) {
  Cost total = 0;
  for (NodeId s = 0; s + 1 < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      const Cost c = finder.best_cost(s, t);
      if (c >= kInf) return kInf;
      total += c;
    }
  }
  return total;
}

}  // namespace

BruteForceOutcome brute_force_solve(const Instance& inst, PathMode mode) {
  const int n = inst.node_count();
  const int colors = inst.num_colors();
  if (n > 62) throw CapacityError("brute force limited to 62 nodes");

  long long space = 1;
  for (int i = 0; i < n; ++i) {
    space *= colors + 1;
    if (space > kBruteForceBudget) {
      throw CapacityError(
          "brute force would enumerate (" + std::to_string(colors + 1) +
          ")^" + std::to_string(n) + " colorings; the budget is " +
          std::to_string(kBruteForceBudget));
    }
  }

  // Classical all-pairs total is a lower bound on any covering path total.
  Cost classical_total = 0;
  for (NodeId s = 0; s + 1 < n; ++s) {
    const auto sssp = dijkstra_costs_hops(inst.graph(), s);
    for (NodeId t = s + 1; t < n; ++t) classical_total += sssp.dist[t];
  }

  CoveringSearch search(inst.graph(), colors);
  SimplePathFinder finder(inst.graph(), colors);
  const std::uint32_t full = full_mask(colors);

  BruteForceOutcome out;
  std::vector<int> digits(n, 0);  // per node: 0..colors-1, `colors` = bare
  Coloring col;
  col.assignment.assign(n, 0);
  bool have_best = false;
  Cost best_obj = 0;
  std::vector<int> best_assignment;

  while (true) {
    ++out.colorings_visited;
    for (int v = 0; v < n; ++v) {
      col.assignment[v] = digits[v] == colors ? kUncolored : digits[v];
    }
    if (present_mask(col, colors) == full) {
      const Cost cost_c = coloring_cost(col, inst.color_costs());
      if (!have_best || cost_c + classical_total < best_obj) {
        Cost total;
        if (mode == PathMode::kWalk) {
          const auto ap = all_pairs_covering_cost(search, col);
          total = ap.feasible ? ap.total_path_cost : kInf;
        } else {
          finder.set_coloring(col);
          total = simple_all_pairs(finder, n);
        }
        if (total < kInf && (!have_best || cost_c + total < best_obj)) {
          have_best = true;
          best_obj = cost_c + total;
          best_assignment = col.assignment;
        }
      }
    }
    int pos = n - 1;
    while (pos >= 0 && digits[pos] == colors) {
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++digits[pos];
  }

  if (!have_best) {
    out.feasible = false;
    return out;
  }

  out.feasible = true;
  ExplicitSolution& sol = out.solution;
  sol.mode = mode;
  sol.coloring.assignment = best_assignment;
  sol.objective = best_obj;
  if (mode == PathMode::kWalk) {
    for (NodeId s = 0; s + 1 < n; ++s) {
      search.run(s, sol.coloring, true);
      for (NodeId t = s + 1; t < n; ++t) {
        sol.pairs.push_back({s, t, search.walk_to(t), search.cost_to(t)});
      }
    }
  } else {
    finder.set_coloring(sol.coloring);
    for (NodeId s = 0; s + 1 < n; ++s) {
      for (NodeId t = s + 1; t < n; ++t) {
        std::vector<NodeId> path;
        const Cost c = finder.best_cost(s, t, &path);
        sol.pairs.push_back({s, t, std::move(path), c});
      }
    }
  }
  return out;
}

std::vector<Violation> validate_solution(const Instance& inst,
                                         const ExplicitSolution& sol,
                                         PathMode mode) {
  std::vector<Violation> v;
  const int n = inst.node_count();
  const int colors = inst.num_colors();
  const WeightedGraph& g = inst.graph();

  if (static_cast<int>(sol.coloring.assignment.size()) != n) {
    v.push_back({"color-domain", "coloring has " +
                                     std::to_string(
                                         sol.coloring.assignment.size()) +
                                     " entries, graph has " +
                                     std::to_string(n) + " nodes"});
    return v;
  }
  for (int i = 0; i < n; ++i) {
    const int a = sol.coloring.assignment[i];
    if (a != kUncolored && (a < 0 || a >= colors)) {
      v.push_back({"color-domain", "node " + std::to_string(i) +
                                       " carries color " + std::to_string(a)});
    }
  }

  std::vector<std::uint32_t> cbit(n, 0);
  for (int i = 0; i < n; ++i) {
    const int a = sol.coloring.assignment[i];
    if (a >= 0 && a < colors) cbit[i] = 1u << a;
  }
  const std::uint32_t full = full_mask(colors);

  // Adjacency lookup for flow checks.
  std::set<std::pair<NodeId, NodeId>> edge_set;
  std::vector<std::vector<Cost>> weight(n, std::vector<Cost>(n, -1));
  for (const Edge& e : g.edges()) {
    edge_set.insert(std::minmax(e.u, e.v));
    weight[e.u][e.v] = e.w;
    weight[e.v][e.u] = e.w;
  }

  std::set<std::pair<NodeId, NodeId>> seen_pairs;
  Cost path_total = 0;
  for (const PairPath& pp : sol.pairs) {
    const std::string label =
        "pair (" + std::to_string(pp.s) + "," + std::to_string(pp.t) + ")";
    if (pp.s < 0 || pp.s >= n || pp.t < 0 || pp.t >= n || pp.s == pp.t) {
      v.push_back({"missing-pair", label + " is not a valid node pair"});
      continue;
    }
    const auto key = std::minmax(pp.s, pp.t);
    if (!seen_pairs.insert(key).second) {
      v.push_back({"duplicate-pair", label + " appears more than once"});
      continue;
    }
    if (pp.path.empty() || pp.path.front() != pp.s ||
        pp.path.back() != pp.t) {
      v.push_back({"endpoint", label + " route does not run s to t"});
      continue;
    }
    bool broken = false;
    Cost cost = 0;
    for (std::size_t i = 0; i + 1 < pp.path.size(); ++i) {
      const NodeId a = pp.path[i];
      const NodeId b = pp.path[i + 1];
      if (a < 0 || a >= n || b < 0 || b >= n || !edge_set.count(std::minmax(a, b))) {
        v.push_back({"flow", label + " step " + std::to_string(a) + "->" +
                                 std::to_string(b) + " is not an edge"});
        broken = true;
        break;
      }
      cost += weight[a][b];
    }
    if (broken) continue;
    if (mode == PathMode::kSimple) {
      std::set<NodeId> uniq(pp.path.begin(), pp.path.end());
      if (uniq.size() != pp.path.size()) {
        v.push_back({"subtour", label + " revisits a node in simple mode"});
      }
    }
    std::uint32_t covered = 0;
    for (NodeId x : pp.path) covered |= cbit[x];
    if (covered != full) {
      v.push_back({"color-coverage",
                   label + " route misses " +
                       std::to_string(std::popcount(full & ~covered)) +
                       " color(s)"});
    }
    if (cost != pp.cost) {
      v.push_back({"cost-mismatch", label + " declares cost " +
                                        std::to_string(pp.cost) +
                                        ", edges sum to " +
                                        std::to_string(cost)});
    }
    path_total += pp.cost;
  }

  for (NodeId s = 0; s + 1 < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (!seen_pairs.count({s, t})) {
        v.push_back({"missing-pair", "no route for pair (" +
                                         std::to_string(s) + "," +
                                         std::to_string(t) + ")"});
      }
    }
  }

  const Cost expect =
      coloring_cost(sol.coloring, inst.color_costs()) + path_total;
  if (expect != sol.objective) {
    v.push_back({"objective-mismatch",
                 "objective " + std::to_string(sol.objective) +
                     " != coloring cost + path costs = " +
                     std::to_string(expect)});
  }
  return v;
}

std::string explicit_solution_json(const ExplicitSolution& sol) {
  nlohmann::ordered_json j;
  j["coloring"] = sol.coloring.assignment;
  auto pairs = nlohmann::ordered_json::array();
  for (const PairPath& pp : sol.pairs) {
    pairs.push_back({{"s", pp.s},
                     {"t", pp.t},
                     {"path", pp.path},
                     {"cost", pp.cost}});
  }
  j["pairs"] = std::move(pairs);
  j["objective"] = sol.objective;
  j["mode"] = sol.mode == PathMode::kWalk ? "walk" : "simple";
  return j.dump(2) + "\n";
}

ExplicitSolution explicit_solution_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  try {
    ExplicitSolution sol;
    sol.coloring.assignment = j.at("coloring").get<std::vector<int>>();
    for (const auto& row : j.at("pairs")) {
      PairPath pp;
      pp.s = row.at("s").get<NodeId>();
      pp.t = row.at("t").get<NodeId>();
      pp.path = row.at("path").get<std::vector<NodeId>>();
      pp.cost = row.at("cost").get<Cost>();
      sol.pairs.push_back(std::move(pp));
    }
    sol.objective = j.at("objective").get<Cost>();
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "walk") {
      sol.mode = PathMode::kWalk;
    } else if (mode == "simple") {
      sol.mode = PathMode::kSimple;
    } else {
      throw ParseError("unknown mode: " + mode);
    }
    return sol;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
}

}  // namespace apspc
