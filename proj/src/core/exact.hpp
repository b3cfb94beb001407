#pragma once

#include <string>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"
#include "instance.hpp"

namespace apspc {

// walk: routes may revisit nodes (the relaxation used by the fitness).
// simple: routes must be simple paths (the stricter model semantics).
enum class PathMode { kWalk, kSimple };

struct PairPath {
  NodeId s = 0;
  NodeId t = 0;
  std::vector<NodeId> path;  // s first, t last
  Cost cost = 0;
};

// A fully explicit answer: the coloring plus one covering route per
// unordered node pair.
struct ExplicitSolution {
  Coloring coloring;
  std::vector<PairPath> pairs;  // sorted by (s, t), s < t
  Cost objective = 0;
  PathMode mode = PathMode::kWalk;
};

struct BruteForceOutcome {
  ExplicitSolution solution;
  bool feasible = false;
  long long colorings_visited = 0;
};

constexpr long long kBruteForceBudget = 10'000'000;

// Exhaustive search over all (num_colors+1)^n colorings. Ties on the
// objective keep the lexicographically smallest coloring, where per node
// color 0 < color 1 < ... < uncolored.
BruteForceOutcome brute_force_solve(const Instance& inst, PathMode mode);

struct Violation {
  std::string code;
  std::string detail;
};

// Checks an explicit solution against the model semantics: coloring
// domain, complete pair coverage, connected s-t routes over real edges,
// simplicity in simple mode, all colors on every route, and cost
// arithmetic. Violations are data, not errors.
std::vector<Violation> validate_solution(const Instance& inst,
                                         const ExplicitSolution& sol,
                                         PathMode mode);

std::string explicit_solution_json(const ExplicitSolution& sol);
ExplicitSolution explicit_solution_from_json(const std::string& text);

}  // namespace apspc
