#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "core/brkga.hpp"
#include "core/errors.hpp"
#include "core/exact.hpp"
#include "core/instance.hpp"

namespace {

using namespace apspc;

Instance k2_instance() {
  return Instance(WeightedGraph(2, {{0, 1, 5}}), 1, {7}, 0);
}

Instance triangle_instance() {
  return Instance(WeightedGraph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}), 3,
                  {1, 1, 1}, 0);
}

Instance path3_instance() {
  return Instance(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}}), 3, {1, 1, 1}, 0);
}

bool has_code(const std::vector<Violation>& v, const std::string& code) {
  return std::any_of(v.begin(), v.end(),
                     [&](const Violation& x) { return x.code == code; });
}

}  // namespace

TEST_CASE("single edge optimum") {
  const BruteForceOutcome out = brute_force_solve(k2_instance(), PathMode::kWalk);
  REQUIRE(out.feasible);
  CHECK(out.colorings_visited == 4);  // (1+1)^2
  CHECK(out.solution.objective == 12);
  CHECK(out.solution.coloring.assignment == std::vector<int>{0, kUncolored});
  REQUIRE(out.solution.pairs.size() == 1);
  CHECK(out.solution.pairs[0].s == 0);
  CHECK(out.solution.pairs[0].t == 1);
  CHECK(out.solution.pairs[0].cost == 5);
  CHECK(out.solution.pairs[0].path == std::vector<NodeId>{0, 1});
  CHECK(validate_solution(k2_instance(), out.solution, PathMode::kWalk).empty());
}

TEST_CASE("triangle forces a rainbow coloring") {
  const BruteForceOutcome out =
      brute_force_solve(triangle_instance(), PathMode::kWalk);
  REQUIRE(out.feasible);
  CHECK(out.colorings_visited == 64);  // (3+1)^3
  CHECK(out.solution.objective == 9);
  CHECK(out.solution.coloring.assignment == std::vector<int>{0, 1, 2});
  for (const PairPath& pp : out.solution.pairs) CHECK(pp.cost == 2);
}

TEST_CASE("simple routes can be impossible where walks are not") {
  const Instance inst = path3_instance();
  const BruteForceOutcome walk = brute_force_solve(inst, PathMode::kWalk);
  REQUIRE(walk.feasible);
  CHECK(walk.solution.objective == 11);  // 3 coloring + routes 3+2+3
  CHECK(walk.solution.coloring.assignment == std::vector<int>{0, 1, 2});
  CHECK(validate_solution(inst, walk.solution, PathMode::kWalk).empty());

  const BruteForceOutcome simple = brute_force_solve(inst, PathMode::kSimple);
  CHECK(!simple.feasible);
}

TEST_CASE("simple objectives dominate walk objectives") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = Instance::generate({6, 0.6, 1, 125}, seed);
    const BruteForceOutcome walk = brute_force_solve(inst, PathMode::kWalk);
    const BruteForceOutcome simple = brute_force_solve(inst, PathMode::kSimple);
    REQUIRE(walk.feasible);
    CAPTURE(seed);
    CHECK(validate_solution(inst, walk.solution, PathMode::kWalk).empty());
    if (simple.feasible) {
      CHECK(simple.solution.objective >= walk.solution.objective);
      CHECK(validate_solution(inst, simple.solution, PathMode::kSimple).empty());
    }
  }
}

TEST_CASE("walk routes in a solution may revisit nodes but simple ones may not") {
  const Instance inst = path3_instance();
  const BruteForceOutcome walk = brute_force_solve(inst, PathMode::kWalk);
  REQUIRE(walk.feasible);
  // The walk answer fails simple-mode validation: its detours revisit.
  const auto violations =
      validate_solution(inst, walk.solution, PathMode::kSimple);
  CHECK(has_code(violations, "subtour"));
}

TEST_CASE("evolution never beats the enumeration optimum") {
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    const Instance inst = Instance::generate({7, 0.45, 1, 125}, seed);
    if (inst.num_colors() != 3) continue;
    const BruteForceOutcome exact = brute_force_solve(inst, PathMode::kWalk);
    REQUIRE(exact.feasible);
    BrkgaParams params;
    params.master_seed = seed;
    params.time_limit_s = 60.0;
    const EvolveResult result = evolve(inst, params);
    REQUIRE(result.found_feasible);
    CAPTURE(seed);
    CHECK(result.best.fitness >= exact.solution.objective);
  }
}

TEST_CASE("enumeration capacity guard") {
  const Instance big = Instance::generate({30, 0.25, 1, 125}, 1);
  CHECK_THROWS_AS(brute_force_solve(big, PathMode::kWalk), CapacityError);
  CHECK_THROWS_WITH_AS(brute_force_solve(big, PathMode::kWalk),
                       doctest::Contains("budget"), CapacityError);
}

TEST_CASE("validator flags each defect class") {
  const Instance inst = triangle_instance();
  const ExplicitSolution good =
      brute_force_solve(inst, PathMode::kWalk).solution;
  REQUIRE(validate_solution(inst, good, PathMode::kWalk).empty());

  {
    ExplicitSolution bad = good;
    bad.coloring.assignment = {0, 1};
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "color-domain"));
  }
  {
    ExplicitSolution bad = good;
    bad.coloring.assignment = {0, 1, 9};
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "color-domain"));
  }
  {
    ExplicitSolution bad = good;
    bad.pairs.pop_back();
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "missing-pair"));
  }
  {
    ExplicitSolution bad = good;
    bad.pairs.push_back(bad.pairs.front());
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "duplicate-pair"));
  }
  {
    ExplicitSolution bad = good;
    bad.pairs[0].path.back() = bad.pairs[0].path.front();
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk), "endpoint"));
  }
  {
    ExplicitSolution bad = good;
    bad.pairs[0].path = {bad.pairs[0].s, bad.pairs[0].s, bad.pairs[0].t};
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk), "flow"));
  }
  {
    ExplicitSolution bad = good;
    bad.pairs[0].cost += 1;
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "cost-mismatch"));
  }
  {
    ExplicitSolution bad = good;
    bad.objective += 1;
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "objective-mismatch"));
  }
  {
    // Route that skips the third color: direct edge between two nodes.
    ExplicitSolution bad = good;
    for (PairPath& pp : bad.pairs) {
      if (pp.s == 0 && pp.t == 1) {
        pp.path = {0, 1};
        pp.cost = 1;
      }
    }
    bad.objective = 3 + 1 + 2 + 2;
    CHECK(has_code(validate_solution(inst, bad, PathMode::kWalk),
                   "color-coverage"));
  }
}

TEST_CASE("solution json roundtrip") {
  const Instance inst = triangle_instance();
  const ExplicitSolution sol =
      brute_force_solve(inst, PathMode::kWalk).solution;
  const std::string text = explicit_solution_json(sol);
  const ExplicitSolution back = explicit_solution_from_json(text);
  CHECK(back.coloring.assignment == sol.coloring.assignment);
  CHECK(back.objective == sol.objective);
  CHECK(back.mode == sol.mode);
  REQUIRE(back.pairs.size() == sol.pairs.size());
  for (std::size_t i = 0; i < back.pairs.size(); ++i) {
    CHECK(back.pairs[i].s == sol.pairs[i].s);
    CHECK(back.pairs[i].t == sol.pairs[i].t);
    CHECK(back.pairs[i].path == sol.pairs[i].path);
    CHECK(back.pairs[i].cost == sol.pairs[i].cost);
  }
  CHECK(validate_solution(inst, back, PathMode::kWalk).empty());

  CHECK_THROWS_AS(explicit_solution_from_json("[1,2"), ParseError);
  CHECK_THROWS_AS(explicit_solution_from_json("{\"coloring\":[0]}"),
                  ParseError);
}
