#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covering_path.hpp"
#include "instance.hpp"
#include "rng.hpp"

namespace apspc {

// Random-key vector; one key per node, all in [0,1]. Key 0 doubles as the
// seed of the decoder's internal generator.
using Chromosome = std::vector<double>;

struct IprParams {
  bool enabled = false;
  std::string sel = "randS";
  double md = 0.15;
  double pct_p = 0.85;
};

struct BrkgaParams {
  double alpha = 20.0;   // population size factor, p = ceil(alpha*n)
  double pct_e = 0.1;    // elite fraction
  double pct_m = 0.6;    // mutant fraction
  int pi_t = 3;          // parents per crossover
  int pi_e = 1;          // of which elite
  std::string bias = "quadratic";  // phi(r): quadratic 1/r^2, linear 1/r,
                                   // constant 1
  int m = 2;             // number of populations
  IprParams ipr;
  double time_limit_s = 900.0;
  int wi = 10;           // max consecutive non-improving generations
  std::uint64_t master_seed = 0;
  int exchange_interval = 25;  // generations between elite exchanges
  int exchange_count = 2;      // individuals each population sends

  void validate() const;  // throws std::invalid_argument
};

struct DecodedSolution {
  Coloring coloring;
  Cost fitness = kUndefinedCost;
  Cost cost_c = 0;
  Cost cost_p = kUndefinedCost;
  bool feasible = false;
  long long covered_pairs = 0;
  int colors_present = 0;
};

// Strict ordering: feasible beats infeasible; feasible solutions compare
// by fitness; infeasible ones by covered pairs, then color coverage, then
// cheaper coloring (a gradient toward feasibility).
bool better(const DecodedSolution& a, const DecodedSolution& b);

// Chromosome -> coloring -> fitness, with an instance-wide cache keyed by
// the coloring (distinct chromosomes often collapse to one coloring).
class Decoder {
 public:
  explicit Decoder(const Instance& inst);

  Coloring to_coloring(const Chromosome& keys) const;
  const DecodedSolution& evaluate(const Coloring& coloring);
  DecodedSolution decode(const Chromosome& keys);

  // Pure evaluation against a caller-owned search workspace; safe to call
  // from several threads with distinct workspaces.
  DecodedSolution evaluate_fresh(const Coloring& coloring,
                                 CoveringSearch& search) const;
  const DecodedSolution* find_cached(const Coloring& coloring) const;
  void store(const Coloring& coloring, const DecodedSolution& sol);

  const Instance& instance() const { return *inst_; }
  const GraphStats& stats() const { return stats_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  const Instance* inst_;
  GraphStats stats_;
  CoveringSearch search_;
  std::map<std::vector<int>, DecodedSolution> cache_;
};

// Coloring decision for one node (two-phase rule): certain when the color
// is cheap relative to the node's incident weights, otherwise a biased
// coin driven by the node's key, degree and weights.
bool should_color_node(NodeId node, const Chromosome& keys, Cost color_cost,
                       const GraphStats& stats, Engine& gen);

struct Individual {
  Chromosome keys;
  DecodedSolution sol;
};
using Population = std::vector<Individual>;

struct HistoryEntry {
  int generation = 0;
  bool feasible = false;
  Cost best_fitness = kUndefinedCost;
  double time_s = 0.0;
};

enum class StopReason { kStagnation, kTimeLimit };

struct EvolveResult {
  DecodedSolution best;
  bool found_feasible = false;
  StopReason stop_reason = StopReason::kStagnation;
  int generations = 0;
  double best_time_s = 0.0;
  double total_time_s = 0.0;
  std::vector<HistoryEntry> history;
};

EvolveResult evolve(const Instance& inst, const BrkgaParams& params,
                    int jobs = 1);

// Each population receives the top `count` members of every other one,
// replacing its worst; populations are re-sorted. No-op for m == 1.
void exchange_elites(std::vector<Population>& populations, int count);

// Bidirectional key-rank path relinking: returns the best chromosome
// among the evaluated intermediates, or `a` when the rank distance is
// below params.md (or nothing was evaluated). Deterministic.
Chromosome ipr_permutation(const Chromosome& a, const Chromosome& b,
                           const IprParams& params, Decoder& decoder);

std::string run_report_json(const EvolveResult& result,
                            const BrkgaParams& params,
                            const std::string& instance_ref);

}  // namespace apspc
