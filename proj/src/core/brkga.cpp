#include "brkga.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

namespace apspc {

void BrkgaParams::validate() const {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  if (pct_e < 0.1 || pct_e > 0.25) {
    throw std::invalid_argument("pct_e must lie in [0.1, 0.25]");
  }
  if (pct_m < 0.0 || pct_e + pct_m > 1.0) {
    throw std::invalid_argument("pct_e + pct_m must not exceed 1");
  }
  if (pi_e < 1 || pi_e >= pi_t) {
    throw std::invalid_argument("need 1 <= pi_e < pi_t");
  }
  if (bias != "quadratic" && bias != "linear" && bias != "constant") {
    throw std::invalid_argument("unknown bias function: " + bias);
  }
  if (m < 1) throw std::invalid_argument("need at least one population");
  if (ipr.sel != "randS") {
    throw std::invalid_argument("unknown ipr selection: " + ipr.sel);
  }
  if (ipr.md < 0.0 || ipr.md > 1.0) {
    throw std::invalid_argument("ipr.md must lie in [0, 1]");
  }
  if (ipr.pct_p <= 0.0 || ipr.pct_p > 1.0) {
    throw std::invalid_argument("ipr.pct_p must lie in (0, 1]");
  }
  if (time_limit_s <= 0.0) {
    throw std::invalid_argument("time limit must be positive");
  }
  if (wi < 1) throw std::invalid_argument("wi must be >= 1");
  if (exchange_interval < 1 || exchange_count < 1) {
    throw std::invalid_argument("bad elite exchange settings");
  }
}

bool better(const DecodedSolution& a, const DecodedSolution& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) return a.fitness < b.fitness;
  if (a.covered_pairs != b.covered_pairs) {
    return a.covered_pairs > b.covered_pairs;
  }
  if (a.colors_present != b.colors_present) {
    return a.colors_present > b.colors_present;
  }
  return a.cost_c < b.cost_c;
}

bool should_color_node(NodeId node, const Chromosome& keys, Cost color_cost,
                       const GraphStats& stats, Engine& gen) {
  const int n = static_cast<int>(stats.node_degrees.size());
  const double avg_node_weight = stats.avg_node_weight[node];
  const double color_cost_factor =
      static_cast<double>(color_cost) / (avg_node_weight * (n - 1));
  if (color_cost_factor <= 0.1) return true;
  const double key = keys[node];
  double node_probability = 1.0;
  if (key >= 0.1) {
    node_probability = key *
                       (stats.node_degrees[node] / stats.avg_graph_degree) *
                       (stats.avg_graph_weight / avg_node_weight);
  }
  return canonical01(gen) < node_probability;
}

Decoder::Decoder(const Instance& inst)
    : inst_(&inst),
      stats_(graph_stats(inst.graph())),
      search_(inst.graph(), inst.num_colors()) {}

Coloring Decoder::to_coloring(const Chromosome& keys) const {
  const int n = inst_->node_count();
  if (static_cast<int>(keys.size()) != n) {
    throw std::invalid_argument("chromosome length must equal node count");
  }
  Engine gen(seed_from_key(keys[0]));
  Coloring col;
  col.assignment.assign(n, kUncolored);
  const auto colors = static_cast<std::uint64_t>(inst_->num_colors());
  for (NodeId i = 0; i < n; ++i) {
    const int color = static_cast<int>(uniform_below(gen, colors));
    const Cost cost = inst_->color_costs()[color];
    if (should_color_node(i, keys, cost, stats_, gen)) {
      col.assignment[i] = color;
    }
  }
  return col;
}

DecodedSolution Decoder::evaluate_fresh(const Coloring& coloring,
                                        CoveringSearch& search) const {
  DecodedSolution s;
  s.coloring = coloring;
  s.cost_c = coloring_cost(coloring, inst_->color_costs());
  s.colors_present =
      std::popcount(present_mask(coloring, inst_->num_colors()));
  const auto ap = all_pairs_covering_cost(search, coloring);
  s.feasible = ap.feasible;
  s.covered_pairs = ap.covered_pairs;
  if (ap.feasible) {
    s.cost_p = ap.total_path_cost;
    s.fitness = s.cost_c + s.cost_p;
  }
  return s;
}

const DecodedSolution& Decoder::evaluate(const Coloring& coloring) {
  auto it = cache_.find(coloring.assignment);
  if (it == cache_.end()) {
    it = cache_.emplace(coloring.assignment, evaluate_fresh(coloring, search_))
             .first;
  }
  return it->second;
}

DecodedSolution Decoder::decode(const Chromosome& keys) {
  return evaluate(to_coloring(keys));
}

const DecodedSolution* Decoder::find_cached(const Coloring& coloring) const {
  const auto it = cache_.find(coloring.assignment);
  return it == cache_.end() ? nullptr : &it->second;
}

void Decoder::store(const Coloring& coloring, const DecodedSolution& sol) {
  cache_.emplace(coloring.assignment, sol);
}

namespace {

struct Sizes {
  int p;
  int pe;
  int pm;
  int pc;
};

Sizes compute_sizes(const BrkgaParams& params, int n) {
  Sizes s;
  s.p = static_cast<int>(std::ceil(params.alpha * n));
  s.pe = static_cast<int>(std::ceil(s.p * params.pct_e));
  s.pm = static_cast<int>(std::ceil(s.p * params.pct_m));
  s.pc = s.p - s.pe - s.pm;
  if (s.pc < 0) {
    throw std::invalid_argument(
        "pct_e and pct_m leave no room for crossover at p = " +
        std::to_string(s.p));
  }
  if (s.pe < params.pi_e) {
    throw std::invalid_argument("elite partition smaller than pi_e");
  }
  if (s.p - s.pe < params.pi_t - params.pi_e) {
    throw std::invalid_argument("non-elite partition smaller than pi_t-pi_e");
  }
  return s;
}

std::vector<double> bias_weights(const std::string& bias, int pi_t) {
  std::vector<double> w(pi_t);
  for (int r = 1; r <= pi_t; ++r) {
    if (bias == "quadratic") {
      w[r - 1] = 1.0 / (static_cast<double>(r) * r);
    } else if (bias == "linear") {
      w[r - 1] = 1.0 / r;
    } else {
      w[r - 1] = 1.0;
    }
  }
  return w;
}

Chromosome random_chromosome(int n, Engine& g) {
  Chromosome c(n);
  for (double& k : c) k = canonical01(g);
  return c;
}

void draw_distinct(Engine& g, int lo, int hi, int count,
                   std::vector<int>& out) {
  out.clear();
  while (static_cast<int>(out.size()) < count) {
    const int x =
        lo + static_cast<int>(uniform_below(g, static_cast<std::uint64_t>(
                                                   hi - lo)));
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
}

Chromosome crossover_child(const Population& prev, const Sizes& sz,
                           const BrkgaParams& params,
                           const std::vector<double>& bias, Engine& gen) {
  std::vector<int> elite_idx;
  std::vector<int> other_idx;
  draw_distinct(gen, 0, sz.pe, params.pi_e, elite_idx);
  draw_distinct(gen, sz.pe, sz.p, params.pi_t - params.pi_e, other_idx);
  std::sort(elite_idx.begin(), elite_idx.end());
  std::sort(other_idx.begin(), other_idx.end());
  // Concatenated indices are ascending, and the population is sorted
  // best-first, so list position is exactly the parent's rank.
  std::vector<const Chromosome*> parents;
  parents.reserve(params.pi_t);
  for (int idx : elite_idx) parents.push_back(&prev[idx].keys);
  for (int idx : other_idx) parents.push_back(&prev[idx].keys);

  const double total = std::accumulate(bias.begin(), bias.end(), 0.0);
  const int n = static_cast<int>(parents[0]->size());
  Chromosome child(n);
  for (int i = 0; i < n; ++i) {
    double u = canonical01(gen) * total;
    int pick = 0;
    for (; pick + 1 < params.pi_t; ++pick) {
      u -= bias[pick];
      if (u < 0.0) break;
    }
    child[i] = (*parents[pick])[i];
  }
  return child;
}

}  // namespace

void exchange_elites(std::vector<Population>& populations, int count) {
  const int m = static_cast<int>(populations.size());
  if (m < 2) return;
  if (count < 1) throw std::invalid_argument("exchange count must be >= 1");
  for (const Population& pop : populations) {
    if ((m - 1) * count >= static_cast<int>(pop.size())) {
      throw std::invalid_argument("elite exchange would replace a whole "
                                  "population");
    }
  }
  std::vector<std::vector<Individual>> tops(m);
  for (int j = 0; j < m; ++j) {
    tops[j].assign(populations[j].begin(), populations[j].begin() + count);
  }
  for (int j = 0; j < m; ++j) {
    Population& pop = populations[j];
    std::size_t w = pop.size();
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      for (const Individual& ind : tops[k]) pop[--w] = ind;
    }
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) {
                       return better(a.sol, b.sol);
                     });
  }
}

namespace {

std::vector<int> key_ranks(const Chromosome& keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return a < b;
  });
  std::vector<int> rank(keys.size());
  for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
    rank[order[pos]] = pos;
  }
  return rank;
}

}  // namespace

Chromosome ipr_permutation(const Chromosome& a, const Chromosome& b,
                           const IprParams& params, Decoder& decoder) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("chromosomes differ in length");
  }
  if (a == b) return a;
  const int n = static_cast<int>(a.size());
  const auto rank_a = key_ranks(a);
  const auto rank_b = key_ranks(b);
  int diff = 0;
  for (int i = 0; i < n; ++i) diff += rank_a[i] != rank_b[i];
  if (static_cast<double>(diff) / n < params.md) return a;
  const int steps = static_cast<int>(std::floor(params.pct_p * diff));

  bool have_best = false;
  DecodedSolution best_sol;
  Chromosome best_keys;
  auto walk = [&](const Chromosome& base, const std::vector<int>& base_rank,
                  const std::vector<int>& guide_rank) {
    Chromosome cur = base;
    std::vector<int> rank = base_rank;
    for (int step = 0; step < steps; ++step) {
      int i = 0;
      while (i < n && rank[i] == guide_rank[i]) ++i;
      if (i == n) break;
      int j = i + 1;
      while (j < n && rank[j] != guide_rank[i]) ++j;
      std::swap(cur[i], cur[j]);
      std::swap(rank[i], rank[j]);
      const DecodedSolution sol = decoder.decode(cur);
      if (!have_best || better(sol, best_sol)) {
        have_best = true;
        best_sol = sol;
        best_keys = cur;
      }
    }
  };
  walk(a, rank_a, rank_b);
  walk(b, rank_b, rank_a);
  return have_best ? best_keys : a;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void evaluate_pending(Decoder& decoder, std::vector<Individual*>& pending,
                      int jobs) {
  if (jobs <= 1 || pending.size() < 2) {
    for (Individual* ind : pending) {
      ind->sol = decoder.evaluate(decoder.to_coloring(ind->keys));
    }
    return;
  }
  struct Task {
    Coloring coloring;
    DecodedSolution sol;
  };
  std::vector<Task> tasks;
  std::map<std::vector<int>, int> task_index;
  std::vector<int> task_of(pending.size(), -1);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    Coloring c = decoder.to_coloring(pending[i]->keys);
    if (const DecodedSolution* hit = decoder.find_cached(c)) {
      pending[i]->sol = *hit;
      continue;
    }
    const auto [it, fresh] =
        task_index.emplace(c.assignment, static_cast<int>(tasks.size()));
    if (fresh) tasks.push_back({std::move(c), {}});
    task_of[i] = it->second;
  }
  const int workers = std::min<int>(jobs, static_cast<int>(tasks.size()));
  if (workers > 1) {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      threads.emplace_back([&] {
        CoveringSearch local(decoder.instance().graph(),
                             decoder.instance().num_colors());
        for (std::size_t k = cursor.fetch_add(1); k < tasks.size();
             k = cursor.fetch_add(1)) {
          tasks[k].sol = decoder.evaluate_fresh(tasks[k].coloring, local);
        }
      });
    }
    for (auto& th : threads) th.join();
  } else {
    CoveringSearch local(decoder.instance().graph(),
                         decoder.instance().num_colors());
    for (Task& task : tasks) {
      task.sol = decoder.evaluate_fresh(task.coloring, local);
    }
  }
  for (const Task& task : tasks) decoder.store(task.coloring, task.sol);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (task_of[i] >= 0) pending[i]->sol = tasks[task_of[i]].sol;
  }
}

}  // namespace

EvolveResult evolve(const Instance& inst, const BrkgaParams& params,
                    int jobs) {
  params.validate();
  const int n = inst.node_count();
  const Sizes sz = compute_sizes(params, n);
  const auto bias = bias_weights(params.bias, params.pi_t);
  Decoder decoder(inst);

  const auto t0 = Clock::now();
  std::vector<Population> pops(params.m);
  std::vector<Individual*> pending;
  EvolveResult result;
  DecodedSolution incumbent;
  bool have_incumbent = false;
  int streak = 0;

  for (int generation = 1;; ++generation) {
    if (generation == 1) {
      for (int j = 0; j < params.m; ++j) {
        pops[j].resize(sz.p);
        for (int s = 0; s < sz.p; ++s) {
          Engine g(derive_seed(params.master_seed, 1, j, s));
          pops[j][s].keys = random_chromosome(n, g);
        }
      }
    } else {
      for (int j = 0; j < params.m; ++j) {
        const Population& prev = pops[j];
        Population next(sz.p);
        for (int s = 0; s < sz.pe; ++s) next[s] = prev[s];
        for (int s = sz.pe; s < sz.pe + sz.pc; ++s) {
          Engine g(derive_seed(params.master_seed, generation, j, s));
          next[s].keys = crossover_child(prev, sz, params, bias, g);
        }
        for (int s = sz.pe + sz.pc; s < sz.p; ++s) {
          Engine g(derive_seed(params.master_seed, generation, j, s));
          next[s].keys = random_chromosome(n, g);
        }
        pops[j] = std::move(next);
      }
    }

    pending.clear();
    const int first_new = generation == 1 ? 0 : sz.pe;
    for (int j = 0; j < params.m; ++j) {
      for (int s = first_new; s < sz.p; ++s) pending.push_back(&pops[j][s]);
    }
    evaluate_pending(decoder, pending, jobs);
    for (int j = 0; j < params.m; ++j) {
      std::stable_sort(pops[j].begin(), pops[j].end(),
                       [](const Individual& a, const Individual& b) {
                         return better(a.sol, b.sol);
                       });
    }

    if (params.m >= 2 && generation % params.exchange_interval == 0) {
      exchange_elites(pops, params.exchange_count);
      if (params.ipr.enabled) {
        for (int j = 0; j < params.m; ++j) {
          for (int k = j + 1; k < params.m; ++k) {
            const Chromosome cand = ipr_permutation(
                pops[j][0].keys, pops[k][0].keys, params.ipr, decoder);
            Individual ind;
            ind.keys = cand;
            ind.sol = decoder.decode(cand);
            if (better(ind.sol, pops[j].back().sol)) {
              pops[j].back() = std::move(ind);
              std::stable_sort(pops[j].begin(), pops[j].end(),
                               [](const Individual& a, const Individual& b) {
                                 return better(a.sol, b.sol);
                               });
            }
          }
        }
      }
    }

    bool improved = false;
    for (int j = 0; j < params.m; ++j) {
      const DecodedSolution& top = pops[j][0].sol;
      if (!have_incumbent || better(top, incumbent)) {
        incumbent = top;
        have_incumbent = true;
        improved = true;
        result.best_time_s = seconds_since(t0);
      }
    }
    result.generations = generation;
    result.history.push_back({generation, incumbent.feasible,
                              incumbent.feasible ? incumbent.fitness
                                                 : kUndefinedCost,
                              seconds_since(t0)});
    streak = improved ? 0 : streak + 1;

    if (seconds_since(t0) >= params.time_limit_s) {
      result.stop_reason = StopReason::kTimeLimit;
      break;
    }
    if (streak >= params.wi) {
      result.stop_reason = StopReason::kStagnation;
      break;
    }
  }

  result.best = incumbent;
  result.found_feasible = incumbent.feasible;
  result.total_time_s = seconds_since(t0);
  return result;
}

std::string run_report_json(const EvolveResult& result,
                            const BrkgaParams& params,
                            const std::string& instance_ref) {
  nlohmann::ordered_json j;
  j["instance_ref"] = instance_ref;
  j["params"] = {{"alpha", params.alpha},
                 {"pct_e", params.pct_e},
                 {"pct_m", params.pct_m},
                 {"pi_t", params.pi_t},
                 {"pi_e", params.pi_e},
                 {"bias", params.bias},
                 {"m", params.m},
                 {"ipr",
                  {{"enabled", params.ipr.enabled},
                   {"sel", params.ipr.sel},
                   {"md", params.ipr.md},
                   {"pct_p", params.ipr.pct_p}}},
                 {"time_limit_s", params.time_limit_s},
                 {"wi", params.wi},
                 {"master_seed", params.master_seed},
                 {"exchange_interval", params.exchange_interval},
                 {"exchange_count", params.exchange_count}};
  j["status"] = result.found_feasible ? "ok" : "no-feasible-solution";
  j["stop_reason"] = result.stop_reason == StopReason::kTimeLimit
                         ? "time-limit"
                         : "stagnation";
  if (result.found_feasible) {
    j["best"] = {{"coloring", result.best.coloring.assignment},
                 {"fitness", result.best.fitness},
                 {"cost_c", result.best.cost_c},
                 {"cost_p", result.best.cost_p}};
  } else {
    j["best"] = nullptr;
  }
  j["best_time_s"] = result.best_time_s;
  j["total_time_s"] = result.total_time_s;
  j["generations"] = result.generations;
  auto history = nlohmann::ordered_json::array();
  for (const HistoryEntry& e : result.history) {
    nlohmann::ordered_json h;
    h["generation"] = e.generation;
    if (e.feasible) {
      h["best_fitness"] = e.best_fitness;
    } else {
      h["best_fitness"] = nullptr;
    }
    h["time_s"] = e.time_s;
    history.push_back(std::move(h));
  }
  j["history"] = std::move(history);
  return j.dump(2) + "\n";
}

}  // namespace apspc
