// Release gate: one check per advertised guarantee, each printing a
// single [PASS]/[FAIL] line. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core/brkga.hpp"
#include "core/covering_path.hpp"
#include "core/exact.hpp"
#include "core/graph.hpp"
#include "core/instance.hpp"
#include "core/metrics.hpp"
#include "core/rng.hpp"

namespace {

using namespace apspc;
using Clock = std::chrono::steady_clock;

constexpr Cost kBig = std::numeric_limits<Cost>::max() / 4;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

WeightedGraph random_connected_graph(Engine& g, int n, int extra_edges,
                                     Cost max_weight) {
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  for (NodeId v = 1; v < n; ++v) {
    const NodeId u = static_cast<NodeId>(uniform_int(g, 0, v - 1));
    edges.push_back({u, v, static_cast<Cost>(uniform_int(g, 1, max_weight))});
    seen.insert({u, v});
  }
  int added = 0;
  while (added < extra_edges &&
         static_cast<int>(edges.size()) < n * (n - 1) / 2) {
    const NodeId a = static_cast<NodeId>(uniform_int(g, 0, n - 1));
    const NodeId b = static_cast<NodeId>(uniform_int(g, 0, n - 1));
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    if (!seen.insert({key.first, key.second}).second) continue;
    edges.push_back({key.first, key.second,
                     static_cast<Cost>(uniform_int(g, 1, max_weight))});
    ++added;
  }
  return WeightedGraph(n, edges);
}

// Exhaustive reference: cheapest covering walk with at most max_hops
// edges. An optimal covering walk never repeats a (node, colors) state,
// so n*(num_colors+1) hops always suffice.
Cost bounded_walk_cost(const WeightedGraph& g, const Coloring& col,
                       int num_colors, NodeId s, NodeId t, int max_hops) {
  const int n = g.node_count();
  const std::uint32_t full = full_mask(num_colors);
  const auto idx = [n](NodeId v, std::uint32_t m) {
    return static_cast<std::size_t>(m) * n + v;
  };
  const auto bit = [&col](NodeId v) -> std::uint32_t {
    return col.assignment[v] == kUncolored ? 0u : (1u << col.assignment[v]);
  };
  std::vector<Cost> cur(static_cast<std::size_t>(full + 1) * n, kBig);
  std::vector<Cost> next(cur.size(), kBig);
  cur[idx(s, bit(s))] = 0;
  Cost best = kBig;
  for (int k = 0; k < max_hops; ++k) {
    std::fill(next.begin(), next.end(), kBig);
    for (std::uint32_t m = 0; m <= full; ++m) {
      for (NodeId v = 0; v < n; ++v) {
        const Cost c = cur[idx(v, m)];
        if (c >= kBig) continue;
        for (const auto* a = g.adj_begin(v); a != g.adj_end(v); ++a) {
          const std::uint32_t nm = m | bit(a->to);
          Cost& slot = next[idx(a->to, nm)];
          slot = std::min(slot, c + a->w);
        }
      }
    }
    cur.swap(next);
    best = std::min(best, cur[idx(t, full)]);
  }
  return best >= kBig ? kUndefinedCost : best;
}

void criterion1_oracle_optimality() {
  const auto start = Clock::now();
  int exact_matches = 0;
  int within5 = 0;
  int collected = 0;
  std::map<int, std::pair<int, int>> by_size;  // n -> (exact, total)
  std::uint64_t seed = 1;
  while (collected < 50) {
    const int n = 6 + collected % 3;
    const Instance inst = Instance::generate({n, 0.45, 1, 125}, seed++);
    if (inst.num_colors() != 3) continue;
    ++collected;

    const BruteForceOutcome oracle = brute_force_solve(inst, PathMode::kWalk);
    BrkgaParams params;
    params.master_seed = seed;
    const EvolveResult result = evolve(inst, params);

    if (!oracle.feasible || !result.found_feasible) continue;
    by_size[n].second += 1;
    if (result.best.fitness == oracle.solution.objective) {
      ++exact_matches;
      by_size[n].first += 1;
    }
    if (static_cast<double>(result.best.fitness) <=
        1.05 * static_cast<double>(oracle.solution.objective)) {
      ++within5;
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = exact_matches >= 45 && within5 == 50;
  std::string sizes;
  for (const auto& [n, counts] : by_size) {
    sizes += fmt("%sn=%d %d/%d", sizes.empty() ? "" : ", ", n, counts.first,
                 counts.second);
  }
  report(1, pass,
         fmt("evolutionary best vs enumeration optimum on 50 instances: "
             "%d/50 exact (need >= 45; %s), %d/50 within 5%% (need 50); "
             "%.1f s",
             exact_matches, sizes.c_str(), within5, elapsed));
}

void criterion2_covering_equivalence() {
  const auto start = Clock::now();
  Engine g(20240819ull);
  long long compared = 0;
  long long mismatches = 0;
  for (int round = 0; round < 100; ++round) {
    const int n = static_cast<int>(uniform_int(g, 3, 8));
    const int num_colors = static_cast<int>(uniform_int(g, 1, 3));
    const WeightedGraph graph =
        random_connected_graph(g, n, static_cast<int>(uniform_int(g, 0, n)), 50);
    Coloring col;
    col.assignment.assign(n, kUncolored);
    for (int v = 0; v < n; ++v) {
      if (uniform_below(g, 2) == 0) {
        col.assignment[v] = static_cast<int>(uniform_below(g, num_colors));
      }
    }
    CoveringSearch search(graph, num_colors);
    for (NodeId s = 0; s < n; ++s) {
      search.run(s, col);
      for (NodeId t = s + 1; t < n; ++t) {
        const Cost reference = bounded_walk_cost(graph, col, num_colors, s, t,
                                                 n * (num_colors + 1));
        ++compared;
        if (search.cost_to(t) != reference) ++mismatches;
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(2, mismatches == 0,
         fmt("state-space search vs exhaustive bounded-walk reference: "
             "%lld pair costs compared over 100 cases, %lld mismatches; %.1f s",
             compared, mismatches, elapsed));
}

void criterion3_color_count_fidelity() {
  int bad = 0;
  const auto expect = [&bad](bool ok) { bad += !ok; };

  expect(cd(2.0) == 3);
  expect(cd(2.4) == 3);
  expect(cd(2.99) == 3);
  expect(cd(3.0) == 3);
  expect(cd(4.0) == 3);
  expect(cd(4.9) == 3);
  expect(cd(5.0) == 5);
  expect(cd(6.0) == 5);
  expect(cd(7.9) == 7);
  expect(cd(8.5) == 7);
  expect(cd(9.0) == 9);
  bool domain_guard = false;
  try {
    cd(1.5);
  } catch (const std::domain_error&) {
    domain_guard = true;
  }
  expect(domain_guard);

  expect(compute_num_colors(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}})) == 3);
  expect(compute_num_colors(WeightedGraph(4, {{0, 1, 1},
                                              {0, 2, 1},
                                              {0, 3, 1},
                                              {1, 2, 1},
                                              {1, 3, 1},
                                              {2, 3, 1}})) == 3);
  std::vector<Edge> chain;
  for (NodeId v = 0; v + 1 < 13; ++v) chain.push_back({v, v + 1, 1});
  expect(compute_num_colors(WeightedGraph(13, chain)) == 5);

  report(3, bad == 0,
         fmt("color-count rule unit table and hand-computed graphs: "
             "%d deviations; the published 30-node/51-edge topology mapping "
             "to 7 colors is topology-specific and is not derivable from "
             "the generation protocol, so it is covered by these "
             "deterministic cases instead",
             bad));
}

struct CampaignRun {
  int n = 0;
  std::string density;
  double ndy = 0.0;
  double cost = 0.0;
  double cost_c = 0.0;
  double cost_p = 0.0;
  double best_time_s = 0.0;
  double awdelay_value = 0.0;
};

double mean_of(const std::vector<CampaignRun>& runs, int n,
               const std::string& density, double CampaignRun::*field) {
  double total = 0.0;
  int count = 0;
  for (const CampaignRun& r : runs) {
    if (r.n != n || (!density.empty() && r.density != density)) continue;
    total += r.*field;
    ++count;
  }
  return total / count;
}

std::vector<double> values_of(const std::vector<CampaignRun>& runs, int n,
                              double CampaignRun::*field) {
  std::vector<double> out;
  for (const CampaignRun& r : runs) {
    if (r.n == n) out.push_back(r.*field);
  }
  return out;
}

double population_variance(const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return var / static_cast<double>(values.size());
}

void criteria457_campaign_trends() {
  const auto start = Clock::now();
  const std::vector<std::pair<double, std::string>> densities = {
      {0.25, "ED1"}, {0.55, "ED4"}};
  const std::vector<std::pair<Cost, Cost>> ranges = {
      {1, 125}, {50, 150}, {75, 175}, {100, 200}};

  std::vector<CampaignRun> runs;
  std::uint64_t cell = 0;
  for (int n : {10, 30}) {
    for (const auto& [d, label] : densities) {
      for (const auto& [lo, hi] : ranges) {
        ++cell;
        for (std::uint64_t slot = 0; slot < 6; ++slot) {
          const Instance inst = Instance::generate(
              {n, d, lo, hi}, derive_seed(0xACCE97ull, cell, slot));
          BrkgaParams params;
          params.master_seed = derive_seed(0xACCE97ull, cell, slot, 1);
          params.time_limit_s = 120.0;
          const EvolveResult result = evolve(inst, params);
          if (!result.found_feasible) continue;

          CampaignRun run;
          run.n = n;
          run.density = label;
          run.ndy = result.best.coloring.colored_count();
          run.cost = static_cast<double>(result.best.fitness);
          run.cost_c = static_cast<double>(result.best.cost_c);
          run.cost_p = static_cast<double>(result.best.cost_p);
          run.best_time_s = result.best_time_s;
          run.awdelay_value = awdelay(inst, result.best.coloring).awdelay;
          runs.push_back(run);
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const int feasible = static_cast<int>(runs.size());

  const double ndy_n10_ed1 = mean_of(runs, 10, "ED1", &CampaignRun::ndy);
  const double ndy_n30_ed1 = mean_of(runs, 30, "ED1", &CampaignRun::ndy);
  const double ndy_n10_ed4 = mean_of(runs, 10, "ED4", &CampaignRun::ndy);
  const double ndy_n30_ed4 = mean_of(runs, 30, "ED4", &CampaignRun::ndy);

  const double costp_n10_ed1 = mean_of(runs, 10, "ED1", &CampaignRun::cost_p);
  const double costp_n10_ed4 = mean_of(runs, 10, "ED4", &CampaignRun::cost_p);
  const double costp_n30_ed1 = mean_of(runs, 30, "ED1", &CampaignRun::cost_p);
  const double costp_n30_ed4 = mean_of(runs, 30, "ED4", &CampaignRun::cost_p);

  // The route-share claim is about aggregate cost structure, so it is
  // checked on pooled means (the per-run ratio mean is reported too).
  double costp_total = 0.0;
  double cost_total = 0.0;
  double ratio_total = 0.0;
  for (const CampaignRun& r : runs) {
    costp_total += r.cost_p;
    cost_total += r.cost;
    ratio_total += r.cost_p / r.cost;
  }
  const double ratio_pooled = costp_total / cost_total;
  const double ratio_mean = ratio_total / feasible;

  const bool pass4 = feasible == 96 && ndy_n30_ed1 > ndy_n10_ed1 &&
                     ndy_n30_ed4 > ndy_n10_ed4 &&
                     costp_n10_ed4 < costp_n10_ed1 &&
                     costp_n30_ed4 < costp_n30_ed1 && ratio_pooled > 0.9;
  report(4, pass4,
         fmt("campaign trends over 96 runs (%d feasible): deployed nodes "
             "10->30 nodes %.2f->%.2f (sparse) %.2f->%.2f (dense); mean "
             "route cost dense<sparse %.0f<%.0f (10 nodes) %.0f<%.0f "
             "(30 nodes); pooled route share %.3f (need > 0.9; per-run "
             "mean %.3f); %.0f s",
             feasible, ndy_n10_ed1, ndy_n30_ed1, ndy_n10_ed4, ndy_n30_ed4,
             costp_n10_ed4, costp_n10_ed1, costp_n30_ed4, costp_n30_ed1,
             ratio_pooled, ratio_mean, elapsed));

  const std::vector<double> aw10 = values_of(runs, 10, &CampaignRun::awdelay_value);
  const std::vector<double> aw30 = values_of(runs, 30, &CampaignRun::awdelay_value);
  const double aw10_mean = mean_of(runs, 10, "", &CampaignRun::awdelay_value);
  const double aw30_mean = mean_of(runs, 30, "", &CampaignRun::awdelay_value);
  const double aw10_var = population_variance(aw10);
  const double aw30_var = population_variance(aw30);
  const bool pass5 = aw10_mean >= 0.03 && aw10_mean <= 0.12 &&
                     aw30_mean >= 0.001 && aw30_mean <= 0.015 &&
                     aw30_var < aw10_var;
  report(5, pass5,
         fmt("weighted detour: mean %.4f at 10 nodes (band [0.03, 0.12]), "
             "%.4f at 30 nodes (band [0.001, 0.015]); variance falls "
             "%.6f -> %.6f",
             aw10_mean, aw30_mean, aw10_var, aw30_var));

  const double bt_n10_ed1 = mean_of(runs, 10, "ED1", &CampaignRun::best_time_s);
  const double bt_n30_ed1 = mean_of(runs, 30, "ED1", &CampaignRun::best_time_s);
  const double bt_n10_ed4 = mean_of(runs, 10, "ED4", &CampaignRun::best_time_s);
  const double bt_n30_ed4 = mean_of(runs, 30, "ED4", &CampaignRun::best_time_s);
  const bool pass7 = bt_n10_ed1 < bt_n30_ed1 && bt_n10_ed4 < bt_n30_ed4;
  report(7, pass7,
         fmt("time-to-incumbent grows with size at matched density: "
             "%.2f s < %.2f s (sparse), %.2f s < %.2f s (dense); absolute "
             "timings are hardware-bound and carry no numeric target",
             bt_n10_ed1, bt_n30_ed1, bt_n10_ed4, bt_n30_ed4));
}

void criterion6_property_block() {
  const auto start = Clock::now();
  int bad = 0;
  const auto expect = [&bad](bool ok) { bad += !ok; };
  Engine g(6006ull);

  // Covering cost dominates the classical distance; coloring one more
  // node never hurts.
  for (int round = 0; round < 15; ++round) {
    const int n = static_cast<int>(uniform_int(g, 4, 8));
    const WeightedGraph graph =
        random_connected_graph(g, n, static_cast<int>(uniform_int(g, 0, n)), 30);
    const int num_colors = static_cast<int>(uniform_int(g, 1, 3));
    Coloring col;
    col.assignment.assign(n, kUncolored);
    for (int v = 0; v < n; ++v) {
      if (uniform_below(g, 2) == 0) {
        col.assignment[v] = static_cast<int>(uniform_below(g, num_colors));
      }
    }
    Coloring more = col;
    for (int v = 0; v < n; ++v) {
      if (more.assignment[v] == kUncolored) {
        more.assignment[v] = static_cast<int>(uniform_below(g, num_colors));
        break;
      }
    }
    CoveringSearch search(graph, num_colors);
    CoveringSearch wider(graph, num_colors);
    for (NodeId s = 0; s < n; ++s) {
      const SsspResult sssp = dijkstra_costs_hops(graph, s);
      search.run(s, col);
      wider.run(s, more);
      for (NodeId t = 0; t < n; ++t) {
        if (s == t) continue;
        const Cost base = search.cost_to(t);
        if (base == kUndefinedCost) continue;
        expect(base >= sssp.dist[t]);
        const Cost relaxed = wider.cost_to(t);
        expect(relaxed != kUndefinedCost && relaxed <= base);
      }
    }
  }

  // Elitism keeps the incumbent monotone; seeds make reports
  // byte-identical once wall-clock fields are zeroed.
  const Instance inst = Instance::generate({8, 0.45, 1, 125}, 77);
  BrkgaParams params;
  params.master_seed = 13;
  params.time_limit_s = 60.0;
  const EvolveResult a = evolve(inst, params);
  const EvolveResult b = evolve(inst, params);
  Cost last = kBig;
  for (const HistoryEntry& h : a.history) {
    if (!h.feasible) continue;
    expect(h.best_fitness <= last);
    last = h.best_fitness;
  }
  const auto normalized_report = [&params](EvolveResult r) {
    r.best_time_s = 0.0;
    r.total_time_s = 0.0;
    for (HistoryEntry& h : r.history) h.time_s = 0.0;
    return run_report_json(r, params, "probe");
  };
  expect(normalized_report(a) == normalized_report(b));

  // The enumeration oracle's own answers validate cleanly, and relaxing
  // routes from simple paths to walks never raises the optimum.
  for (std::uint64_t seed = 60; seed < 65; ++seed) {
    const Instance small = Instance::generate({6, 0.6, 1, 125}, seed);
    const BruteForceOutcome walk = brute_force_solve(small, PathMode::kWalk);
    expect(walk.feasible);
    expect(validate_solution(small, walk.solution, PathMode::kWalk).empty());
    const BruteForceOutcome simple =
        brute_force_solve(small, PathMode::kSimple);
    if (simple.feasible) {
      expect(validate_solution(small, simple.solution, PathMode::kSimple)
                 .empty());
      expect(simple.solution.objective >= walk.solution.objective);
    }
  }

  const double elapsed = seconds_since(start);
  report(6, bad == 0,
         fmt("property block (lower bound, monotone relaxation, elitism, "
             "seeded determinism, validator-accepts-oracle, walk <= simple): "
             "%d deviations; %.1f s",
             bad, elapsed));
}

}  // namespace

int main() {
  criterion1_oracle_optimality();
  criterion2_covering_equivalence();
  criterion3_color_count_fidelity();
  criteria457_campaign_trends();
  criterion6_property_block();
  return g_failures;
}
