#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apspc.h"

namespace {

using nlohmann::json;

struct CStr {
  char* ptr = nullptr;
  ~CStr() { apspc_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct Handle {
  apspc_instance* ptr = nullptr;
  ~Handle() { apspc_instance_free(ptr); }
};

int exit_code_for(apspc_status rc) {
  if (rc == APSPC_OK) return 0;
  return rc == APSPC_INFEASIBLE ? 2 : 1;
}

int report_failure(apspc_status rc) {
  std::fprintf(stderr, "error: %s\n", apspc_last_error());
  return exit_code_for(rc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot move " + tmp + " into place");
  }
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file_atomic(path, text);
  }
}

std::pair<std::int64_t, std::int64_t> parse_cost_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw std::runtime_error("cost range must look like lo:hi, got '" + text + "'");
  }
  std::size_t lo_end = 0;
  std::size_t hi_end = 0;
  const std::string lo_text = text.substr(0, colon);
  const std::string hi_text = text.substr(colon + 1);
  const std::int64_t lo = std::stoll(lo_text, &lo_end);
  const std::int64_t hi = std::stoll(hi_text, &hi_end);
  if (lo_end != lo_text.size() || hi_end != hi_text.size()) {
    throw std::runtime_error("cost range must look like lo:hi, got '" + text + "'");
  }
  return {lo, hi};
}

apspc_path_mode mode_from(const std::string& name) {
  if (name == "walk") return APSPC_MODE_WALK;
  if (name == "simple") return APSPC_MODE_SIMPLE;
  throw std::runtime_error("mode must be walk or simple");
}

std::string coloring_text_from(const std::string& doc_text) {
  const json doc = json::parse(doc_text);
  if (doc.is_array()) return doc.dump();
  if (doc.is_object()) {
    if (doc.contains("best")) {
      const json& best = doc.at("best");
      if (best.is_null()) {
        throw std::runtime_error("run report holds no feasible solution");
      }
      return best.at("coloring").dump();
    }
    if (doc.contains("coloring")) return doc.at("coloring").dump();
  }
  throw std::runtime_error("input carries no coloring");
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t campaign_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master) + stream);
}

std::string density_label(double d) {
  static constexpr double canonical[] = {0.25, 0.35, 0.45, 0.55};
  for (int i = 0; i < 4; ++i) {
    if (std::fabs(d - canonical[i]) < 1e-9) return "ED" + std::to_string(i + 1);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "D%g", d);
  return buf;
}

std::string range_label(std::int64_t lo, std::int64_t hi) {
  static constexpr std::pair<std::int64_t, std::int64_t> canonical[] = {
      {1, 125}, {50, 150}, {75, 175}, {100, 200}};
  for (int i = 0; i < 4; ++i) {
    if (canonical[i].first == lo && canonical[i].second == hi) {
      return "CR" + std::to_string(i + 1);
    }
  }
  return "CR" + std::to_string(lo) + "-" + std::to_string(hi);
}

struct CampaignRun {
  int n = 0;
  double d = 0.0;
  std::int64_t cost_lo = 0;
  std::int64_t cost_hi = 0;
  std::uint64_t inst_seed = 0;
  std::uint64_t brkga_seed = 0;
  std::string stem;
  json labels;
  bool done = false;
  bool feasible = false;
  json record;
  double awdelay = 0.0;
  std::string error;
};

void run_campaign_cell(CampaignRun& run, const std::string& out_dir,
                       const json& params_base) {
  try {
    Handle inst;
    apspc_status rc = apspc_instance_generate(run.n, run.d, run.cost_lo,
                                              run.cost_hi, run.inst_seed,
                                              &inst.ptr);
    if (rc != APSPC_OK) throw std::runtime_error(apspc_last_error());

    CStr inst_json;
    rc = apspc_instance_to_json(inst.ptr, &inst_json.ptr);
    if (rc != APSPC_OK) throw std::runtime_error(apspc_last_error());
    write_file_atomic(out_dir + "/instances/" + run.stem + ".json",
                      inst_json.str());

    json params = params_base;
    params["master_seed"] = run.brkga_seed;
    CStr report;
    rc = apspc_solve_brkga(inst.ptr, params.dump().c_str(), run.stem.c_str(),
                           1, &report.ptr);
    if (rc != APSPC_OK) throw std::runtime_error(apspc_last_error());
    write_file_atomic(out_dir + "/reports/" + run.stem + ".json",
                      report.str());

    const json rep = json::parse(report.str());
    run.done = true;
    if (rep.at("status").get<std::string>() != "ok") return;

    const json& best = rep.at("best");
    int ndy = 0;
    for (const auto& c : best.at("coloring")) {
      if (c.get<int>() >= 0) ++ndy;
    }
    run.record = json{{"labels", run.labels},
                      {"num_colors", apspc_instance_colors(inst.ptr)},
                      {"best_time_s", rep.at("best_time_s")},
                      {"time_s", rep.at("total_time_s")},
                      {"ndy", ndy},
                      {"cost", best.at("fitness")},
                      {"cost_c", best.at("cost_c")},
                      {"cost_p", best.at("cost_p")}};

    CStr aw;
    rc = apspc_awdelay(inst.ptr, best.at("coloring").dump().c_str(), &aw.ptr);
    if (rc != APSPC_OK) throw std::runtime_error(apspc_last_error());
    run.awdelay = json::parse(aw.str()).at("awdelay").get<double>();
    run.feasible = true;
  } catch (const std::exception& e) {
    run.done = false;
    run.error = run.stem + ": " + e.what();
  }
}

int cmd_gen(int n, double d, const std::string& cr, std::uint64_t seed,
            const std::string& out_path) {
  const auto [lo, hi] = parse_cost_range(cr);
  Handle inst;
  apspc_status rc = apspc_instance_generate(n, d, lo, hi, seed, &inst.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  rc = apspc_instance_save(inst.ptr, out_path.c_str());
  if (rc != APSPC_OK) return report_failure(rc);
  std::printf("%d\n", apspc_instance_colors(inst.ptr));
  return 0;
}

int cmd_solve(const std::string& inst_path, const std::string& out_path,
              const std::string& ref, const json& params, int jobs) {
  Handle inst;
  apspc_status rc = apspc_instance_load(inst_path.c_str(), &inst.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  const std::string reference = ref.empty() ? inst_path : ref;
  CStr report;
  rc = apspc_solve_brkga(inst.ptr, params.dump().c_str(), reference.c_str(),
                         jobs, &report.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  write_or_print(out_path, report.str());
  const json rep = json::parse(report.str());
  if (rep.at("status").get<std::string>() != "ok") {
    std::fprintf(stderr, "no feasible coloring found\n");
    return 2;
  }
  return 0;
}

int cmd_exact(const std::string& inst_path, const std::string& mode,
              const std::string& out_path) {
  Handle inst;
  apspc_status rc = apspc_instance_load(inst_path.c_str(), &inst.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  CStr solution;
  rc = apspc_solve_exact(inst.ptr, mode_from(mode), &solution.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  write_or_print(out_path, solution.str());
  return 0;
}

int cmd_validate(const std::string& inst_path, const std::string& sol_path,
                 const std::string& mode) {
  Handle inst;
  apspc_status rc = apspc_instance_load(inst_path.c_str(), &inst.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  const std::string sol_text = read_file(sol_path);
  CStr violations;
  rc = apspc_validate_solution(inst.ptr, sol_text.c_str(), mode_from(mode),
                               &violations.ptr);
  if (violations.ptr) std::fputs(violations.str().c_str(), stdout);
  if (rc == APSPC_OK) return 0;
  if (rc == APSPC_INFEASIBLE) return 2;
  return report_failure(rc);
}

int cmd_awdelay(const std::string& inst_path, const std::string& source_path,
                const std::string& out_path) {
  Handle inst;
  apspc_status rc = apspc_instance_load(inst_path.c_str(), &inst.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  const std::string coloring = coloring_text_from(read_file(source_path));
  CStr report;
  rc = apspc_awdelay(inst.ptr, coloring.c_str(), &report.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  write_or_print(out_path, report.str());
  return 0;
}

int cmd_campaign(const std::vector<int>& nodes,
                 const std::vector<double>& densities,
                 const std::vector<std::string>& cost_ranges, int cells,
                 std::uint64_t master_seed, const json& params_base, int jobs,
                 const std::string& out_dir) {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  ranges.reserve(cost_ranges.size());
  for (const std::string& text : cost_ranges) {
    ranges.push_back(parse_cost_range(text));
  }

  std::filesystem::create_directories(out_dir + "/instances");
  std::filesystem::create_directories(out_dir + "/reports");

  std::vector<CampaignRun> runs;
  std::uint64_t stream = 0;
  for (int n : nodes) {
    for (double d : densities) {
      for (const auto& [lo, hi] : ranges) {
        for (int s = 0; s < cells; ++s) {
          CampaignRun run;
          run.n = n;
          run.d = d;
          run.cost_lo = lo;
          run.cost_hi = hi;
          run.inst_seed = campaign_seed(master_seed, stream++);
          run.brkga_seed = campaign_seed(master_seed, stream++);
          run.labels = json{{"n", "N" + std::to_string(n)},
                            {"d", density_label(d)},
                            {"cr", range_label(lo, hi)}};
          run.stem = run.labels.at("n").get<std::string>() + "_" +
                     run.labels.at("d").get<std::string>() + "_" +
                     run.labels.at("cr").get<std::string>() + "_S" +
                     std::to_string(s);
          runs.push_back(std::move(run));
        }
      }
    }
  }

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= runs.size()) return;
      run_campaign_cell(runs[i], out_dir, params_base);
    }
  };
  const int worker_count =
      std::max(1, std::min<int>(jobs, static_cast<int>(runs.size())));
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  bool failed = false;
  int infeasible = 0;
  json records = json::array();
  json values = json::array();
  for (const CampaignRun& run : runs) {
    if (!run.done) {
      std::fprintf(stderr, "error: %s\n", run.error.c_str());
      failed = true;
      continue;
    }
    if (!run.feasible) {
      std::fprintf(stderr, "warning: %s found no feasible coloring\n",
                   run.stem.c_str());
      ++infeasible;
      continue;
    }
    records.push_back(run.record);
    values.push_back(json{{"set", run.labels.at("n")}, {"value", run.awdelay}});
  }
  if (failed) return 1;
  if (records.empty()) {
    std::fprintf(stderr, "error: no run produced a feasible coloring\n");
    return 2;
  }

  CStr table2;
  apspc_status rc =
      apspc_summarize_runs(records.dump().c_str(), "n,d", &table2.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  write_file_atomic(out_dir + "/table2.csv", table2.str());

  CStr table3;
  rc = apspc_summarize_values(values.dump().c_str(), "awdelay", &table3.ptr);
  if (rc != APSPC_OK) return report_failure(rc);
  write_file_atomic(out_dir + "/table3.csv", table3.str());

  std::printf("%zu runs, %zu feasible, summaries in %s\n", runs.size(),
              static_cast<std::size_t>(records.size()), out_dir.c_str());
  return infeasible > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"all-pairs covering-path coloring toolkit"};
  app.require_subcommand(1);

  int gen_n = 0;
  double gen_d = 0.0;
  std::string gen_cr;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_n, "node count")->required();
  gen->add_option("--d", gen_d, "edge density in (0,1]")->required();
  gen->add_option("--cr", gen_cr, "color cost range lo:hi")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", gen_out, "output instance file")->required();

  std::string solve_inst;
  std::string solve_out;
  std::string solve_ref;
  int solve_jobs = 1;
  double opt_time_limit = 0.0;
  int opt_wi = 0;
  std::uint64_t opt_seed = 0;
  double opt_alpha = 0.0;
  int opt_m = 0;
  double opt_pct_e = 0.0;
  double opt_pct_m = 0.0;
  int opt_pi_t = 0;
  int opt_pi_e = 0;
  std::string opt_bias;
  bool opt_ipr = false;
  double opt_md = 0.0;
  double opt_pct_p = 0.0;
  CLI::App* solve = app.add_subcommand("solve", "run the evolutionary solver");
  solve->add_option("instance", solve_inst, "instance file")->required();
  solve->add_option("-o,--out", solve_out, "run report file (default stdout)");
  solve->add_option("--ref", solve_ref, "instance reference recorded in the report");
  solve->add_option("--jobs", solve_jobs, "decoder worker threads")
      ->envname("APSPC_JOBS");
  CLI::Option* o_time = solve->add_option("--time-limit", opt_time_limit,
                                          "wall-clock budget in seconds");
  CLI::Option* o_wi = solve->add_option(
      "--wi", opt_wi, "stop after this many generations without improvement");
  CLI::Option* o_seed = solve->add_option("--seed", opt_seed, "master seed");
  CLI::Option* o_alpha =
      solve->add_option("--alpha", opt_alpha, "population size factor");
  CLI::Option* o_m = solve->add_option("--m", opt_m, "population count");
  CLI::Option* o_pct_e =
      solve->add_option("--pct-e", opt_pct_e, "elite fraction");
  CLI::Option* o_pct_m =
      solve->add_option("--pct-m", opt_pct_m, "mutant fraction");
  CLI::Option* o_pi_t =
      solve->add_option("--pi-t", opt_pi_t, "parents per crossover");
  CLI::Option* o_pi_e =
      solve->add_option("--pi-e", opt_pi_e, "elite parents per crossover");
  CLI::Option* o_bias =
      solve->add_option("--bias", opt_bias, "parent bias: quadratic, linear or constant");
  CLI::Option* o_ipr =
      solve->add_flag("--ipr", opt_ipr, "enable implicit path relinking");
  CLI::Option* o_md =
      solve->add_option("--md", opt_md, "path relinking minimum distance");
  CLI::Option* o_pct_p =
      solve->add_option("--pct-p", opt_pct_p, "path relinking depth fraction");

  std::string exact_inst;
  std::string exact_mode = "walk";
  std::string exact_out;
  CLI::App* exact = app.add_subcommand("exact", "solve small instances by enumeration");
  exact->add_option("instance", exact_inst, "instance file")->required();
  exact->add_option("--mode", exact_mode, "route semantics: walk or simple");
  exact->add_option("-o,--out", exact_out, "solution file (default stdout)");

  std::string val_inst;
  std::string val_sol;
  std::string val_mode = "walk";
  CLI::App* validate = app.add_subcommand("validate", "check a solution against an instance");
  validate->add_option("instance", val_inst, "instance file")->required();
  validate->add_option("solution", val_sol, "solution file")->required();
  validate->add_option("--mode", val_mode, "route semantics: walk or simple");

  std::string aw_inst;
  std::string aw_source;
  std::string aw_out;
  CLI::App* awdelay = app.add_subcommand("awdelay", "score a coloring's added delay");
  awdelay->add_option("instance", aw_inst, "instance file")->required();
  awdelay->add_option("coloring", aw_source,
                      "coloring array, run report or solution file")
      ->required();
  awdelay->add_option("-o,--out", aw_out, "report file (default stdout)");

  std::vector<int> camp_nodes{10, 15, 25, 30};
  std::vector<double> camp_densities{0.25, 0.35, 0.45, 0.55};
  std::vector<std::string> camp_ranges{"1:125", "50:150", "75:175", "100:200"};
  int camp_cells = 6;
  std::uint64_t camp_seed = 0;
  int camp_jobs = 1;
  std::string camp_out;
  CLI::App* campaign = app.add_subcommand("campaign", "run a full experiment grid");
  campaign->add_option("--nodes", camp_nodes, "node counts")->delimiter(',');
  campaign->add_option("--densities", camp_densities, "edge densities")
      ->delimiter(',');
  campaign->add_option("--cost-ranges", camp_ranges, "color cost ranges lo:hi")
      ->delimiter(',');
  campaign->add_option("--cells", camp_cells, "instances per grid cell");
  campaign->add_option("--seed", camp_seed, "campaign master seed");
  campaign->add_option("--jobs", camp_jobs, "concurrent runs")
      ->envname("APSPC_JOBS");
  campaign->add_option("--out-dir", camp_out, "output directory")->required();
  CLI::Option* c_time = campaign->add_option(
      "--time-limit", opt_time_limit, "per-run wall-clock budget in seconds");
  CLI::Option* c_wi = campaign->add_option(
      "--wi", opt_wi, "stop after this many generations without improvement");
  CLI::Option* c_alpha =
      campaign->add_option("--alpha", opt_alpha, "population size factor");
  CLI::Option* c_m = campaign->add_option("--m", opt_m, "population count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_n, gen_d, gen_cr, gen_seed, gen_out);
    }
    if (solve->parsed()) {
      json params = json::object();
      if (*o_time) params["time_limit_s"] = opt_time_limit;
      if (*o_wi) params["wi"] = opt_wi;
      if (*o_seed) params["master_seed"] = opt_seed;
      if (*o_alpha) params["alpha"] = opt_alpha;
      if (*o_m) params["m"] = opt_m;
      if (*o_pct_e) params["pct_e"] = opt_pct_e;
      if (*o_pct_m) params["pct_m"] = opt_pct_m;
      if (*o_pi_t) params["pi_t"] = opt_pi_t;
      if (*o_pi_e) params["pi_e"] = opt_pi_e;
      if (*o_bias) params["bias"] = opt_bias;
      json ipr = json::object();
      if (*o_ipr) ipr["enabled"] = opt_ipr;
      if (*o_md) ipr["md"] = opt_md;
      if (*o_pct_p) ipr["pct_p"] = opt_pct_p;
      if (!ipr.empty()) params["ipr"] = ipr;
      return cmd_solve(solve_inst, solve_out, solve_ref, params, solve_jobs);
    }
    if (exact->parsed()) {
      return cmd_exact(exact_inst, exact_mode, exact_out);
    }
    if (validate->parsed()) {
      return cmd_validate(val_inst, val_sol, val_mode);
    }
    if (awdelay->parsed()) {
      return cmd_awdelay(aw_inst, aw_source, aw_out);
    }
    if (campaign->parsed()) {
      json params = json::object();
      if (*c_time) params["time_limit_s"] = opt_time_limit;
      if (*c_wi) params["wi"] = opt_wi;
      if (*c_alpha) params["alpha"] = opt_alpha;
      if (*c_m) params["m"] = opt_m;
      return cmd_campaign(camp_nodes, camp_densities, camp_ranges, camp_cells,
                          camp_seed, params, camp_jobs, camp_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
