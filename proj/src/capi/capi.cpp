#include "apspc.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "../core/brkga.hpp"
#include "../core/errors.hpp"
#include "../core/exact.hpp"
#include "../core/instance.hpp"
#include "../core/metrics.hpp"

struct apspc_instance {
  apspc::Instance impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
apspc_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const apspc::ParseError& e) {
    g_last_error = e.what();
    return APSPC_PARSE_ERROR;
  } catch (const apspc::CapacityError& e) {
    g_last_error = e.what();
    return APSPC_CAPACITY_EXCEEDED;
  } catch (const apspc::InfeasibleError& e) {
    g_last_error = e.what();
    return APSPC_INFEASIBLE;
  } catch (const apspc::IoError& e) {
    g_last_error = e.what();
    return APSPC_IO_ERROR;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return APSPC_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return APSPC_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return APSPC_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown failure";
    return APSPC_INTERNAL_ERROR;
  }
}

apspc_status fail_invalid(const std::string& message) {
  g_last_error = message;
  return APSPC_INVALID_ARGUMENT;
}

apspc_status emit(const std::string& text, char** out) {
  *out = dup_string(text);
  if (!*out) {
    g_last_error = "out of memory";
    return APSPC_INTERNAL_ERROR;
  }
  return APSPC_OK;
}

apspc::BrkgaParams params_from_json(const char* text) {
  apspc::BrkgaParams p;
  if (!text || !*text) return p;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw apspc::ParseError(std::string("params JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw apspc::ParseError("params must be a JSON object");
  }
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "alpha") {
        p.alpha = value.get<double>();
      } else if (key == "pct_e") {
        p.pct_e = value.get<double>();
      } else if (key == "pct_m") {
        p.pct_m = value.get<double>();
      } else if (key == "pi_t") {
        p.pi_t = value.get<int>();
      } else if (key == "pi_e") {
        p.pi_e = value.get<int>();
      } else if (key == "bias") {
        p.bias = value.get<std::string>();
      } else if (key == "m") {
        p.m = value.get<int>();
      } else if (key == "ipr") {
        if (!value.is_object()) {
          throw apspc::ParseError("ipr must be a JSON object");
        }
        for (const auto& [ikey, ivalue] : value.items()) {
          if (ikey == "enabled") {
            p.ipr.enabled = ivalue.get<bool>();
          } else if (ikey == "sel") {
            p.ipr.sel = ivalue.get<std::string>();
          } else if (ikey == "md") {
            p.ipr.md = ivalue.get<double>();
          } else if (ikey == "pct_p") {
            p.ipr.pct_p = ivalue.get<double>();
          } else {
            throw std::invalid_argument("unknown ipr parameter: " + ikey);
          }
        }
      } else if (key == "time_limit_s") {
        p.time_limit_s = value.get<double>();
      } else if (key == "wi") {
        p.wi = value.get<int>();
      } else if (key == "master_seed") {
        p.master_seed = value.get<std::uint64_t>();
      } else if (key == "exchange_interval") {
        p.exchange_interval = value.get<int>();
      } else if (key == "exchange_count") {
        p.exchange_count = value.get<int>();
      } else {
        throw std::invalid_argument("unknown parameter: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw apspc::ParseError(std::string("params JSON: ") + e.what());
  }
  return p;
}

apspc::Coloring coloring_from_json(const char* text) {
  if (!text) throw std::invalid_argument("coloring is null");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw apspc::ParseError(std::string("coloring JSON: ") + e.what());
  }
  if (!j.is_array()) {
    throw apspc::ParseError("coloring must be a JSON array");
  }
  apspc::Coloring c;
  try {
    c.assignment = j.get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw apspc::ParseError(std::string("coloring JSON: ") + e.what());
  }
  return c;
}

}  // namespace

extern "C" {

const char* apspc_version(void) { return "1.0.0"; }

const char* apspc_last_error(void) { return g_last_error.c_str(); }

void apspc_string_free(char* s) { std::free(s); }

void apspc_instance_free(apspc_instance* inst) { delete inst; }

apspc_status apspc_instance_generate(int n, double density, int64_t cost_lo,
                                     int64_t cost_hi, uint64_t seed,
                                     apspc_instance** out) {
  if (!out) return fail_invalid("output handle is null");
  *out = nullptr;
  return guarded([&] {
    apspc::GenParams params{n, density, cost_lo, cost_hi};
    *out = new apspc_instance{apspc::Instance::generate(params, seed)};
    return APSPC_OK;
  });
}

apspc_status apspc_instance_from_json(const char* json_text,
                                      apspc_instance** out) {
  if (!out) return fail_invalid("output handle is null");
  *out = nullptr;
  if (!json_text) return fail_invalid("json_text is null");
  return guarded([&] {
    *out = new apspc_instance{apspc::Instance::from_json(json_text)};
    return APSPC_OK;
  });
}

apspc_status apspc_instance_to_json(const apspc_instance* inst,
                                    char** json_out) {
  if (!inst) return fail_invalid("instance handle is null");
  if (!json_out) return fail_invalid("output pointer is null");
  *json_out = nullptr;
  return guarded([&] { return emit(inst->impl.to_json(), json_out); });
}

apspc_status apspc_instance_load(const char* path, apspc_instance** out) {
  if (!out) return fail_invalid("output handle is null");
  *out = nullptr;
  if (!path) return fail_invalid("path is null");
  return guarded([&] {
    *out = new apspc_instance{apspc::Instance::load(path)};
    return APSPC_OK;
  });
}

apspc_status apspc_instance_save(const apspc_instance* inst,
                                 const char* path) {
  if (!inst) return fail_invalid("instance handle is null");
  if (!path) return fail_invalid("path is null");
  return guarded([&] {
    inst->impl.save(path);
    return APSPC_OK;
  });
}

int apspc_instance_nodes(const apspc_instance* inst) {
  return inst ? inst->impl.node_count() : -1;
}

int apspc_instance_edges(const apspc_instance* inst) {
  return inst ? inst->impl.graph().edge_count() : -1;
}

int apspc_instance_colors(const apspc_instance* inst) {
  return inst ? inst->impl.num_colors() : -1;
}

apspc_status apspc_solve_brkga(const apspc_instance* inst,
                               const char* params_json,
                               const char* instance_ref, int jobs,
                               char** report_json_out) {
  if (!inst) return fail_invalid("instance handle is null");
  if (!report_json_out) return fail_invalid("output pointer is null");
  *report_json_out = nullptr;
  return guarded([&] {
    const apspc::BrkgaParams params = params_from_json(params_json);
    const apspc::EvolveResult result =
        apspc::evolve(inst->impl, params, jobs < 1 ? 1 : jobs);
    const std::string ref = instance_ref ? instance_ref : "";
    return emit(apspc::run_report_json(result, params, ref),
                report_json_out);
  });
}

apspc_status apspc_solve_exact(const apspc_instance* inst,
                               apspc_path_mode mode,
                               char** solution_json_out) {
  if (!inst) return fail_invalid("instance handle is null");
  if (!solution_json_out) return fail_invalid("output pointer is null");
  *solution_json_out = nullptr;
  if (mode != APSPC_MODE_WALK && mode != APSPC_MODE_SIMPLE) {
    return fail_invalid("unknown path mode");
  }
  return guarded([&] {
    const auto outcome = apspc::brute_force_solve(
        inst->impl, mode == APSPC_MODE_WALK ? apspc::PathMode::kWalk
                                            : apspc::PathMode::kSimple);
    if (!outcome.feasible) {
      g_last_error = "no feasible coloring exists for this instance";
      return APSPC_INFEASIBLE;
    }
    return emit(apspc::explicit_solution_json(outcome.solution),
                solution_json_out);
  });
}

apspc_status apspc_validate_solution(const apspc_instance* inst,
                                     const char* solution_json,
                                     apspc_path_mode mode,
                                     char** violations_json_out) {
  if (!inst) return fail_invalid("instance handle is null");
  if (!solution_json) return fail_invalid("solution is null");
  if (!violations_json_out) return fail_invalid("output pointer is null");
  *violations_json_out = nullptr;
  if (mode != APSPC_MODE_WALK && mode != APSPC_MODE_SIMPLE) {
    return fail_invalid("unknown path mode");
  }
  return guarded([&] {
    const apspc::ExplicitSolution sol =
        apspc::explicit_solution_from_json(solution_json);
    const auto violations = apspc::validate_solution(
        inst->impl, sol,
        mode == APSPC_MODE_WALK ? apspc::PathMode::kWalk
                                : apspc::PathMode::kSimple);
    auto arr = nlohmann::ordered_json::array();
    for (const apspc::Violation& v : violations) {
      arr.push_back({{"code", v.code}, {"detail", v.detail}});
    }
    const apspc_status rc = emit(arr.dump(2) + "\n", violations_json_out);
    if (rc != APSPC_OK) return rc;
    if (!violations.empty()) {
      g_last_error = std::to_string(violations.size()) + " violation(s)";
      return APSPC_INFEASIBLE;
    }
    return APSPC_OK;
  });
}

apspc_status apspc_awdelay(const apspc_instance* inst,
                           const char* coloring_json,
                           char** report_json_out) {
  if (!inst) return fail_invalid("instance handle is null");
  if (!report_json_out) return fail_invalid("output pointer is null");
  *report_json_out = nullptr;
  return guarded([&] {
    const apspc::Coloring coloring = coloring_from_json(coloring_json);
    const apspc::AwDelayReport report = apspc::awdelay(inst->impl, coloring);
    return emit(apspc::awdelay_report_json(report), report_json_out);
  });
}

apspc_status apspc_summarize_runs(const char* runs_json, const char* group_by,
                                  char** csv_out) {
  if (!runs_json) return fail_invalid("runs_json is null");
  if (!csv_out) return fail_invalid("output pointer is null");
  *csv_out = nullptr;
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(runs_json);
    } catch (const nlohmann::json::exception& e) {
      throw apspc::ParseError(std::string("runs JSON: ") + e.what());
    }
    if (!j.is_array()) throw apspc::ParseError("runs must be a JSON array");
    std::vector<apspc::RunRecord> runs;
    try {
      for (const auto& row : j) {
        apspc::RunRecord r;
        if (row.contains("labels")) {
          for (const auto& [key, value] : row.at("labels").items()) {
            r.labels[key] = value.get<std::string>();
          }
        }
        r.num_colors = row.at("num_colors").get<double>();
        r.best_time_s = row.at("best_time_s").get<double>();
        r.time_s = row.at("time_s").get<double>();
        r.ndy = row.at("ndy").get<double>();
        r.cost = row.at("cost").get<double>();
        r.cost_c = row.at("cost_c").get<double>();
        r.cost_p = row.at("cost_p").get<double>();
        runs.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      throw apspc::ParseError(std::string("runs JSON: ") + e.what());
    }
    std::vector<std::string> keys;
    if (group_by && *group_by) {
      std::string token;
      for (const char* c = group_by;; ++c) {
        if (*c == ',' || *c == '\0') {
          if (!token.empty()) keys.push_back(token);
          token.clear();
          if (*c == '\0') break;
        } else {
          token += *c;
        }
      }
    }
    const auto rows = apspc::summarize_campaign(runs, keys);
    return emit(apspc::campaign_csv(rows), csv_out);
  });
}

apspc_status apspc_summarize_values(const char* values_json,
                                    const char* value_name, char** csv_out) {
  if (!values_json) return fail_invalid("values_json is null");
  if (!value_name || !*value_name) return fail_invalid("value_name is empty");
  if (!csv_out) return fail_invalid("output pointer is null");
  *csv_out = nullptr;
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(values_json);
    } catch (const nlohmann::json::exception& e) {
      throw apspc::ParseError(std::string("values JSON: ") + e.what());
    }
    if (!j.is_array()) {
      throw apspc::ParseError("values must be a JSON array");
    }
    std::vector<std::pair<std::string, double>> labeled;
    try {
      for (const auto& row : j) {
        labeled.emplace_back(row.at("set").get<std::string>(),
                             row.at("value").get<double>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw apspc::ParseError(std::string("values JSON: ") + e.what());
    }
    const auto rows = apspc::summarize_values(labeled);
    return emit(apspc::values_csv(value_name, rows), csv_out);
  });
}

}  // extern "C"
