/* apspc: solvers and metrics for the all-pairs shortest path coloring
 * problem. Opaque handles, status codes, JSON strings on the wire.
 *
 * Every function returning apspc_status leaves a diagnostic message in
 * apspc_last_error() on failure. Strings handed out through char** are
 * heap-allocated; release them with apspc_string_free().
 */
#ifndef APSPC_H
#define APSPC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum apspc_status {
  APSPC_OK = 0,
  APSPC_INVALID_ARGUMENT = 1,
  APSPC_IO_ERROR = 2,
  APSPC_PARSE_ERROR = 3,
  APSPC_CAPACITY_EXCEEDED = 4,
  APSPC_INFEASIBLE = 5,
  APSPC_INTERNAL_ERROR = 6
} apspc_status;

typedef enum apspc_path_mode {
  APSPC_MODE_WALK = 0,  /* routes may revisit nodes */
  APSPC_MODE_SIMPLE = 1 /* routes must be simple paths */
} apspc_path_mode;

typedef struct apspc_instance apspc_instance;

const char* apspc_version(void);

/* Message describing the most recent failure on this thread; empty string
 * when the last call succeeded. */
const char* apspc_last_error(void);

void apspc_string_free(char* s);
void apspc_instance_free(apspc_instance* inst);

/* Random instance per the generation protocol: spanning tree plus uniform
 * extra edges up to round(density*n*(n-1)/2), weights in [1,200], color
 * costs in [cost_lo,cost_hi], color count derived from the topology. */
apspc_status apspc_instance_generate(int n, double density, int64_t cost_lo,
                                     int64_t cost_hi, uint64_t seed,
                                     apspc_instance** out);

apspc_status apspc_instance_from_json(const char* json_text,
                                      apspc_instance** out);
apspc_status apspc_instance_to_json(const apspc_instance* inst,
                                    char** json_out);
apspc_status apspc_instance_load(const char* path, apspc_instance** out);
apspc_status apspc_instance_save(const apspc_instance* inst,
                                 const char* path);

/* Negative on a null handle. */
int apspc_instance_nodes(const apspc_instance* inst);
int apspc_instance_edges(const apspc_instance* inst);
int apspc_instance_colors(const apspc_instance* inst);

/* Runs the genetic solver. params_json is a JSON object of overrides
 * (keys as in the report's "params" block: alpha, pct_e, pct_m, pi_t,
 * pi_e, bias, m, ipr{enabled,sel,md,pct_p}, time_limit_s, wi, master_seed,
 * exchange_interval, exchange_count); NULL or "{}" keeps the tuned
 * defaults. Unknown keys are rejected. instance_ref is echoed into the
 * report. jobs <= 1 evaluates fitness serially; higher values add worker
 * threads without changing results. The full run report (including a
 * "no-feasible-solution" status when the search never found a feasible
 * coloring) is returned as JSON. */
apspc_status apspc_solve_brkga(const apspc_instance* inst,
                               const char* params_json,
                               const char* instance_ref, int jobs,
                               char** report_json_out);

/* Exhaustive optimum over all colorings; capacity-guarded. On success
 * writes an explicit solution document {coloring, pairs, objective, mode}.
 * Returns APSPC_INFEASIBLE (no document) when no feasible coloring
 * exists. */
apspc_status apspc_solve_exact(const apspc_instance* inst,
                               apspc_path_mode mode,
                               char** solution_json_out);

/* Checks an explicit solution document against the model semantics.
 * Always writes a JSON array of {code, detail} violations on structural
 * success: APSPC_OK with an empty array for a clean solution,
 * APSPC_INFEASIBLE when violations were found. */
apspc_status apspc_validate_solution(const apspc_instance* inst,
                                     const char* solution_json,
                                     apspc_path_mode mode,
                                     char** violations_json_out);

/* coloring_json is a JSON array, one entry per node: a color index or -1.
 * Writes the detour report {awdelay, pairs:[{s,t,delay,weight}]}. Fails
 * with APSPC_INFEASIBLE when some pair has no covering route. */
apspc_status apspc_awdelay(const apspc_instance* inst,
                           const char* coloring_json,
                           char** report_json_out);

/* runs_json is a JSON array of run records: {labels:{key:value,...},
 * num_colors, best_time_s, time_s, ndy, cost, cost_c, cost_p}. group_by
 * is a comma-separated list of label keys ("" aggregates everything into
 * one ALL row). Writes the summary CSV. */
apspc_status apspc_summarize_runs(const char* runs_json, const char* group_by,
                                  char** csv_out);

/* values_json is a JSON array of {set, value}; writes a CSV of per-set
 * mean and population variance named after value_name. */
apspc_status apspc_summarize_values(const char* values_json,
                                    const char* value_name, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* APSPC_H */
