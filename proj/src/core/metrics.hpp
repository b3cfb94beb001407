#pragma once

#include <map>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "instance.hpp"

namespace apspc {

struct PairDelay {
  NodeId s = 0;
  NodeId t = 0;
  double delay = 0.0;   // (covering - classical) / classical
  double weight = 0.0;  // normalized, sums to the number of pairs
};

struct AwDelayReport {
  std::vector<PairDelay> pairs;
  double awdelay = 0.0;
};

// Weighted mean relative detour of covering routes versus classical
// shortest paths. Pair weights are exp(classical hop length), computed
// max-shifted and normalized to sum to |V|(|V|-1)/2, so the result is a
// weighted mean of the per-pair delays.
AwDelayReport awdelay(const Instance& inst, const Coloring& coloring);

std::string awdelay_report_json(const AwDelayReport& report);

// One solved run, labeled for grouping (e.g. {"n":"N10","d":"ED1"}).
struct RunRecord {
  std::map<std::string, std::string> labels;
  double num_colors = 0.0;
  double best_time_s = 0.0;
  double time_s = 0.0;
  double ndy = 0.0;  // deployed (colored) node count
  double cost = 0.0;
  double cost_c = 0.0;
  double cost_p = 0.0;
};

struct CampaignSummary {
  std::string set_label;
  int runs = 0;
  double colors_avg = 0.0;
  double best_time_s = 0.0;
  double time_s = 0.0;
  double ndy_avg = 0.0;
  double cost = 0.0;
  double cost_c = 0.0;
  double cost_p = 0.0;
};

// Arithmetic means per group; the group label is the concatenation of the
// runs' label values for the requested keys (or "ALL" when no keys are
// given). Rows come back sorted by label.
std::vector<CampaignSummary> summarize_campaign(
    const std::vector<RunRecord>& runs,
    const std::vector<std::string>& group_by);

std::string campaign_csv(const std::vector<CampaignSummary>& rows);

struct ValueSummary {
  std::string set_label;
  int runs = 0;
  double mean = 0.0;
  double variance = 0.0;  // population variance
};

std::vector<ValueSummary> summarize_values(
    const std::vector<std::pair<std::string, double>>& labeled);

// CSV with header set,<value_name>_avg,<value_name>_var.
std::string values_csv(const std::string& value_name,
                       const std::vector<ValueSummary>& rows);

}  // namespace apspc
