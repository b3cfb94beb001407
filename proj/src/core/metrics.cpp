#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "covering_path.hpp"
#include "errors.hpp"

namespace apspc {

AwDelayReport awdelay(const Instance& inst, const Coloring& coloring) {
  const int n = inst.node_count();
  const WeightedGraph& g = inst.graph();
  CoveringSearch search(g, inst.num_colors());

  struct Raw {
    NodeId s, t;
    double delay;
    int hops;
  };
  std::vector<Raw> raw;
  raw.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  int max_hops = 0;
  for (NodeId s = 0; s + 1 < n; ++s) {
    const auto classical = dijkstra_costs_hops(g, s);
    search.run(s, coloring);
    for (NodeId t = s + 1; t < n; ++t) {
      const Cost covering = search.cost_to(t);
      if (covering == kUndefinedCost) {
        throw InfeasibleError("no covering route for pair (" +
                              std::to_string(s) + "," + std::to_string(t) +
                              ")");
      }
      const double sp = static_cast<double>(classical.dist[t]);
      const double delay = (static_cast<double>(covering) - sp) / sp;
      raw.push_back({s, t, delay, classical.hops[t]});
      max_hops = std::max(max_hops, classical.hops[t]);
    }
  }

  double weight_sum = 0.0;
  for (const Raw& r : raw) weight_sum += std::exp(r.hops - max_hops);

  AwDelayReport report;
  report.pairs.reserve(raw.size());
  const double pair_count = static_cast<double>(raw.size());
  double acc = 0.0;
  for (const Raw& r : raw) {
    const double shifted = std::exp(r.hops - max_hops);
    const double normalized = pair_count * shifted / weight_sum;
    report.pairs.push_back({r.s, r.t, r.delay, normalized});
    acc += normalized * r.delay;
  }
  report.awdelay = acc / pair_count;
  return report;
}

std::string awdelay_report_json(const AwDelayReport& report) {
  nlohmann::ordered_json j;
  j["awdelay"] = report.awdelay;
  auto pairs = nlohmann::ordered_json::array();
  for (const PairDelay& p : report.pairs) {
    pairs.push_back(
        {{"s", p.s}, {"t", p.t}, {"delay", p.delay}, {"weight", p.weight}});
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

namespace {

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace

std::vector<CampaignSummary> summarize_campaign(
    const std::vector<RunRecord>& runs,
    const std::vector<std::string>& group_by) {
  if (runs.empty()) {
    throw std::invalid_argument("cannot summarize an empty campaign");
  }
  std::map<std::string, CampaignSummary> groups;
  for (const RunRecord& run : runs) {
    std::string label;
    for (const std::string& key : group_by) {
      const auto it = run.labels.find(key);
      if (it == run.labels.end()) {
        throw std::invalid_argument("run lacks group label '" + key + "'");
      }
      label += it->second;
    }
    if (group_by.empty()) label = "ALL";
    CampaignSummary& s = groups[label];
    s.set_label = label;
    s.runs += 1;
    s.colors_avg += run.num_colors;
    s.best_time_s += run.best_time_s;
    s.time_s += run.time_s;
    s.ndy_avg += run.ndy;
    s.cost += run.cost;
    s.cost_c += run.cost_c;
    s.cost_p += run.cost_p;
  }
  std::vector<CampaignSummary> rows;
  rows.reserve(groups.size());
  for (auto& [label, s] : groups) {
    s.colors_avg /= s.runs;
    s.best_time_s /= s.runs;
    s.time_s /= s.runs;
    s.ndy_avg /= s.runs;
    s.cost /= s.runs;
    s.cost_c /= s.runs;
    s.cost_p /= s.runs;
    rows.push_back(s);
  }
  return rows;
}

std::string campaign_csv(const std::vector<CampaignSummary>& rows) {
  std::string out = "set,colors_avg,best_time_s,time_s,ndy_avg,cost,cost_c,cost_p\n";
  for (const CampaignSummary& r : rows) {
    out += r.set_label;
    out += ',' + format_value(r.colors_avg);
    out += ',' + format_value(r.best_time_s);
    out += ',' + format_value(r.time_s);
    out += ',' + format_value(r.ndy_avg);
    out += ',' + format_value(r.cost);
    out += ',' + format_value(r.cost_c);
    out += ',' + format_value(r.cost_p);
    out += '\n';
  }
  return out;
}

std::vector<ValueSummary> summarize_values(
    const std::vector<std::pair<std::string, double>>& labeled) {
  if (labeled.empty()) {
    throw std::invalid_argument("cannot summarize an empty value set");
  }
  std::map<std::string, std::vector<double>> groups;
  for (const auto& [label, value] : labeled) groups[label].push_back(value);
  std::vector<ValueSummary> rows;
  rows.reserve(groups.size());
  for (const auto& [label, values] : groups) {
    ValueSummary s;
    s.set_label = label;
    s.runs = static_cast<int>(values.size());
    for (double v : values) s.mean += v;
    s.mean /= s.runs;
    for (double v : values) s.variance += (v - s.mean) * (v - s.mean);
    s.variance /= s.runs;
    rows.push_back(s);
  }
  return rows;
}

std::string values_csv(const std::string& value_name,
                       const std::vector<ValueSummary>& rows) {
  std::string out = "set," + value_name + "_avg," + value_name + "_var\n";
  for (const ValueSummary& r : rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.8f\n", r.set_label.c_str(),
                  r.mean, r.variance);
    out += buf;
  }
  return out;
}

}  // namespace apspc
