#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"

namespace apspc {

namespace {

GenParams synthesize_params(const WeightedGraph& g,
                            const std::vector<Cost>& costs) {
  GenParams p;
  p.n = g.node_count();
  const double pairs = static_cast<double>(p.n) * (p.n - 1) / 2.0;
  p.d = pairs > 0.0 ? g.edge_count() / pairs : 0.0;
  auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
  p.cr_lo = costs.empty() ? 1 : *lo;
  p.cr_hi = costs.empty() ? 1 : *hi;
  return p;
}

}  // namespace

Instance::Instance(WeightedGraph graph, int num_colors,
                   std::vector<Cost> color_costs, std::uint64_t seed,
                   const GenParams* gen_params)
    : graph_(std::move(graph)),
      num_colors_(num_colors),
      color_costs_(std::move(color_costs)),
      seed_(seed),
      gen_params_(gen_params ? *gen_params
                             : synthesize_params(graph_, color_costs_)) {
  if (num_colors_ < 1 || num_colors_ % 2 == 0) {
    throw std::invalid_argument("num_colors must be odd and >= 1");
  }
  if (static_cast<int>(color_costs_.size()) != num_colors_) {
    throw std::invalid_argument("need exactly one cost per color");
  }
  for (Cost c : color_costs_) {
    if (c < gen_params_.cr_lo || c > gen_params_.cr_hi) {
      throw std::invalid_argument("color cost outside declared range");
    }
    if (c < 1) throw std::invalid_argument("color costs must be >= 1");
  }
}

Instance Instance::generate(const GenParams& params, std::uint64_t seed) {
  const int n = params.n;
  if (n < 2) throw std::invalid_argument("need at least two nodes");
  if (params.cr_lo < 1 || params.cr_hi < params.cr_lo) {
    throw std::invalid_argument("bad color cost range");
  }
  const double pair_count = static_cast<double>(n) * (n - 1) / 2.0;
  const auto target_edges =
      static_cast<long long>(std::llround(params.d * pair_count));
  if (target_edges < n - 1) {
    throw std::invalid_argument(
        "edge budget " + std::to_string(target_edges) +
        " cannot hold a spanning tree over " + std::to_string(n) + " nodes");
  }
  if (target_edges > static_cast<long long>(pair_count)) {
    throw std::invalid_argument("edge budget exceeds the complete graph");
  }

  Engine g(seed);

  std::vector<NodeId> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i >= 1; --i) {
    const auto j = static_cast<int>(uniform_int(g, 0, i));
    std::swap(perm[i], perm[j]);
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(target_edges));
  std::set<std::pair<NodeId, NodeId>> used;
  auto add_edge = [&](NodeId a, NodeId b) {
    auto key = std::minmax(a, b);
    used.insert(key);
    const auto w = static_cast<Cost>(uniform_int(g, 1, 200));
    edges.push_back({key.first, key.second, w});
  };

  // Spanning tree over the shuffled order: each new node hooks onto a
  // uniformly chosen already-attached one.
  for (int k = 1; k < n; ++k) {
    const auto j = static_cast<int>(uniform_int(g, 0, k - 1));
    add_edge(perm[k], perm[j]);
  }

  // Extra edges by rejection until the density target is met.
  while (static_cast<long long>(edges.size()) < target_edges) {
    const auto a = static_cast<NodeId>(uniform_int(g, 0, n - 1));
    const auto b = static_cast<NodeId>(uniform_int(g, 0, n - 1));
    if (a == b) continue;
    if (used.count(std::minmax(a, b))) continue;
    add_edge(a, b);
  }

  WeightedGraph graph(n, std::move(edges));
  const int num_colors = compute_num_colors(graph);
  std::vector<Cost> costs(num_colors);
  for (Cost& c : costs) {
    c = static_cast<Cost>(uniform_int(g, params.cr_lo, params.cr_hi));
  }
  return Instance(std::move(graph), num_colors, std::move(costs), seed,
                  &params);
}

std::string Instance::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = graph_.node_count();
  j["num_colors"] = num_colors_;
  j["color_costs"] = color_costs_;
  std::vector<Edge> sorted = graph_.edges();
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : sorted) {
    edges.push_back({e.u, e.v, e.w});
  }
  j["edges"] = std::move(edges);
  j["seed"] = seed_;
  j["gen_params"] = {{"n", gen_params_.n},
                     {"d", gen_params_.d},
                     {"cr_lo", gen_params_.cr_lo},
                     {"cr_hi", gen_params_.cr_hi}};
  return j.dump(2) + "\n";
}

Instance Instance::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1) {
      throw ParseError("unsupported instance version");
    }
    const int n = j.at("n").get<int>();
    const int num_colors = j.at("num_colors").get<int>();
    const auto costs = j.at("color_costs").get<std::vector<Cost>>();
    std::vector<Edge> edges;
    for (const auto& row : j.at("edges")) {
      if (!row.is_array() || row.size() != 3) {
        throw ParseError("edge rows must be [i, j, w]");
      }
      edges.push_back(
          {row[0].get<NodeId>(), row[1].get<NodeId>(), row[2].get<Cost>()});
    }
    const auto seed = j.at("seed").get<std::uint64_t>();
    GenParams p;
    const GenParams* pp = nullptr;
    if (j.contains("gen_params")) {
      const auto& gp = j.at("gen_params");
      p.n = gp.at("n").get<int>();
      p.d = gp.at("d").get<double>();
      p.cr_lo = gp.at("cr_lo").get<Cost>();
      p.cr_hi = gp.at("cr_hi").get<Cost>();
      pp = &p;
    }
    return Instance(WeightedGraph(n, std::move(edges)), num_colors, costs,
                    seed, pp);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what());
  }
}

Instance Instance::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void Instance::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_json();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace apspc
