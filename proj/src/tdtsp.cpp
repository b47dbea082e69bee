#include "tempotsp/tdtsp.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tempotsp/errors.h"

namespace tempotsp {

int TimeDependentGraph::node_index(const std::string& name) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == name) return static_cast<int>(i);
  }
  throw ValidationError("unknown node: " + name);
}

void TimeDependentGraph::validate() const {
  int n = size();
  if (n == 0) throw ValidationError("graph has no nodes");
  if (periods.count <= 0 || periods.period_length <= 0) {
    throw ValidationError("period grid must have positive count and length");
  }
  if (weights.size() != static_cast<size_t>(n) * n * periods.count) {
    throw ValidationError("weight table size mismatch");
  }
  if (stay_minutes.size() != static_cast<size_t>(n)) {
    throw ValidationError("stay_minutes size mismatch");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < periods.count; ++p) {
        double w = weight(i, j, p);
        if (i == j) {
          if (w != 0.0) throw ValidationError("diagonal weight must be zero");
        } else if (!(w >= 0.0) || std::isnan(w)) {
          std::ostringstream msg;
          msg << "missing or negative weight " << nodes[i] << "->" << nodes[j]
              << " period " << p;
          throw ValidationError(msg.str());
        }
      }
    }
  }
  if (!theta.empty()) {
    if (theta.size() != static_cast<size_t>(n)) {
      throw ValidationError("congestion table size mismatch");
    }
    for (const auto& row : theta) {
      if (row.size() != static_cast<size_t>(periods.count)) {
        throw ValidationError("congestion row size mismatch");
      }
      for (double t : row) {
        if (!(t > 0.0) || t > 1.0) {
          throw ValidationError("congestion values must lie in (0, 1]");
        }
      }
    }
  }
}

namespace {

int64_t minutes_to_ms(double minutes) {
  return static_cast<int64_t>(std::llround(minutes * 60000.0));
}

}  // namespace

TourCost tour_cost(const TimeDependentGraph& g, const Tour& tour,
                   double stay_multiplier) {
  if (tour.nodes.empty()) throw ValidationError("empty tour");
  const int depot = tour.nodes.front();
  int64_t clock_ms = static_cast<int64_t>(tour.start_time) * 1000;

  TourCost result;
  result.timeline.push_back(TimelineStop{tour.nodes[0], clock_ms, clock_ms});
  for (size_t k = 1; k < tour.nodes.size(); ++k) {
    int from = tour.nodes[k - 1];
    int to = tour.nodes[k];
    int period = period_of(static_cast<DaySeconds>(clock_ms / 1000),
                           g.periods);
    double w = g.weight(from, to, period);
    if (std::isnan(w)) {
      throw ValidationError("missing weight " + g.nodes[from] + "->" +
                            g.nodes[to]);
    }
    clock_ms += minutes_to_ms(w);
    int64_t arrive = clock_ms;
    if (k + 1 < tour.nodes.size() && to != depot) {
      clock_ms += minutes_to_ms(stay_multiplier * g.stay_minutes[to]);
    }
    result.timeline.push_back(TimelineStop{to, arrive, clock_ms});
  }
  result.total_ms = clock_ms - static_cast<int64_t>(tour.start_time) * 1000;
  result.minutes = static_cast<double>(result.total_ms) / 60000.0;
  return result;
}

void validate_tour(const TimeDependentGraph& g, const Tour& tour) {
  if (tour.nodes.empty() || tour.nodes.front() != 0) {
    throw ValidationError("tour must start at the depot");
  }
  bool closed = tour.nodes.size() > 1 && tour.nodes.back() == 0;
  size_t expected = static_cast<size_t>(g.size()) + (closed ? 1 : 0);
  std::vector<int> seen(g.size(), 0);
  for (size_t k = 0; k + (closed ? 1 : 0) < tour.nodes.size(); ++k) {
    int v = tour.nodes[k];
    if (v < 0 || v >= g.size()) throw ValidationError("tour node out of range");
    ++seen[v];
  }
  if (tour.nodes.size() != expected ||
      std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw ValidationError("tour must visit every node exactly once");
  }
}

TimeDependentGraph perturb_weights(const TimeDependentGraph& g, int node,
                                   double factor) {
  if (node < 0 || node >= g.size()) {
    throw ValidationError("perturb_weights: unknown node");
  }
  TimeDependentGraph out = g;
  for (int other = 0; other < g.size(); ++other) {
    if (other == node) continue;
    for (int p = 0; p < g.periods.count; ++p) {
      out.weight_ref(node, other, p) = g.weight(node, other, p) * factor;
      out.weight_ref(other, node, p) = g.weight(other, node, p) * factor;
    }
  }
  return out;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) {
    throw ValidationError("quantile of an empty sample set");
  }
  std::sort(values.begin(), values.end());
  int n = static_cast<int>(values.size());
  int k = static_cast<int>(std::ceil(q * n - 1e-9));
  k = std::clamp(k, 1, n);
  return values[k - 1];
}

TimeDependentGraph derive_weights(
    const std::vector<std::string>& node_names,
    const std::vector<std::vector<std::vector<ParetoEntry>>>& entries_toward,
    const PeriodGrid& grid, double quantile) {
  int n = static_cast<int>(node_names.size());
  if (n < 2) throw ValidationError("derive_weights needs at least two nodes");
  if (entries_toward.size() != static_cast<size_t>(n)) {
    throw ValidationError("entries_toward must have one slot per node");
  }
  const int P = grid.count;

  TimeDependentGraph g;
  g.nodes = node_names;
  g.periods = grid;
  g.weights.assign(static_cast<size_t>(n) * n * P,
                   std::numeric_limits<double>::quiet_NaN());
  g.stay_minutes.assign(n, 0.0);

  std::vector<std::string> starved;
  for (int j = 0; j < n; ++j) {
    if (entries_toward[j].size() != static_cast<size_t>(n)) {
      throw ValidationError("entries_toward rows must have one slot per node");
    }
    for (int i = 0; i < n; ++i) {
      if (i == j) {
        for (int p = 0; p < P; ++p) g.weight_ref(i, j, p) = 0.0;
        continue;
      }
      const auto& entries = entries_toward[j][i];
      if (entries.empty()) {
        starved.push_back(node_names[i] + "->" + node_names[j]);
        continue;
      }
      std::vector<std::vector<double>> buckets(P);
      std::vector<double> all;
      all.reserve(entries.size());
      for (const auto& e : entries) {
        double pure_min = (e.arr_time - e.dep_time) / 60.0;
        all.push_back(pure_min);
        if (auto p = period_index_if_inside(e.dep_time, grid)) {
          buckets[*p].push_back(pure_min);
        }
      }
      std::vector<double> direct(P, std::numeric_limits<double>::quiet_NaN());
      for (int p = 0; p < P; ++p) {
        if (!buckets[p].empty()) {
          direct[p] = nearest_rank_quantile(buckets[p], quantile);
        }
      }
      for (int p = 0; p < P; ++p) {
        if (!std::isnan(direct[p])) {
          g.weight_ref(i, j, p) = direct[p];
          continue;
        }
        // Borrow the nearest populated period, earlier one on ties.
        int best = -1;
        for (int q2 = 0; q2 < P; ++q2) {
          if (std::isnan(direct[q2])) continue;
          if (best == -1 ||
              std::abs(q2 - p) < std::abs(best - p)) {
            best = q2;
          }
        }
        if (best >= 0) {
          g.weight_ref(i, j, p) = direct[best];
        } else {
          // Samples exist but none depart inside the grid.
          g.weight_ref(i, j, p) = nearest_rank_quantile(all, 0.5);
        }
      }
    }
  }
  if (!starved.empty()) {
    std::string msg = "no travel-time samples for node pair(s):";
    for (const auto& p : starved) msg += " " + p;
    throw ValidationError(msg);
  }
  return g;
}

std::string graph_to_json(const TimeDependentGraph& g) {
  nlohmann::json out;
  out["nodes"] = g.nodes;
  out["period_grid"] = {{"start_s", g.periods.start},
                        {"period_length_s", g.periods.period_length},
                        {"count", g.periods.count}};
  nlohmann::json weights = nlohmann::json::object();
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      std::vector<double> row(g.periods.count);
      for (int p = 0; p < g.periods.count; ++p) row[p] = g.weight(i, j, p);
      weights[g.nodes[i] + "->" + g.nodes[j]] = row;
    }
  }
  out["weights"] = std::move(weights);
  nlohmann::json stays = nlohmann::json::object();
  for (int i = 0; i < g.size(); ++i) {
    if (g.stay_minutes[i] != 0.0) stays[g.nodes[i]] = g.stay_minutes[i];
  }
  out["stay_minutes"] = std::move(stays);
  if (!g.theta.empty()) {
    nlohmann::json theta = nlohmann::json::object();
    for (int i = 0; i < g.size(); ++i) theta[g.nodes[i]] = g.theta[i];
    out["congestion"] = std::move(theta);
  }
  return out.dump(2) + "\n";
}

namespace {

TimeDependentGraph graph_from_parsed(const nlohmann::json& j) {
  TimeDependentGraph g;
  g.nodes = j.at("nodes").get<std::vector<std::string>>();
  const auto& pg = j.at("period_grid");
  g.periods.start = pg.at("start_s").get<DaySeconds>();
  g.periods.period_length = pg.at("period_length_s").get<DaySeconds>();
  g.periods.count = pg.at("count").get<int>();
  int n = g.size();
  const int P = g.periods.count;
  g.weights.assign(static_cast<size_t>(n) * n * P,
                   std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < P; ++p) g.weight_ref(i, i, p) = 0.0;
  }
  for (const auto& [key, row] : j.at("weights").items()) {
    auto sep = key.find("->");
    if (sep == std::string::npos) {
      throw ParseError("weight key must look like 'a->b': " + key);
    }
    int i = g.node_index(key.substr(0, sep));
    int k = g.node_index(key.substr(sep + 2));
    auto values = row.get<std::vector<double>>();
    if (values.size() != static_cast<size_t>(P)) {
      throw ParseError("weight row " + key + " must have one value per period");
    }
    for (int p = 0; p < P; ++p) g.weight_ref(i, k, p) = values[p];
  }
  g.stay_minutes.assign(n, 0.0);
  if (j.contains("stay_minutes")) {
    for (const auto& [name, v] : j.at("stay_minutes").items()) {
      g.stay_minutes[g.node_index(name)] = v.get<double>();
    }
  }
  if (j.contains("congestion")) {
    g.theta.assign(n, std::vector<double>(P, 1.0));
    for (const auto& [name, row] : j.at("congestion").items()) {
      auto values = row.get<std::vector<double>>();
      if (values.size() != static_cast<size_t>(P)) {
        throw ParseError("congestion row " + name +
                         " must have one value per period");
      }
      g.theta[g.node_index(name)] = values;
    }
  }
  g.validate();
  return g;
}

}  // namespace

TimeDependentGraph graph_from_json(const std::string& json_text) {
  try {
    return graph_from_parsed(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

TimeDependentGraph graph_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

void write_graph_file(const TimeDependentGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  out << graph_to_json(g);
}

}  // namespace tempotsp
