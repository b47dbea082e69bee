#include "tempotsp/congestion.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tempotsp/errors.h"

namespace tempotsp {

const CongestionTable::NodeRow& CongestionTable::row(
    const std::string& node) const {
  for (const auto& r : rows) {
    if (r.node == node) return r;
  }
  throw ValidationError("unknown congestion node: " + node);
}

namespace {

CongestionTable::NodeRow normalize_row(std::string name,
                                       std::vector<int64_t> counts,
                                       double epsilon_theta) {
  CongestionTable::NodeRow row;
  row.node = std::move(name);
  row.stay_counts = std::move(counts);
  row.max_count =
      *std::max_element(row.stay_counts.begin(), row.stay_counts.end());
  row.theta.resize(row.stay_counts.size());
  if (row.max_count <= 0) {
    row.zero_stays = true;
    std::fill(row.theta.begin(), row.theta.end(), 1.0);
    return row;
  }
  for (size_t p = 0; p < row.stay_counts.size(); ++p) {
    double t = static_cast<double>(row.stay_counts[p]) /
               static_cast<double>(row.max_count);
    row.theta[p] = std::max(t, epsilon_theta);
  }
  return row;
}

}  // namespace

CongestionTable compute_congestion(const LogSet& logs, const MeshConfig& cfg,
                                   const std::vector<NodeRegion>& nodes,
                                   const PeriodGrid& periods,
                                   double epsilon_theta) {
  if (periods.count <= 0 || periods.period_length <= 0) {
    throw ValidationError("period grid must have positive count and length");
  }
  std::unordered_map<MeshId, int> mesh_to_node;
  for (size_t i = 0; i < nodes.size(); ++i) {
    for (const MeshId& m : nodes[i].meshes) {
      mesh_to_node.emplace(m, static_cast<int>(i));
    }
  }

  // visitors[node][period] = distinct device-days seen there then.
  std::vector<std::vector<std::unordered_set<std::string>>> visitors(
      nodes.size(),
      std::vector<std::unordered_set<std::string>>(periods.count));
  for (const auto& group : logs.groups) {
    for (const auto& log : group.logs) {
      auto period = period_index_if_inside(log.time.seconds, periods);
      if (!period) continue;
      auto it = mesh_to_node.find(assign_mesh(log.lat, log.lon, cfg));
      if (it == mesh_to_node.end()) continue;
      visitors[it->second][*period].insert(group.daily_id);
    }
  }

  CongestionTable table;
  table.rows.reserve(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    std::vector<int64_t> counts(periods.count);
    for (int p = 0; p < periods.count; ++p) {
      counts[p] = static_cast<int64_t>(visitors[i][p].size());
    }
    table.rows.push_back(
        normalize_row(nodes[i].name, std::move(counts), epsilon_theta));
  }
  return table;
}

CongestionTable congestion_from_counts(
    const std::vector<std::string>& node_names,
    const std::vector<std::vector<int64_t>>& counts, double epsilon_theta) {
  if (node_names.size() != counts.size()) {
    throw ValidationError("congestion: node/count row mismatch");
  }
  CongestionTable table;
  for (size_t i = 0; i < node_names.size(); ++i) {
    if (counts[i].empty()) {
      throw ValidationError("congestion: empty count row for " +
                            node_names[i]);
    }
    table.rows.push_back(normalize_row(node_names[i], counts[i],
                                       epsilon_theta));
  }
  return table;
}

std::string congestion_to_json(const CongestionTable& table) {
  nlohmann::json theta = nlohmann::json::object();
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json flagged = nlohmann::json::array();
  for (const auto& row : table.rows) {
    theta[row.node] = row.theta;
    counts[row.node] = row.stay_counts;
    if (row.zero_stays) flagged.push_back(row.node);
  }
  nlohmann::json out{{"theta", theta}, {"stay_counts", counts}};
  if (!flagged.empty()) out["zero_stay_nodes"] = flagged;
  return out.dump(2) + "\n";
}

namespace {

CongestionTable congestion_from_parsed(const nlohmann::json& j) {
  CongestionTable table;
  const auto& theta = j.at("theta");
  for (auto it = theta.begin(); it != theta.end(); ++it) {
    CongestionTable::NodeRow row;
    row.node = it.key();
    row.theta = it.value().get<std::vector<double>>();
    if (j.contains("stay_counts") && j["stay_counts"].contains(row.node)) {
      row.stay_counts = j["stay_counts"][row.node].get<std::vector<int64_t>>();
      row.max_count = row.stay_counts.empty()
                          ? 0
                          : *std::max_element(row.stay_counts.begin(),
                                              row.stay_counts.end());
    }
    if (j.contains("zero_stay_nodes")) {
      for (const auto& n : j["zero_stay_nodes"]) {
        if (n.get<std::string>() == row.node) row.zero_stays = true;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

CongestionTable congestion_from_json(const std::string& json_text) {
  try {
    return congestion_from_parsed(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("congestion table: ") + e.what());
  }
}

}  // namespace tempotsp
