#ifndef TEMPOTSP_CONGESTION_H
#define TEMPOTSP_CONGESTION_H

#include <string>
#include <vector>

#include "tempotsp/gps.h"
#include "tempotsp/mesh.h"
#include "tempotsp/periods.h"

namespace tempotsp {

// A named set of mesh cells treated as one network node (a landmark, an
// intersection, a station area).
struct NodeRegion {
  std::string name;
  std::vector<MeshId> meshes;
};

// Per-node occupancy normalized by the node's own busiest period. theta is
// in (0, 1]: 1 at the peak, epsilon-floored elsewhere so downstream
// divisions stay finite.
struct CongestionTable {
  struct NodeRow {
    std::string node;
    std::vector<int64_t> stay_counts;  // distinct devices per period
    int64_t max_count = 0;
    std::vector<double> theta;
    bool zero_stays = false;  // flagged: theta defaulted to 1 everywhere
  };

  std::vector<NodeRow> rows;

  const NodeRow& row(const std::string& node) const;
};

constexpr double kDefaultEpsilonTheta = 0.01;

// Counts distinct daily_ids with at least one log inside each node region
// during each period, then normalizes rows by their maxima.
CongestionTable compute_congestion(const LogSet& logs, const MeshConfig& cfg,
                                   const std::vector<NodeRegion>& nodes,
                                   const PeriodGrid& periods,
                                   double epsilon_theta = kDefaultEpsilonTheta);

// Same normalization applied to externally supplied stay counts.
CongestionTable congestion_from_counts(
    const std::vector<std::string>& node_names,
    const std::vector<std::vector<int64_t>>& counts,
    double epsilon_theta = kDefaultEpsilonTheta);

std::string congestion_to_json(const CongestionTable& table);
CongestionTable congestion_from_json(const std::string& json_text);

}  // namespace tempotsp

#endif  // TEMPOTSP_CONGESTION_H
