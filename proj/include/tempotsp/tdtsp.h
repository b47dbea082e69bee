#ifndef TEMPOTSP_TDTSP_H
#define TEMPOTSP_TDTSP_H

#include <cstdint>
#include <string>
#include <vector>

#include "tempotsp/periods.h"
#include "tempotsp/profile.h"

namespace tempotsp {

// Complete directed graph with per-period edge weights in minutes. Node 0 is
// the depot. Congestion (theta) defaults to 1 everywhere; it biases the ACO
// sampling only and never enters tour costs.
struct TimeDependentGraph {
  std::vector<std::string> nodes;
  PeriodGrid periods;
  std::vector<double> weights;       // minutes, index (i*n + j)*P + p
  std::vector<double> stay_minutes;  // per node; depot entry unused
  std::vector<std::vector<double>> theta;  // per node, per period

  int size() const { return static_cast<int>(nodes.size()); }

  double weight(int from, int to, int period) const {
    return weights[(static_cast<size_t>(from) * nodes.size() + to) *
                       periods.count +
                   period];
  }
  double& weight_ref(int from, int to, int period) {
    return weights[(static_cast<size_t>(from) * nodes.size() + to) *
                       periods.count +
                   period];
  }
  double congestion(int node, int period) const {
    return theta.empty() ? 1.0 : theta[node][period];
  }

  int node_index(const std::string& name) const;  // throws on unknown name
  void validate() const;
};

// Node visiting order. Starts at the depot; closed tours repeat the depot at
// the end.
struct Tour {
  std::vector<int> nodes;
  DaySeconds start_time = 8 * 3600;
};

// The clock is kept in integer milliseconds since midnight so equal-valued
// tours compare exactly equal and period boundaries are crisp.
struct TimelineStop {
  int node = 0;
  int64_t arrive_ms = 0;
  int64_t depart_ms = 0;  // arrive + applied stay
};

struct TourCost {
  double minutes = 0.0;
  int64_t total_ms = 0;
  std::vector<TimelineStop> timeline;
};

// Recursive time-dependent cost: each leg is charged at its departure-time
// period; stay_multiplier * stay_minutes is spent at every intermediate
// non-depot node before the next leg.
TourCost tour_cost(const TimeDependentGraph& g, const Tour& tour,
                   double stay_multiplier);

// Throws unless tour starts at the depot, visits every other node exactly
// once, and (when closed) returns to the depot.
void validate_tour(const TimeDependentGraph& g, const Tour& tour);

// Copy of g with every weight into and out of `node` scaled by factor.
TimeDependentGraph perturb_weights(const TimeDependentGraph& g, int node,
                                   double factor);

// Per-pair, per-period pure travel times -> weight table. entries_toward[j][i]
// holds the Pareto entries of journeys from node i to node j (profiles toward
// j restricted to i's meshes, pooled across dates). The weight is the
// nearest-rank `quantile` value of the pure times departing in the period.
// A pair with samples but an empty period borrows the nearest populated
// period, then the pair's overall median; a pair with no samples anywhere is
// a hard error.
TimeDependentGraph derive_weights(
    const std::vector<std::string>& node_names,
    const std::vector<std::vector<std::vector<ParetoEntry>>>& entries_toward,
    const PeriodGrid& grid, double quantile = 0.05);

// k-th smallest with k = ceil(q * n), clamped to [1, n].
double nearest_rank_quantile(std::vector<double> values, double q);

std::string graph_to_json(const TimeDependentGraph& g);
TimeDependentGraph graph_from_json(const std::string& json_text);
TimeDependentGraph graph_from_json_file(const std::string& path);
void write_graph_file(const TimeDependentGraph& g, const std::string& path);

}  // namespace tempotsp

#endif  // TEMPOTSP_TDTSP_H
