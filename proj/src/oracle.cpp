#include "tempotsp/oracle.h"

#include <algorithm>
#include <limits>
#include <string>

#include "tempotsp/errors.h"
#include "tempotsp/parallel.h"

namespace tempotsp {

namespace {

struct PartitionResult {
  int64_t min_ms = std::numeric_limits<int64_t>::max();
  std::vector<Tour> ties;  // tours hitting min_ms, in enumeration order
  int64_t evaluated = 0;
};

}  // namespace

OracleResult brute_force(const TimeDependentGraph& g, double stay_multiplier, DaySeconds tau0) {
  g.validate();
  const int n = g.size();
  if (n < 2) {
    throw ValidationError("brute_force: graph needs at least two nodes");
  }
  if (n > kMaxOracleNodes) {
    throw ValidationError("brute_force: refusing " + std::to_string(n) + " nodes; exhaustive search is capped at " +
                          std::to_string(kMaxOracleNodes) +
                          " (factorial growth)");
  }

  // The interior permutations are split by their first node. Sequential
  // next_permutation over the sorted interior visits those groups in
  // ascending first-node order, so merging the per-group results in that
  // same order reproduces the sequential outcome exactly.
  const int groups = n - 1;
  std::vector<PartitionResult> parts(static_cast<size_t>(groups));

  parallel_for(groups, [&](int gi) {
    const int first = gi + 1;
    std::vector<int> rest;
    rest.reserve(static_cast<size_t>(n) - 2);
    for (int v = 1; v < n; ++v) {
      if (v != first) rest.push_back(v);
    }
    PartitionResult& part = parts[static_cast<size_t>(gi)];
    Tour tour;
    tour.start_time = tau0;
    do {
      tour.nodes.clear();
      tour.nodes.push_back(0);
      tour.nodes.push_back(first);
      tour.nodes.insert(tour.nodes.end(), rest.begin(), rest.end());
      tour.nodes.push_back(0);
      const TourCost cost = tour_cost(g, tour, stay_multiplier);
      ++part.evaluated;
      if (cost.total_ms < part.min_ms) {
        part.min_ms = cost.total_ms;
        part.ties.clear();
        part.ties.push_back(tour);
      } else if (cost.total_ms == part.min_ms) {
        part.ties.push_back(tour);
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  int64_t min_ms = std::numeric_limits<int64_t>::max();
  for (const PartitionResult& part : parts) {
    min_ms = std::min(min_ms, part.min_ms);
  }

  OracleResult result;
  for (const PartitionResult& part : parts) {
    result.permutations_evaluated += part.evaluated;
    if (part.min_ms == min_ms) {
      result.ties.insert(result.ties.end(), part.ties.begin(), part.ties.end());
    }
  }
  result.optimal_tour = result.ties.front();
  result.optimal_cost = tour_cost(g, result.optimal_tour, stay_multiplier);
  return result;
}

}  // namespace tempotsp
