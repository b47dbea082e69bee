#ifndef TEMPOTSP_ACO_H
#define TEMPOTSP_ACO_H

#include <cstdint>
#include <vector>

#include "tempotsp/rng.h"
#include "tempotsp/tdtsp.h"

namespace tempotsp {

// Tuning knobs for the ant colony solver.  Defaults follow common ACO
// practice; only the colony size and iteration count are load-bearing for
// the bundled benchmarks.
struct AcoParams {
  double alpha = 1.0;             // pheromone exponent
  double beta = 2.0;              // heuristic exponent
  double rho = 0.5;               // pheromone retention per iteration
  double q = 100.0;               // deposit constant
  int ants = 100;                 // colony size per iteration
  int iterations = 200;           // number of colony iterations
  double exploration_prob = 0.1;  // chance of a uniform random next hop
  double initial_pheromone = 1.0;
  uint64_t rng_seed = 1;
  bool elitist = false;  // extra deposit along the best-so-far tour
  double stay_multiplier = 1.0;

  void validate() const;
};

// Base pheromone per directed edge, stored flat (i * n + j).  Congestion
// scaling is applied at lookup time, not materialized per period.
struct PheromoneState {
  int node_count = 0;
  std::vector<double> base;

  static PheromoneState initial(int node_count, double value);
  double& at(int i, int j) { return base[static_cast<size_t>(i) * node_count + j]; }
  double at(int i, int j) const { return base[static_cast<size_t>(i) * node_count + j]; }
};

struct SolveResult {
  Tour best_tour;
  TourCost best_cost;
  std::vector<double> cost_history;  // best-so-far minutes after each iteration
  int64_t evaluations = 0;
};

// Pheromone on edge (i, j) as seen by an ant departing i at time tau:
// the base value divided by the destination's congestion level.
double effective_pheromone(const PheromoneState& state, const TimeDependentGraph& g, int i, int j,
                           DaySeconds tau);

// Sampling distribution over the unvisited candidates for an ant at node
// `current` at time tau.  Probabilities sum to 1 over `unvisited`.
std::vector<double> transition_probabilities(const PheromoneState& state,
                                             const TimeDependentGraph& g, int current,
                                             const std::vector<int>& unvisited, DaySeconds tau,
                                             const AcoParams& params);

// Builds one closed depot-anchored tour by sequential sampling.
Tour construct_tour(const PheromoneState& state, const TimeDependentGraph& g,
                    const AcoParams& params, Rng& rng);

// Evaporates all edges, then deposits q / cost_minutes on every directed
// edge each tour traverses.
PheromoneState update_pheromones(const PheromoneState& state, const std::vector<Tour>& tours,
                                 const std::vector<double>& costs_minutes,
                                 const AcoParams& params);

// Full solver loop.  Deterministic for a fixed seed, independent of the
// worker thread count.
SolveResult solve(const TimeDependentGraph& g, const AcoParams& params);

}  // namespace tempotsp

#endif  // TEMPOTSP_ACO_H
