#include "tempotsp/aco.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tempotsp/errors.h"
#include "tempotsp/parallel.h"
#include "tempotsp/periods.h"

namespace tempotsp {

namespace {

// Legs shorter than this are treated as 0.1 minutes inside the heuristic
// term so that eta = q / w stays finite.
constexpr double kMinHeuristicMinutes = 0.1;

}  // namespace

void AcoParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw ValidationError("aco params: alpha and beta must be non-negative");
  }
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw ValidationError("aco params: rho must lie in (0, 1)");
  }
  if (!(q > 0.0)) {
    throw ValidationError("aco params: q must be positive");
  }
  if (ants <= 0 || iterations <= 0) {
    throw ValidationError("aco params: ants and iterations must be positive");
  }
  if (!(exploration_prob >= 0.0) || !(exploration_prob < 1.0)) {
    throw ValidationError("aco params: exploration_prob must lie in [0, 1)");
  }
  if (!(initial_pheromone > 0.0)) {
    throw ValidationError("aco params: initial_pheromone must be positive");
  }
  if (!(stay_multiplier >= 0.0)) {
    throw ValidationError("aco params: stay_multiplier must be non-negative");
  }
}

PheromoneState PheromoneState::initial(int node_count, double value) {
  PheromoneState s;
  s.node_count = node_count;
  s.base.assign(static_cast<size_t>(node_count) * node_count, value);
  return s;
}

double effective_pheromone(const PheromoneState& state, const TimeDependentGraph& g, int i, int j,
                           DaySeconds tau) {
  const int p = period_of(tau, g.periods);
  return state.at(i, j) / g.congestion(j, p);
}

std::vector<double> transition_probabilities(const PheromoneState& state,
                                             const TimeDependentGraph& g, int current,
                                             const std::vector<int>& unvisited, DaySeconds tau,
                                             const AcoParams& params) {
  if (unvisited.empty()) {
    throw ValidationError("transition_probabilities: no candidate nodes");
  }
  const int p = period_of(tau, g.periods);
  // Scores are computed in log space and exp-normalized against the maximum
  // so that large beta exponents cannot overflow.
  std::vector<double> log_score(unvisited.size());
  double max_log = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < unvisited.size(); ++k) {
    const int j = unvisited[k];
    const double sigma = state.at(current, j) / g.congestion(j, p);
    const double w = std::max(g.weight(current, j, p), kMinHeuristicMinutes);
    const double eta = params.q / w;
    log_score[k] = params.alpha * std::log(sigma) + params.beta * std::log(eta);
    max_log = std::max(max_log, log_score[k]);
  }
  std::vector<double> prob(unvisited.size());
  double total = 0.0;
  for (size_t k = 0; k < unvisited.size(); ++k) {
    prob[k] = std::exp(log_score[k] - max_log);
    total += prob[k];
  }
  for (double& v : prob) v /= total;
  return prob;
}

Tour construct_tour(const PheromoneState& state, const TimeDependentGraph& g,
                    const AcoParams& params, Rng& rng) {
  const int n = g.size();
  Tour tour;
  tour.start_time = g.periods.start;
  tour.nodes.reserve(static_cast<size_t>(n) + 1);
  tour.nodes.push_back(0);

  std::vector<int> unvisited;
  unvisited.reserve(static_cast<size_t>(n) - 1);
  for (int v = 1; v < n; ++v) unvisited.push_back(v);

  int current = 0;
  int64_t clock_ms = static_cast<int64_t>(tour.start_time) * 1000;
  while (!unvisited.empty()) {
    size_t pick;
    if (unvisited.size() == 1) {
      pick = 0;
    } else if (rng.uniform() < params.exploration_prob) {
      pick = static_cast<size_t>(rng.below(unvisited.size()));
    } else {
      const auto tau = static_cast<DaySeconds>(clock_ms / 1000);
      const std::vector<double> prob = transition_probabilities(state, g, current, unvisited, tau, params);
      const double r = rng.uniform();
      double acc = 0.0;
      pick = prob.size() - 1;
      for (size_t k = 0; k < prob.size(); ++k) {
        acc += prob[k];
        if (r < acc) {
          pick = k;
          break;
        }
      }
    }
    const int next = unvisited[pick];
    unvisited.erase(unvisited.begin() + static_cast<ptrdiff_t>(pick));

    const int p = period_of(static_cast<DaySeconds>(clock_ms / 1000), g.periods);
    clock_ms += static_cast<int64_t>(std::llround(g.weight(current, next, p) * 60000.0));
    // Every node picked here is followed by at least the closing leg back to
    // the depot, so its stay always elapses before the next departure.
    clock_ms += static_cast<int64_t>(
        std::llround(params.stay_multiplier * g.stay_minutes[static_cast<size_t>(next)] * 60000.0));
    tour.nodes.push_back(next);
    current = next;
  }
  tour.nodes.push_back(0);
  return tour;
}

PheromoneState update_pheromones(const PheromoneState& state, const std::vector<Tour>& tours,
                                 const std::vector<double>& costs_minutes,
                                 const AcoParams& params) {
  if (tours.size() != costs_minutes.size()) {
    throw ValidationError("update_pheromones: tours and costs differ in length");
  }
  PheromoneState next = state;
  for (double& v : next.base) v *= params.rho;
  for (size_t k = 0; k < tours.size(); ++k) {
    if (!(costs_minutes[k] > 0.0)) {
      throw ValidationError("update_pheromones: tour cost must be positive");
    }
    const double deposit = params.q / costs_minutes[k];
    const auto& nodes = tours[k].nodes;
    for (size_t e = 0; e + 1 < nodes.size(); ++e) {
      next.at(nodes[e], nodes[e + 1]) += deposit;
    }
  }
  return next;
}

SolveResult solve(const TimeDependentGraph& g, const AcoParams& params) {
  params.validate();
  g.validate();
  if (g.size() < 2) {
    throw ValidationError("solve: graph needs at least two nodes");
  }

  PheromoneState state = PheromoneState::initial(g.size(), params.initial_pheromone);

  SolveResult result;
  result.best_cost.total_ms = std::numeric_limits<int64_t>::max();
  result.cost_history.reserve(static_cast<size_t>(params.iterations));

  std::vector<Tour> tours(static_cast<size_t>(params.ants));
  std::vector<TourCost> costs(static_cast<size_t>(params.ants));

  for (int iter = 0; iter < params.iterations; ++iter) {
    // Each ant owns an independent generator derived from (seed, iteration,
    // ant index), so the colony can run on any number of threads and still
    // reproduce the sequential trajectory bit for bit.
    parallel_for(params.ants, [&](int ant) {
      const auto a = static_cast<size_t>(ant);
      Rng rng = Rng::stream(params.rng_seed, static_cast<uint64_t>(iter), static_cast<uint64_t>(ant));
      tours[a] = construct_tour(state, g, params, rng);
      costs[a] = tour_cost(g, tours[a], params.stay_multiplier);
    });

    for (size_t ant = 0; ant < tours.size(); ++ant) {
      if (costs[ant].total_ms < result.best_cost.total_ms) {
        result.best_cost = costs[ant];
        result.best_tour = tours[ant];
      }
    }

    std::vector<double> minutes(tours.size());
    for (size_t ant = 0; ant < tours.size(); ++ant) minutes[ant] = costs[ant].minutes;
    if (params.elitist && !result.best_tour.nodes.empty()) {
      std::vector<Tour> with_best = tours;
      std::vector<double> with_best_minutes = minutes;
      with_best.push_back(result.best_tour);
      with_best_minutes.push_back(result.best_cost.minutes);
      state = update_pheromones(state, with_best, with_best_minutes, params);
    } else {
      state = update_pheromones(state, tours, minutes, params);
    }

    result.cost_history.push_back(result.best_cost.minutes);
    result.evaluations += params.ants;
  }

  // Recompute the winning cost from scratch as an internal consistency check.
  result.best_cost = tour_cost(g, result.best_tour, params.stay_multiplier);
  return result;
}

}  // namespace tempotsp
