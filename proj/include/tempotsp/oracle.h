#ifndef TEMPOTSP_ORACLE_H
#define TEMPOTSP_ORACLE_H

#include <cstdint>
#include <vector>

#include "tempotsp/tdtsp.h"

namespace tempotsp {

struct OracleResult {
  Tour optimal_tour;       // first optimum in enumeration order
  TourCost optimal_cost;
  int64_t permutations_evaluated = 0;
  std::vector<Tour> ties;  // every tour achieving the optimum, in order
};

// Evaluates every depot-anchored closed permutation and returns the exact
// minimum together with all ties (compared on the integer-millisecond clock,
// so ties are exact, not epsilon matches).  Refuses graphs with more than
// kMaxOracleNodes nodes.
inline constexpr int kMaxOracleNodes = 11;

OracleResult brute_force(const TimeDependentGraph& g, double stay_multiplier, DaySeconds tau0);

}  // namespace tempotsp

#endif  // TEMPOTSP_ORACLE_H
