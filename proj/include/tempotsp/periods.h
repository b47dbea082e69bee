#ifndef TEMPOTSP_PERIODS_H
#define TEMPOTSP_PERIODS_H

#include <optional>

#include "tempotsp/timeutil.h"

namespace tempotsp {

// Contiguous half-open periods [start + k*length, start + (k+1)*length),
// k in [0, count).
struct PeriodGrid {
  DaySeconds start = 8 * 3600;
  DaySeconds period_length = 7200;
  int count = 5;

  bool operator==(const PeriodGrid&) const = default;

  DaySeconds end() const { return start + period_length * count; }
  bool contains(DaySeconds t) const { return t >= start && t < end(); }
};

// Containing period index; times outside the grid clamp to the nearest
// period. Used for weight lookups, where leaving the study window reuses
// the closest period's weights.
int period_of(DaySeconds t, const PeriodGrid& grid);

// Strict version for counting: nullopt outside the grid. Used when bucketing
// observations, where out-of-window samples must not leak into edge periods.
std::optional<int> period_index_if_inside(DaySeconds t, const PeriodGrid& grid);

}  // namespace tempotsp

#endif  // TEMPOTSP_PERIODS_H
