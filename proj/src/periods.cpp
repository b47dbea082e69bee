#include "tempotsp/periods.h"

#include "tempotsp/errors.h"

namespace tempotsp {

int period_of(DaySeconds t, const PeriodGrid& grid) {
  if (grid.count <= 0 || grid.period_length <= 0) {
    throw ValidationError("period grid must have positive count and length");
  }
  if (t < grid.start) return 0;
  int idx = static_cast<int>((t - grid.start) / grid.period_length);
  return idx >= grid.count ? grid.count - 1 : idx;
}

std::optional<int> period_index_if_inside(DaySeconds t,
                                          const PeriodGrid& grid) {
  if (!grid.contains(t)) return std::nullopt;
  return static_cast<int>((t - grid.start) / grid.period_length);
}

}  // namespace tempotsp
