#ifndef TEMPOTSP_MOBILITY_H
#define TEMPOTSP_MOBILITY_H

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tempotsp/gps.h"
#include "tempotsp/mesh.h"
#include "tempotsp/profile.h"

namespace tempotsp {

// One sampled trip toward the destination: query the profile at t0, take the
// earliest-arriving catchable journey. travel_time counts the wait for that
// journey; pure_time does not.
struct TravelTimeSample {
  MeshId origin;
  DaySeconds t0 = 0;
  DaySeconds travel_time = 0;  // arrival - t0
  DaySeconds pure_time = 0;    // arrival - departure
  Date date;
  std::optional<Residence> residence;  // nullopt: mixed/unfiltered source
  bool weekday = true;
};

// All clauses are conjunctive; an empty clause is a wildcard.
struct SubgroupFilter {
  std::set<int> months;
  std::set<Residence> residences;
  std::optional<bool> weekdays_only;  // true: weekdays, false: weekends
  std::optional<std::pair<DaySeconds, DaySeconds>> departure_window;  // [a, b)
};

enum class TravelTimeField {
  kWaitingInclusive,  // travel_time
  kPure,              // pure_time
};

struct DensityFunction {
  DaySeconds bin_width = 300;
  // (lower_edge_seconds, density) with contiguous bins; integrates to 1.
  std::vector<std::pair<DaySeconds, double>> bins;
  size_t sample_count = 0;
};

// Earliest-arriving entry among those departing at or after t0; nullopt when
// nothing is catchable. Attributes (date, residence, weekday) come from the
// caller, which knows what subset the profile was built from.
std::optional<TravelTimeSample> travel_time_at(
    const std::vector<ParetoEntry>& profile, MeshId origin, DaySeconds t0,
    const Date& date, std::optional<Residence> residence = std::nullopt);

// Samples a profile on a regular t0 grid over [window_start, window_end).
std::vector<TravelTimeSample> sample_profile(
    const std::vector<ParetoEntry>& profile, MeshId origin,
    DaySeconds window_start, DaySeconds window_end, DaySeconds step,
    const Date& date, std::optional<Residence> residence = std::nullopt);

// Mean waiting-inclusive travel time in minutes per hour of t0. Samples
// above the outlier cutoff are dropped; empty hours are omitted.
std::map<int, double> mean_travel_time_by_hour(
    const std::vector<TravelTimeSample>& samples,
    DaySeconds outlier_cutoff = 7200);

DensityFunction density(const std::vector<TravelTimeSample>& samples,
                        TravelTimeField field, DaySeconds bin_width = 300);

// Gaussian-kernel estimate (Silverman bandwidth) of the same field on a
// regular grid; emitted alongside histograms for smooth-figure parity.
std::vector<std::pair<double, double>> smoothed_density(
    const std::vector<TravelTimeSample>& samples, TravelTimeField field,
    double grid_step);

std::vector<TravelTimeSample> filter_samples(
    const std::vector<TravelTimeSample>& samples, const SubgroupFilter& f);

std::map<int, int64_t> log_counts_by_hour(const LogSet& logs);

}  // namespace tempotsp

#endif  // TEMPOTSP_MOBILITY_H
