#include "tempotsp/mobility.h"

#include <algorithm>
#include <cmath>

#include "tempotsp/errors.h"

namespace tempotsp {

std::optional<TravelTimeSample> travel_time_at(
    const std::vector<ParetoEntry>& profile, MeshId origin, DaySeconds t0,
    const Date& date, std::optional<Residence> residence) {
  // Catchable entries are a prefix (descending departures); the last of them
  // arrives earliest.
  auto end = std::partition_point(
      profile.begin(), profile.end(),
      [t0](const ParetoEntry& e) { return e.dep_time >= t0; });
  if (end == profile.begin()) return std::nullopt;
  const ParetoEntry& chosen = *(end - 1);
  TravelTimeSample s;
  s.origin = origin;
  s.t0 = t0;
  s.travel_time = chosen.arr_time - t0;
  s.pure_time = chosen.arr_time - chosen.dep_time;
  s.date = date;
  s.residence = residence;
  s.weekday = !is_weekend(date);
  return s;
}

std::vector<TravelTimeSample> sample_profile(
    const std::vector<ParetoEntry>& profile, MeshId origin,
    DaySeconds window_start, DaySeconds window_end, DaySeconds step,
    const Date& date, std::optional<Residence> residence) {
  if (step <= 0) throw ValidationError("sampling step must be positive");
  std::vector<TravelTimeSample> out;
  for (DaySeconds t0 = window_start; t0 < window_end; t0 += step) {
    if (auto s = travel_time_at(profile, origin, t0, date, residence)) {
      out.push_back(*s);
    }
  }
  return out;
}

std::map<int, double> mean_travel_time_by_hour(
    const std::vector<TravelTimeSample>& samples, DaySeconds outlier_cutoff) {
  std::map<int, std::pair<double, int64_t>> acc;  // hour -> (sum s, n)
  for (const auto& s : samples) {
    if (s.travel_time > outlier_cutoff) continue;
    auto& [sum, n] = acc[s.t0 / 3600];
    sum += s.travel_time;
    ++n;
  }
  std::map<int, double> result;
  for (const auto& [hour, v] : acc) {
    result[hour] = v.first / static_cast<double>(v.second) / 60.0;
  }
  return result;
}

namespace {

DaySeconds field_value(const TravelTimeSample& s, TravelTimeField field) {
  return field == TravelTimeField::kWaitingInclusive ? s.travel_time
                                                     : s.pure_time;
}

}  // namespace

DensityFunction density(const std::vector<TravelTimeSample>& samples,
                        TravelTimeField field, DaySeconds bin_width) {
  if (bin_width <= 0) throw ValidationError("bin width must be positive");
  DensityFunction df;
  df.bin_width = bin_width;
  df.sample_count = samples.size();
  if (samples.empty()) return df;

  auto bin_of = [bin_width](DaySeconds v) {
    return static_cast<int64_t>(
        std::floor(static_cast<double>(v) / bin_width));
  };
  int64_t lo = bin_of(field_value(samples[0], field));
  int64_t hi = lo;
  for (const auto& s : samples) {
    int64_t b = bin_of(field_value(s, field));
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  std::vector<int64_t> counts(hi - lo + 1, 0);
  for (const auto& s : samples) {
    ++counts[bin_of(field_value(s, field)) - lo];
  }
  double norm = static_cast<double>(samples.size()) * bin_width;
  for (size_t i = 0; i < counts.size(); ++i) {
    df.bins.emplace_back(static_cast<DaySeconds>((lo + i) * bin_width),
                         static_cast<double>(counts[i]) / norm);
  }
  return df;
}

std::vector<std::pair<double, double>> smoothed_density(
    const std::vector<TravelTimeSample>& samples, TravelTimeField field,
    double grid_step) {
  std::vector<std::pair<double, double>> out;
  if (samples.empty() || grid_step <= 0) return out;
  size_t n = samples.size();
  std::vector<double> values;
  values.reserve(n);
  for (const auto& s : samples) {
    values.push_back(static_cast<double>(field_value(s, field)));
  }
  std::sort(values.begin(), values.end());
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  double sd = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
  double iqr = values[(3 * n) / 4] - values[n / 4];
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0) spread = std::max(sd, 1.0);
  double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  if (h <= 0) h = 1.0;

  double lo = values.front() - 3 * h;
  double hi = values.back() + 3 * h;
  const double inv = 1.0 / (h * std::sqrt(2.0 * M_PI) * n);
  for (double x = std::floor(lo / grid_step) * grid_step; x <= hi;
       x += grid_step) {
    double d = 0;
    for (double v : values) {
      double z = (x - v) / h;
      d += std::exp(-0.5 * z * z);
    }
    out.emplace_back(x, d * inv);
  }
  return out;
}

std::vector<TravelTimeSample> filter_samples(
    const std::vector<TravelTimeSample>& samples, const SubgroupFilter& f) {
  if (f.departure_window &&
      f.departure_window->first >= f.departure_window->second) {
    throw ValidationError("departure window start must precede end");
  }
  std::vector<TravelTimeSample> out;
  for (const auto& s : samples) {
    if (!f.months.empty() && !f.months.contains(s.date.month)) continue;
    if (!f.residences.empty() &&
        (!s.residence || !f.residences.contains(*s.residence))) {
      continue;
    }
    if (f.weekdays_only && *f.weekdays_only != s.weekday) continue;
    if (f.departure_window && (s.t0 < f.departure_window->first ||
                               s.t0 >= f.departure_window->second)) {
      continue;
    }
    out.push_back(s);
  }
  return out;
}

std::map<int, int64_t> log_counts_by_hour(const LogSet& logs) {
  std::map<int, int64_t> counts;
  for (const auto& g : logs.groups) {
    for (const auto& log : g.logs) {
      ++counts[log.time.seconds / 3600];
    }
  }
  return counts;
}

}  // namespace tempotsp
