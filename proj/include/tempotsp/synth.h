#ifndef TEMPOTSP_SYNTH_H
#define TEMPOTSP_SYNTH_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempotsp/gps.h"
#include "tempotsp/mesh.h"
#include "tempotsp/periods.h"

namespace tempotsp {

// Description of a grid city with planted travel times and dwell patterns.
// Generated logs feed the ingest pipeline, whose outputs can then be checked
// against the planted ground truth.

struct Landmark {
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
};

struct Corridor {
  std::string from;
  std::string to;
  std::vector<double> minutes;  // true travel time per period
  int trips_per_period = 0;
  int waypoints = 0;  // intermediate fixes per trip; 0 = direct two-log trips
  std::optional<Residence> residence;  // defaults to citizen
};

struct NoiseSpec {
  DaySeconds lag_s = 0;   // measurement lag, uniform in [0, lag_s]
  double dropout = 0.0;   // per-log drop probability
};

struct CitySpec {
  uint64_t seed = 1;
  Date date;
  MeshConfig mesh;
  int grid_rows = 0;
  int grid_cols = 0;
  PeriodGrid period_grid;
  std::vector<Landmark> landmarks;
  std::vector<Corridor> corridors;
  // Planted dwell visitors per landmark per period; each visitor is one
  // distinct device-day with a single fix inside the period.
  std::map<std::string, std::vector<int>> stay_intensity;
  NoiseSpec noise;

  void validate() const;
  int landmark_index(const std::string& name) const;  // throws on unknown
};

// Deterministic per seed: the same spec always yields the same LogSet, and
// writing it produces byte-identical CSV.
LogSet generate(const CitySpec& spec);

CitySpec city_spec_from_json(const std::string& json_text);
CitySpec city_spec_from_json_file(const std::string& path);
std::string city_spec_to_json(const CitySpec& spec);

}  // namespace tempotsp

#endif  // TEMPOTSP_SYNTH_H
