#include "tempotsp/synth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tempotsp/errors.h"
#include "tempotsp/rng.h"

namespace tempotsp {

namespace {

using nlohmann::json;

std::string pad3(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", v);
  return buf;
}

}  // namespace

int CitySpec::landmark_index(const std::string& name) const {
  for (size_t i = 0; i < landmarks.size(); ++i) {
    if (landmarks[i].name == name) return static_cast<int>(i);
  }
  throw ValidationError("city spec: unknown landmark '" + name + "'");
}

void CitySpec::validate() const {
  if (grid_rows <= 0 || grid_cols <= 0) {
    throw ValidationError("city spec: grid extent must be positive");
  }
  if (period_grid.period_length <= 0 || period_grid.count <= 0) {
    throw ValidationError("city spec: invalid period grid");
  }
  if (noise.lag_s < 0) {
    throw ValidationError("city spec: lag_s must be non-negative");
  }
  if (noise.lag_s + 1 > period_grid.period_length) {
    throw ValidationError("city spec: lag_s must be smaller than the period length");
  }
  if (noise.dropout < 0.0 || noise.dropout > 1.0) {
    throw ValidationError("city spec: dropout must lie in [0, 1]");
  }
  if (landmarks.empty()) {
    throw ValidationError("city spec: at least one landmark required");
  }
  for (const Landmark& lm : landmarks) {
    const MeshId cell = assign_mesh(lm.lat, lm.lon, mesh);
    if (cell.row < 0 || cell.row >= grid_rows || cell.col < 0 || cell.col >= grid_cols) {
      throw ValidationError("city spec: landmark '" + lm.name + "' falls outside the grid extent");
    }
  }
  double max_minutes = 0.0;
  for (const Corridor& c : corridors) {
    const int from = landmark_index(c.from);
    const int to = landmark_index(c.to);
    if (from == to) {
      throw ValidationError("city spec: corridor endpoints must differ");
    }
    if (assign_mesh(landmarks[from].lat, landmarks[from].lon, mesh) ==
        assign_mesh(landmarks[to].lat, landmarks[to].lon, mesh)) {
      throw ValidationError("city spec: corridor '" + c.from + "'->'" + c.to +
                            "' endpoints share a mesh cell");
    }
    if (static_cast<int>(c.minutes.size()) != period_grid.count) {
      throw ValidationError("city spec: corridor '" + c.from + "'->'" + c.to + "' needs " +
                            std::to_string(period_grid.count) + " per-period travel times");
    }
    for (double m : c.minutes) {
      if (!(m > 0.0)) {
        throw ValidationError("city spec: corridor travel times must be positive");
      }
      max_minutes = std::max(max_minutes, m);
    }
    if (c.trips_per_period < 0 || c.waypoints < 0) {
      throw ValidationError("city spec: corridor counts must be non-negative");
    }
  }
  for (const auto& [name, counts] : stay_intensity) {
    landmark_index(name);
    if (static_cast<int>(counts.size()) != period_grid.count) {
      throw ValidationError("city spec: stay intensity for '" + name + "' needs " +
                            std::to_string(period_grid.count) + " per-period counts");
    }
    for (int v : counts) {
      if (v < 0) throw ValidationError("city spec: stay intensity must be non-negative");
    }
  }
  const int64_t last_arrival = static_cast<int64_t>(period_grid.end()) +
                               static_cast<int64_t>(std::llround(max_minutes * 60.0)) +
                               2 * noise.lag_s;
  if (last_arrival >= 86400) {
    throw ValidationError("city spec: trips could overrun the end of the day");
  }
}

LogSet generate(const CitySpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  std::vector<DeviceDay> groups;

  auto log_at = [&](double lat, double lon, DaySeconds t, Residence r) {
    GpsLog log;
    log.time = Timestamp{spec.date, t};
    log.lat = lat;
    log.lon = lon;
    log.residence = r;
    return log;
  };

  // Corridor trips. All random draws happen in one canonical order, before
  // dropout thins the fixes, so the generated values never depend on what
  // earlier trips dropped.
  for (size_t ci = 0; ci < spec.corridors.size(); ++ci) {
    const Corridor& c = spec.corridors[ci];
    const Landmark& from = spec.landmarks[static_cast<size_t>(spec.landmark_index(c.from))];
    const Landmark& to = spec.landmarks[static_cast<size_t>(spec.landmark_index(c.to))];
    const Residence res = c.residence.value_or(Residence::kCitizen);
    for (int p = 0; p < spec.period_grid.count; ++p) {
      const DaySeconds period_start = spec.period_grid.start + p * spec.period_grid.period_length;
      const DaySeconds period_end = period_start + spec.period_grid.period_length;
      const int64_t travel_s = std::llround(c.minutes[static_cast<size_t>(p)] * 60.0);
      for (int t = 0; t < c.trips_per_period; ++t) {
        // Keep the lagged departure inside its intended period.
        const DaySeconds depart = static_cast<DaySeconds>(
            rng.between(period_start, period_end - 1 - spec.noise.lag_s));
        const int fixes = 2 + c.waypoints;
        std::vector<DaySeconds> times(static_cast<size_t>(fixes));
        std::vector<bool> keep(static_cast<size_t>(fixes));
        for (int f = 0; f < fixes; ++f) {
          const int64_t offset = travel_s * f / (fixes - 1);
          const DaySeconds lag =
              spec.noise.lag_s > 0 ? static_cast<DaySeconds>(rng.between(0, spec.noise.lag_s)) : 0;
          times[static_cast<size_t>(f)] = static_cast<DaySeconds>(depart + offset + lag);
        }
        for (int f = 0; f < fixes; ++f) {
          keep[static_cast<size_t>(f)] = !(spec.noise.dropout > 0.0 && rng.uniform() < spec.noise.dropout);
        }
        DeviceDay day;
        day.daily_id = "c" + std::to_string(ci) + "-p" + std::to_string(p) + "-t" + pad3(t);
        for (int f = 0; f < fixes; ++f) {
          if (!keep[static_cast<size_t>(f)]) continue;
          const double frac = static_cast<double>(f) / (fixes - 1);
          const double lat = from.lat + (to.lat - from.lat) * frac;
          const double lon = from.lon + (to.lon - from.lon) * frac;
          day.logs.push_back(log_at(lat, lon, times[static_cast<size_t>(f)], res));
        }
        if (!day.logs.empty()) {
          std::stable_sort(day.logs.begin(), day.logs.end(),
                           [](const GpsLog& a, const GpsLog& b) { return a.time < b.time; });
          groups.push_back(std::move(day));
        }
      }
    }
  }

  // Dwell visitors: one fix per distinct device-day, placed inside its period
  // with no lag so planted per-period counts stay exact.
  for (size_t li = 0; li < spec.landmarks.size(); ++li) {
    const Landmark& lm = spec.landmarks[li];
    const auto it = spec.stay_intensity.find(lm.name);
    if (it == spec.stay_intensity.end()) continue;
    for (int p = 0; p < spec.period_grid.count; ++p) {
      const DaySeconds period_start = spec.period_grid.start + p * spec.period_grid.period_length;
      const DaySeconds period_end = period_start + spec.period_grid.period_length;
      const int count = it->second[static_cast<size_t>(p)];
      for (int i = 0; i < count; ++i) {
        const DaySeconds t = static_cast<DaySeconds>(rng.between(period_start, period_end - 1));
        const bool kept = !(spec.noise.dropout > 0.0 && rng.uniform() < spec.noise.dropout);
        if (!kept) continue;
        DeviceDay day;
        day.daily_id = "s" + std::to_string(li) + "-p" + std::to_string(p) + "-i" + pad3(i);
        day.logs.push_back(log_at(lm.lat, lm.lon, t, Residence::kCitizen));
        groups.push_back(std::move(day));
      }
    }
  }

  std::sort(groups.begin(), groups.end(),
            [](const DeviceDay& a, const DeviceDay& b) { return a.daily_id < b.daily_id; });
  LogSet out;
  out.groups = std::move(groups);
  return out;
}

CitySpec city_spec_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("city spec: ") + e.what());
  }
  try {
    CitySpec spec;
    spec.seed = j.value("seed", uint64_t{1});
    spec.date = parse_date(j.at("date").get<std::string>());
    const json& mesh = j.at("mesh");
    spec.mesh.origin_lat = mesh.at("origin_lat").get<double>();
    spec.mesh.origin_lon = mesh.at("origin_lon").get<double>();
    spec.mesh.cell_size_m = mesh.value("cell_size_m", 50.0);
    spec.grid_rows = j.at("grid_rows").get<int>();
    spec.grid_cols = j.at("grid_cols").get<int>();
    const json& grid = j.at("period_grid");
    spec.period_grid.start = grid.at("start_s").get<DaySeconds>();
    spec.period_grid.period_length = grid.at("period_length_s").get<DaySeconds>();
    spec.period_grid.count = grid.at("count").get<int>();
    for (const json& lm : j.at("landmarks")) {
      spec.landmarks.push_back(Landmark{lm.at("name").get<std::string>(),
                                        lm.at("lat").get<double>(), lm.at("lon").get<double>()});
    }
    for (const json& c : j.value("corridors", json::array())) {
      Corridor corridor;
      corridor.from = c.at("from").get<std::string>();
      corridor.to = c.at("to").get<std::string>();
      corridor.minutes = c.at("minutes").get<std::vector<double>>();
      corridor.trips_per_period = c.at("trips_per_period").get<int>();
      corridor.waypoints = c.value("waypoints", 0);
      if (c.contains("residence")) {
        corridor.residence = residence_from_string(c.at("residence").get<std::string>());
      }
      spec.corridors.push_back(std::move(corridor));
    }
    if (j.contains("stay_intensity")) {
      for (const auto& [name, counts] : j.at("stay_intensity").items()) {
        spec.stay_intensity[name] = counts.get<std::vector<int>>();
      }
    }
    if (j.contains("noise")) {
      spec.noise.lag_s = j.at("noise").value("lag_s", DaySeconds{0});
      spec.noise.dropout = j.at("noise").value("dropout", 0.0);
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("city spec: ") + e.what());
  }
}

CitySpec city_spec_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open city spec file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return city_spec_from_json(buf.str());
}

std::string city_spec_to_json(const CitySpec& spec) {
  json j;
  j["seed"] = spec.seed;
  j["date"] = format_date(spec.date);
  j["mesh"] = {{"origin_lat", spec.mesh.origin_lat},
               {"origin_lon", spec.mesh.origin_lon},
               {"cell_size_m", spec.mesh.cell_size_m}};
  j["grid_rows"] = spec.grid_rows;
  j["grid_cols"] = spec.grid_cols;
  j["period_grid"] = {{"start_s", spec.period_grid.start},
                      {"period_length_s", spec.period_grid.period_length},
                      {"count", spec.period_grid.count}};
  j["landmarks"] = json::array();
  for (const Landmark& lm : spec.landmarks) {
    j["landmarks"].push_back({{"name", lm.name}, {"lat", lm.lat}, {"lon", lm.lon}});
  }
  j["corridors"] = json::array();
  for (const Corridor& c : spec.corridors) {
    json cj = {{"from", c.from},
               {"to", c.to},
               {"minutes", c.minutes},
               {"trips_per_period", c.trips_per_period}};
    if (c.waypoints > 0) cj["waypoints"] = c.waypoints;
    if (c.residence) cj["residence"] = to_string(*c.residence);
    j["corridors"].push_back(std::move(cj));
  }
  if (!spec.stay_intensity.empty()) {
    json sj = json::object();
    for (const auto& [name, counts] : spec.stay_intensity) sj[name] = counts;
    j["stay_intensity"] = std::move(sj);
  }
  j["noise"] = {{"lag_s", spec.noise.lag_s}, {"dropout", spec.noise.dropout}};
  return j.dump(2) + "\n";
}

}  // namespace tempotsp
