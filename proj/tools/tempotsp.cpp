// Command-line frontend: every pipeline stage is one subcommand that reads
// and writes plain files, so stages can be run, cached, and tested
// independently. Library errors surface as a JSON error record on stderr
// and a nonzero exit.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tempotsp/aco.h"
#include "tempotsp/congestion.h"
#include "tempotsp/connections.h"
#include "tempotsp/errors.h"
#include "tempotsp/gps.h"
#include "tempotsp/kyoto.h"
#include "tempotsp/mesh.h"
#include "tempotsp/mobility.h"
#include "tempotsp/oracle.h"
#include "tempotsp/periods.h"
#include "tempotsp/profile.h"
#include "tempotsp/synth.h"
#include "tempotsp/tdtsp.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tempotsp;

// CLI11 config reader for JSON files. Top-level keys map to global options,
// nested objects to subcommand options, e.g. {"solve": {"ants": 50}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::exception& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
      throw ParseError("config: top-level value must be an object");
    }
    std::vector<CLI::ConfigItem> items;
    flatten({}, j, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  }

  static void flatten(const std::vector<std::string>& parents, const json& j,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        std::vector<std::string> next = parents;
        next.push_back(key);
        flatten(next, value, items);
      } else {
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
          for (const json& v : value) item.inputs.push_back(scalar(v));
        } else {
          item.inputs.push_back(scalar(value));
        }
        items.push_back(std::move(item));
      }
    }
  }
};

struct GlobalOptions {
  std::string out_dir = ".";
  std::optional<uint64_t> seed;
};

// Resolves a per-command output name against --out and creates directories.
std::string out_path(const GlobalOptions& g, const std::string& name) {
  fs::path p(name);
  if (!p.is_absolute()) p = fs::path(g.out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("failed writing output file: " + path);
}

std::vector<NodeRegion> parse_node_regions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open nodes file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
    std::vector<NodeRegion> regions;
    for (const json& node : j.at("nodes")) {
      NodeRegion region;
      region.name = node.at("name").get<std::string>();
      for (const json& m : node.at("meshes")) {
        region.meshes.push_back(mesh_from_string(m.get<std::string>()));
      }
      regions.push_back(std::move(region));
    }
    if (regions.empty()) throw ParseError("nodes file: empty node list");
    return regions;
  } catch (const json::exception& e) {
    throw ParseError("nodes file: " + std::string(e.what()));
  }
}

std::map<Date, ConnectionArray> split_by_date(const ConnectionArray& conns) {
  std::map<Date, ConnectionArray> by_date;
  for (const TransferConnection& c : conns.connections) {
    by_date[c.date].connections.push_back(c);
  }
  for (auto& [date, arr] : by_date) {
    arr.sort(ConnectionOrder::kDescendingDeparture);
  }
  return by_date;
}

TimeDependentGraph load_graph(const std::string& fixture, const std::string& weights_path) {
  if (!fixture.empty()) {
    if (fixture == "kyoto") return kyoto_fixture();
    throw ValidationError("unknown fixture: " + fixture + " (available: kyoto)");
  }
  if (weights_path.empty()) {
    throw ValidationError("either --fixture or --weights is required");
  }
  return graph_from_json_file(weights_path);
}

std::vector<std::string> tour_names(const TimeDependentGraph& g, const Tour& tour) {
  std::vector<std::string> names;
  names.reserve(tour.nodes.size());
  for (int v : tour.nodes) names.push_back(g.nodes[static_cast<size_t>(v)]);
  return names;
}

json timeline_json(const TimeDependentGraph& g, const TourCost& cost) {
  json arr = json::array();
  for (const TimelineStop& stop : cost.timeline) {
    arr.push_back({{"node", g.nodes[static_cast<size_t>(stop.node)]},
                   {"arrive_ms", stop.arrive_ms},
                   {"depart_ms", stop.depart_ms}});
  }
  return arr;
}

// ---------------------------------------------------------------- ingest --

struct IngestOptions {
  std::string logs_path;
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  double cell_size = 50.0;
  DaySeconds min_duration = 60;
  DaySeconds max_duration = 7200;
  std::string output = "connections.csv";
};

void run_ingest(const GlobalOptions& g, const IngestOptions& opt) {
  const LogSet logs = parse_logs_file(opt.logs_path);
  const MeshConfig mesh{opt.origin_lat, opt.origin_lon, opt.cell_size};
  ConnectionFilters filters;
  filters.min_duration = opt.min_duration;
  filters.max_duration = opt.max_duration;
  const ConnectionArray conns = build_connections(logs, mesh, filters);
  const std::string path = out_path(g, opt.output);
  write_connections_file(conns, path);
  std::cout << "ingest: " << logs.total_logs() << " logs in " << logs.groups.size()
            << " device-days -> " << conns.connections.size() << " connections (" << path << ")\n";
}

// -------------------------------------------------------------- profiles --

struct ProfileCmdOptions {
  std::string connections_path;
  std::vector<std::string> dest;
  bool transfers = false;
  DaySeconds transfer_slack = 0;
  std::string output = "profiles.json";
};

void run_profiles(const GlobalOptions& g, const ProfileCmdOptions& opt) {
  const ConnectionArray all = parse_connections_file(opt.connections_path);
  std::vector<MeshId> dest_region;
  for (const std::string& d : opt.dest) dest_region.push_back(mesh_from_string(d));
  ProfileOptions popts;
  popts.transfer_slack = opt.transfer_slack;

  const std::map<Date, ConnectionArray> by_date = split_by_date(all);
  if (by_date.empty()) {
    throw ValidationError("no connections in " + opt.connections_path);
  }
  // One scan per calendar date: journeys never chain across days. A single
  // date keeps the plain output name; several get a date suffix each.
  for (const auto& [date, conns] : by_date) {
    const ProfileSet set = opt.transfers ? mcpcsa_profiles(conns, dest_region, popts)
                                         : pcsa_profiles(conns, dest_region, popts);
    std::string name = opt.output;
    if (by_date.size() > 1) {
      const fs::path p(opt.output);
      name = (p.parent_path() / (p.stem().string() + "_" + format_date(date) + p.extension().string()))
                 .string();
    }
    const std::string path = out_path(g, name);
    write_text_file(path, profiles_to_json(set));
    std::cout << "profiles: " << format_date(date) << ": " << set.profiles.size()
              << " stops with journeys (" << path << ")\n";
  }
}

// --------------------------------------------------------------- analyze --

struct AnalyzeOptions {
  std::string connections_path;
  std::vector<std::string> dest;
  std::vector<std::string> origins;
  bool transfers = false;
  DaySeconds transfer_slack = 0;
  std::string field = "pure";
  DaySeconds window_start = 0;
  DaySeconds window_end = 86400;
  DaySeconds step = 300;
  DaySeconds bin_width = 300;
  DaySeconds cutoff = 7200;
  std::vector<int> months;
  std::vector<std::string> residences;
  bool weekdays = false;
  bool weekends = false;
  std::string prefix = "analysis";
};

void run_analyze(const GlobalOptions& g, const AnalyzeOptions& opt) {
  ConnectionArray all = parse_connections_file(opt.connections_path);

  // Residence is a property of the underlying devices, so it is applied to
  // the connections before profiles are built; date-derived clauses (months,
  // weekday) are applied to the samples afterwards.
  std::set<Residence> residences;
  for (const std::string& r : opt.residences) residences.insert(residence_from_string(r));
  if (!residences.empty()) {
    std::erase_if(all.connections,
                  [&](const TransferConnection& c) { return !residences.contains(c.residence); });
  }
  const std::optional<Residence> attributed =
      residences.size() == 1 ? std::optional<Residence>(*residences.begin()) : std::nullopt;

  std::vector<MeshId> dest_region;
  for (const std::string& d : opt.dest) dest_region.push_back(mesh_from_string(d));
  std::optional<std::set<MeshId>> origin_filter;
  if (!opt.origins.empty()) {
    origin_filter.emplace();
    for (const std::string& o : opt.origins) origin_filter->insert(mesh_from_string(o));
  }
  ProfileOptions popts;
  popts.transfer_slack = opt.transfer_slack;
  if (opt.window_start >= opt.window_end) {
    throw ValidationError("analyze: window start must precede window end");
  }

  std::vector<TravelTimeSample> samples;
  for (const auto& [date, conns] : split_by_date(all)) {
    const ProfileSet set = opt.transfers ? mcpcsa_profiles(conns, dest_region, popts)
                                         : pcsa_profiles(conns, dest_region, popts);
    std::vector<MeshId> stops;
    for (const auto& [stop, front] : set.profiles) {
      if (!origin_filter || origin_filter->contains(stop)) stops.push_back(stop);
    }
    std::sort(stops.begin(), stops.end());
    for (const MeshId& stop : stops) {
      const auto sampled = sample_profile(set.at(stop), stop, opt.window_start, opt.window_end,
                                          opt.step, date, attributed);
      samples.insert(samples.end(), sampled.begin(), sampled.end());
    }
  }

  SubgroupFilter filter;
  filter.months.insert(opt.months.begin(), opt.months.end());
  if (opt.weekdays) filter.weekdays_only = true;
  if (opt.weekends) filter.weekdays_only = false;
  samples = filter_samples(samples, filter);

  const std::map<int, double> means = mean_travel_time_by_hour(samples, opt.cutoff);
  std::ostringstream mean_csv;
  mean_csv << "hour,mean_minutes\n";
  mean_csv.precision(6);
  mean_csv << std::fixed;
  for (const auto& [hour, minutes] : means) mean_csv << hour << "," << minutes << "\n";

  const TravelTimeField field =
      opt.field == "waiting" ? TravelTimeField::kWaitingInclusive : TravelTimeField::kPure;
  std::ostringstream density_csv;
  density_csv << "bin_lower_s,density\n";
  if (!samples.empty()) {
    const DensityFunction d = density(samples, field, opt.bin_width);
    density_csv.precision(12);
    for (const auto& [lower, value] : d.bins) density_csv << lower << "," << value << "\n";
  }

  const std::string mean_path = out_path(g, opt.prefix + "_mean_by_hour.csv");
  const std::string density_path = out_path(g, opt.prefix + "_density.csv");
  write_text_file(mean_path, mean_csv.str());
  write_text_file(density_path, density_csv.str());
  if (samples.empty()) {
    std::cerr << "warning: no samples matched the filters; wrote empty tables\n";
  }
  std::cout << "analyze: " << samples.size() << " samples (" << mean_path << ", " << density_path
            << ")\n";
}

// --------------------------------------------------------------- weights --

struct WeightsOptions {
  std::string connections_path;
  std::string nodes_path;
  std::string stays_path;
  double quantile = 0.05;
  DaySeconds transfer_slack = 0;
  DaySeconds grid_start = 8 * 3600;
  DaySeconds grid_length = 7200;
  int grid_count = 5;
  std::string output = "weights.json";
};

void run_weights(const GlobalOptions& g, const WeightsOptions& opt) {
  const ConnectionArray all = parse_connections_file(opt.connections_path);
  const std::vector<NodeRegion> regions = parse_node_regions_file(opt.nodes_path);
  const PeriodGrid grid{opt.grid_start, opt.grid_length, opt.grid_count};
  ProfileOptions popts;
  popts.transfer_slack = opt.transfer_slack;

  std::vector<std::string> names;
  for (const NodeRegion& r : regions) names.push_back(r.name);
  const size_t n = regions.size();

  // entries_toward[j][i]: observed Pareto journeys i -> j pooled over dates
  // and over the member meshes of both endpoint regions.
  std::vector<std::vector<std::vector<ParetoEntry>>> entries_toward(
      n, std::vector<std::vector<ParetoEntry>>(n));
  const std::map<Date, ConnectionArray> by_date = split_by_date(all);
  for (const auto& [date, conns] : by_date) {
    for (size_t j = 0; j < n; ++j) {
      const ProfileSet set = pcsa_profiles(conns, regions[j].meshes, popts);
      for (size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        for (const MeshId& mesh : regions[i].meshes) {
          const auto& front = set.at(mesh);
          entries_toward[j][i].insert(entries_toward[j][i].end(), front.begin(), front.end());
        }
      }
    }
  }

  TimeDependentGraph graph = derive_weights(names, entries_toward, grid, opt.quantile);
  if (!opt.stays_path.empty()) {
    std::ifstream in(opt.stays_path);
    if (!in) throw IoError("cannot open stays file: " + opt.stays_path);
    json j;
    try {
      in >> j;
      for (const auto& [name, minutes] : j.items()) {
        graph.stay_minutes[static_cast<size_t>(graph.node_index(name))] = minutes.get<double>();
      }
    } catch (const json::exception& e) {
      throw ParseError("stays file: " + std::string(e.what()));
    }
  }
  const std::string path = out_path(g, opt.output);
  write_graph_file(graph, path);
  std::cout << "weights: " << n << " nodes x " << grid.count << " periods (" << path << ")\n";
}

// ------------------------------------------------------------ congestion --

struct CongestionOptions {
  std::string logs_path;
  std::string nodes_path;
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  double cell_size = 50.0;
  DaySeconds grid_start = 8 * 3600;
  DaySeconds grid_length = 7200;
  int grid_count = 5;
  double epsilon = kDefaultEpsilonTheta;
  std::string output = "congestion.json";
};

void run_congestion(const GlobalOptions& g, const CongestionOptions& opt) {
  const LogSet logs = parse_logs_file(opt.logs_path);
  const std::vector<NodeRegion> regions = parse_node_regions_file(opt.nodes_path);
  const MeshConfig mesh{opt.origin_lat, opt.origin_lon, opt.cell_size};
  const PeriodGrid grid{opt.grid_start, opt.grid_length, opt.grid_count};
  const CongestionTable table = compute_congestion(logs, mesh, regions, grid, opt.epsilon);
  const std::string path = out_path(g, opt.output);
  write_text_file(path, congestion_to_json(table));
  std::cout << "congestion: " << table.rows.size() << " nodes (" << path << ")\n";
}

// ----------------------------------------------------------------- solve --

struct SolveOptions {
  std::string fixture;
  std::string weights_path;
  std::string perturb_node;
  double factor = 1.0;
  double stay_multiplier = 1.0;
  AcoParams params;
  std::string output = "solve.json";
};

void run_solve(const GlobalOptions& g, SolveOptions opt) {
  TimeDependentGraph graph = load_graph(opt.fixture, opt.weights_path);
  if (!opt.perturb_node.empty()) {
    graph = perturb_weights(graph, graph.node_index(opt.perturb_node), opt.factor);
  }
  if (g.seed) opt.params.rng_seed = *g.seed;
  opt.params.stay_multiplier = opt.stay_multiplier;
  const SolveResult result = solve(graph, opt.params);

  json j;
  j["tour"] = tour_names(graph, result.best_tour);
  j["cost_minutes"] = result.best_cost.minutes;
  j["total_ms"] = result.best_cost.total_ms;
  j["start_s"] = result.best_tour.start_time;
  j["stay_multiplier"] = opt.stay_multiplier;
  j["timeline"] = timeline_json(graph, result.best_cost);
  j["cost_history"] = result.cost_history;
  j["evaluations"] = result.evaluations;
  j["seed"] = opt.params.rng_seed;
  const std::string path = out_path(g, opt.output);
  write_text_file(path, j.dump(2) + "\n");

  std::cout << "solve: cost " << result.best_cost.minutes << " min, tour";
  for (const std::string& name : tour_names(graph, result.best_tour)) std::cout << " " << name;
  std::cout << " (" << path << ")\n";
}

// ---------------------------------------------------------------- oracle --

struct OracleOptions {
  std::string fixture;
  std::string weights_path;
  std::string perturb_node;
  double factor = 1.0;
  double stay_multiplier = 1.0;
  std::optional<DaySeconds> start;
  std::string output = "oracle.json";
};

void run_oracle(const GlobalOptions& g, const OracleOptions& opt) {
  TimeDependentGraph graph = load_graph(opt.fixture, opt.weights_path);
  if (!opt.perturb_node.empty()) {
    graph = perturb_weights(graph, graph.node_index(opt.perturb_node), opt.factor);
  }
  const DaySeconds start = opt.start.value_or(graph.periods.start);
  const OracleResult result = brute_force(graph, opt.stay_multiplier, start);

  json j;
  j["tour"] = tour_names(graph, result.optimal_tour);
  j["cost_minutes"] = result.optimal_cost.minutes;
  j["total_ms"] = result.optimal_cost.total_ms;
  j["start_s"] = start;
  j["stay_multiplier"] = opt.stay_multiplier;
  j["timeline"] = timeline_json(graph, result.optimal_cost);
  j["permutations"] = result.permutations_evaluated;
  j["ties"] = json::array();
  for (const Tour& tie : result.ties) j["ties"].push_back(tour_names(graph, tie));
  const std::string path = out_path(g, opt.output);
  write_text_file(path, j.dump(2) + "\n");

  std::cout << "oracle: cost " << result.optimal_cost.minutes << " min over "
            << result.permutations_evaluated << " permutations, " << result.ties.size()
            << " optimal tour(s) (" << path << ")\n";
}

// ----------------------------------------------------------------- synth --

struct SynthOptions {
  std::string spec_path;
  std::string output = "logs.csv";
};

void run_synth(const GlobalOptions& g, const SynthOptions& opt) {
  CitySpec spec = city_spec_from_json_file(opt.spec_path);
  if (g.seed) spec.seed = *g.seed;
  const LogSet logs = generate(spec);
  const std::string path = out_path(g, opt.output);
  write_logs_file(logs, path);
  std::cout << "synth: " << logs.total_logs() << " logs in " << logs.groups.size()
            << " device-days (" << path << ")\n";
}

void add_grid_flags(CLI::App* cmd, DaySeconds& start, DaySeconds& length, int& count) {
  cmd->add_option("--grid-start", start, "Period grid start, seconds since midnight")
      ->capture_default_str();
  cmd->add_option("--grid-length", length, "Period length in seconds")->capture_default_str();
  cmd->add_option("--grid-count", count, "Number of periods")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GPS trajectories -> temporal mobility networks -> time-dependent tours"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; nested keys address subcommands");

  GlobalOptions global;
  app.add_option("--out", global.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", global.seed, "Random seed override for solve/synth");

  IngestOptions ingest;
  CLI::App* cmd_ingest = app.add_subcommand("ingest", "GPS log CSV -> transfer connection CSV");
  cmd_ingest->fallthrough();
  cmd_ingest->add_option("--logs", ingest.logs_path, "GPS log CSV")->required();
  cmd_ingest->add_option("--origin-lat", ingest.origin_lat, "Mesh grid origin latitude")->required();
  cmd_ingest->add_option("--origin-lon", ingest.origin_lon, "Mesh grid origin longitude")->required();
  cmd_ingest->add_option("--cell-size", ingest.cell_size, "Mesh cell size in meters")
      ->capture_default_str();
  cmd_ingest->add_option("--min-duration", ingest.min_duration, "Shortest movement to keep, seconds")
      ->capture_default_str();
  cmd_ingest->add_option("--max-duration", ingest.max_duration, "Longest movement to keep, seconds")
      ->capture_default_str();
  cmd_ingest->add_option("--output", ingest.output, "Connection CSV name")->capture_default_str();
  cmd_ingest->callback([&] { run_ingest(global, ingest); });

  ProfileCmdOptions profiles;
  CLI::App* cmd_profiles =
      app.add_subcommand("profiles", "Connection CSV -> journey profiles toward one destination");
  cmd_profiles->fallthrough();
  cmd_profiles->add_option("--connections", profiles.connections_path, "Connection CSV")->required();
  cmd_profiles
      ->add_option("--dest", profiles.dest, "Destination mesh 'row,col'; repeat for a region")
      ->required();
  cmd_profiles->add_flag("--transfers", profiles.transfers,
                         "Track transfer counts (three-criteria fronts)");
  cmd_profiles
      ->add_option("--transfer-slack", profiles.transfer_slack,
                   "Minimum connection change time, seconds")
      ->capture_default_str();
  cmd_profiles->add_option("--output", profiles.output,
                           "Profiles JSON name (multi-date inputs get a date suffix)")
      ->capture_default_str();
  cmd_profiles->callback([&] { run_profiles(global, profiles); });

  AnalyzeOptions analyze;
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "Travel-time statistics toward one destination");
  cmd_analyze->fallthrough();
  cmd_analyze->add_option("--connections", analyze.connections_path, "Connection CSV")->required();
  cmd_analyze->add_option("--dest", analyze.dest, "Destination mesh 'row,col'; repeat for a region")
      ->required();
  cmd_analyze->add_option("--origin", analyze.origins, "Restrict to these origin meshes 'row,col'");
  cmd_analyze->add_flag("--transfers", analyze.transfers, "Use three-criteria fronts");
  cmd_analyze
      ->add_option("--transfer-slack", analyze.transfer_slack,
                   "Minimum connection change time, seconds")
      ->capture_default_str();
  cmd_analyze->add_option("--field", analyze.field, "Density field: pure or waiting")
      ->check(CLI::IsMember({"pure", "waiting"}))
      ->capture_default_str();
  cmd_analyze->add_option("--window-start", analyze.window_start, "First query time, seconds")
      ->capture_default_str();
  cmd_analyze->add_option("--window-end", analyze.window_end, "End of query times, seconds")
      ->capture_default_str();
  cmd_analyze->add_option("--step", analyze.step, "Query time step, seconds")->capture_default_str();
  cmd_analyze->add_option("--bin-width", analyze.bin_width, "Histogram bin width, seconds")
      ->capture_default_str();
  cmd_analyze->add_option("--cutoff", analyze.cutoff, "Outlier cutoff for hourly means, seconds")
      ->capture_default_str();
  cmd_analyze->add_option("--months", analyze.months, "Keep these calendar months (1-12)")
      ->delimiter(',');
  cmd_analyze->add_option("--residence", analyze.residences,
                          "Keep these residence classes (citizen, domestic_visitor, "
                          "foreign_visitor, unknown)");
  cmd_analyze->add_flag("--weekdays", analyze.weekdays, "Keep weekdays only");
  cmd_analyze->add_flag("--weekends", analyze.weekends, "Keep weekends only");
  cmd_analyze->add_option("--prefix", analyze.prefix, "Output file prefix")->capture_default_str();
  cmd_analyze->callback([&] {
    if (analyze.weekdays && analyze.weekends) {
      throw ValidationError("analyze: --weekdays and --weekends exclude each other");
    }
    run_analyze(global, analyze);
  });

  WeightsOptions weights;
  CLI::App* cmd_weights =
      app.add_subcommand("weights", "Connection CSV + node regions -> time-dependent weight table");
  cmd_weights->fallthrough();
  cmd_weights->add_option("--connections", weights.connections_path, "Connection CSV")->required();
  cmd_weights->add_option("--nodes", weights.nodes_path, "Node regions JSON")->required();
  cmd_weights->add_option("--stays", weights.stays_path, "JSON map node -> stay minutes");
  cmd_weights->add_option("--quantile", weights.quantile, "Lower quantile of pure travel times")
      ->capture_default_str();
  cmd_weights
      ->add_option("--transfer-slack", weights.transfer_slack,
                   "Minimum connection change time, seconds")
      ->capture_default_str();
  add_grid_flags(cmd_weights, weights.grid_start, weights.grid_length, weights.grid_count);
  cmd_weights->add_option("--output", weights.output, "Weight table JSON name")
      ->capture_default_str();
  cmd_weights->callback([&] { run_weights(global, weights); });

  CongestionOptions congestion;
  CLI::App* cmd_congestion =
      app.add_subcommand("congestion", "GPS log CSV + node regions -> congestion levels");
  cmd_congestion->fallthrough();
  cmd_congestion->add_option("--logs", congestion.logs_path, "GPS log CSV")->required();
  cmd_congestion->add_option("--nodes", congestion.nodes_path, "Node regions JSON")->required();
  cmd_congestion->add_option("--origin-lat", congestion.origin_lat, "Mesh grid origin latitude")
      ->required();
  cmd_congestion->add_option("--origin-lon", congestion.origin_lon, "Mesh grid origin longitude")
      ->required();
  cmd_congestion->add_option("--cell-size", congestion.cell_size, "Mesh cell size in meters")
      ->capture_default_str();
  add_grid_flags(cmd_congestion, congestion.grid_start, congestion.grid_length,
                 congestion.grid_count);
  cmd_congestion->add_option("--epsilon", congestion.epsilon, "Lower clamp for congestion levels")
      ->capture_default_str();
  cmd_congestion->add_option("--output", congestion.output, "Congestion JSON name")
      ->capture_default_str();
  cmd_congestion->callback([&] { run_congestion(global, congestion); });

  SolveOptions solve_opt;
  CLI::App* cmd_solve = app.add_subcommand("solve", "Ant colony tour search on a weight table");
  cmd_solve->fallthrough();
  cmd_solve->add_option("--fixture", solve_opt.fixture, "Bundled instance name (kyoto)");
  cmd_solve->add_option("--weights", solve_opt.weights_path, "Weight table JSON");
  auto* solve_perturb =
      cmd_solve->add_option("--perturb-node", solve_opt.perturb_node, "Scale this node's weights");
  cmd_solve->add_option("--factor", solve_opt.factor, "Perturbation factor")
      ->needs(solve_perturb)
      ->capture_default_str();
  cmd_solve
      ->add_option("--stay-multiplier", solve_opt.stay_multiplier, "Scale on per-node stay times")
      ->capture_default_str();
  cmd_solve->add_option("--alpha", solve_opt.params.alpha, "Pheromone exponent")
      ->capture_default_str();
  cmd_solve->add_option("--beta", solve_opt.params.beta, "Heuristic exponent")
      ->capture_default_str();
  cmd_solve->add_option("--rho", solve_opt.params.rho, "Pheromone retention per iteration")
      ->capture_default_str();
  cmd_solve->add_option("--deposit", solve_opt.params.q, "Pheromone deposit constant")
      ->capture_default_str();
  cmd_solve->add_option("--ants", solve_opt.params.ants, "Ants per iteration")
      ->capture_default_str();
  cmd_solve->add_option("--iterations", solve_opt.params.iterations, "Iterations")
      ->capture_default_str();
  cmd_solve
      ->add_option("--exploration", solve_opt.params.exploration_prob,
                   "Uniform random move probability")
      ->capture_default_str();
  cmd_solve
      ->add_option("--initial-pheromone", solve_opt.params.initial_pheromone,
                   "Starting pheromone level")
      ->capture_default_str();
  cmd_solve->add_flag("--elitist", solve_opt.params.elitist,
                      "Best-so-far tour also deposits each iteration");
  cmd_solve->add_option("--output", solve_opt.output, "Result JSON name")->capture_default_str();
  cmd_solve->callback([&] { run_solve(global, solve_opt); });

  OracleOptions oracle;
  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "Exhaustive exact tour search (small node counts)");
  cmd_oracle->fallthrough();
  cmd_oracle->add_option("--fixture", oracle.fixture, "Bundled instance name (kyoto)");
  cmd_oracle->add_option("--weights", oracle.weights_path, "Weight table JSON");
  auto* oracle_perturb =
      cmd_oracle->add_option("--perturb-node", oracle.perturb_node, "Scale this node's weights");
  cmd_oracle->add_option("--factor", oracle.factor, "Perturbation factor")
      ->needs(oracle_perturb)
      ->capture_default_str();
  cmd_oracle
      ->add_option("--stay-multiplier", oracle.stay_multiplier, "Scale on per-node stay times")
      ->capture_default_str();
  cmd_oracle->add_option("--start", oracle.start,
                         "Tour start time, seconds since midnight (default: grid start)");
  cmd_oracle->add_option("--output", oracle.output, "Result JSON name")->capture_default_str();
  cmd_oracle->callback([&] { run_oracle(global, oracle); });

  SynthOptions synth;
  CLI::App* cmd_synth = app.add_subcommand("synth", "Generate GPS logs for a configured grid city");
  cmd_synth->fallthrough();
  cmd_synth->add_option("--spec", synth.spec_path, "City spec JSON")->required();
  cmd_synth->add_option("--output", synth.output, "GPS log CSV name")->capture_default_str();
  cmd_synth->callback([&] { run_synth(global, synth); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    const json record{{"error", {{"type", e.type()}, {"message", e.what()}}}};
    std::cerr << record.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    const json record{{"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cerr << record.dump() << "\n";
    return 2;
  }
  return 0;
}
