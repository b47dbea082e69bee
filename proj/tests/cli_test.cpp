// Drives the installed command-line binary end to end.  The binary path
// arrives as the first program argument (wired up by the build).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;
std::string g_work;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_file = g_work + "/cap_out_" + std::to_string(counter);
  const std::string err_file = g_work + "/cap_err_" + std::to_string(counter);
  ++counter;
  const std::string cmd = g_cli + " " + args + " >" + out_file + " 2>" + err_file;
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

// A two-landmark city with planted forward/reverse corridor times, reused by
// the pipeline cases below.
const char* kCityJson = R"({
  "seed": 5,
  "date": "2026-04-06",
  "mesh": {"origin_lat": 35.0, "origin_lon": 135.76, "cell_size_m": 500.0},
  "grid_rows": 2,
  "grid_cols": 6,
  "period_grid": {"start_s": 28800, "period_length_s": 7200, "count": 5},
  "landmarks": [
    {"name": "west", "lat": 35.001, "lon": 135.761},
    {"name": "east", "lat": 35.001, "lon": 135.781}
  ],
  "corridors": [
    {"from": "west", "to": "east", "minutes": [30, 10, 20, 15, 25], "trips_per_period": 3},
    {"from": "east", "to": "west", "minutes": [25, 12, 18, 14, 22], "trips_per_period": 3}
  ],
  "stay_intensity": {"east": [5, 1, 2, 1, 3]},
  "noise": {"lag_s": 0, "dropout": 0.0}
})";

const char* kNodesJson = R"({
  "nodes": [
    {"name": "west", "meshes": ["0,0"]},
    {"name": "east", "meshes": ["0,3"]}
  ]
})";

}  // namespace

TEST_CASE("help and bad usage") {
  CHECK(run_cli("--help").code == 0);
  const CmdResult help = run_cli("--help");
  for (const char* sub :
       {"ingest", "profiles", "analyze", "weights", "congestion", "solve", "oracle", "synth"}) {
    CHECK(help.out.find(sub) != std::string::npos);
  }
  const CmdResult solve_help = run_cli("solve --help");
  CHECK(solve_help.code == 0);
  CHECK(solve_help.out.find("--ants") != std::string::npos);

  CHECK(run_cli("").code != 0);                       // a subcommand is required
  CHECK(run_cli("solve --no-such-flag").code != 0);   // unknown flag
  CHECK(run_cli("profiles").code != 0);               // missing required options
}

TEST_CASE("solver run on the bundled instance") {
  const std::string dir = g_work + "/solve";
  const CmdResult r = run_cli("--out " + dir + " --seed 7 solve --fixture kyoto --ants 20 --iterations 10");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("solve: cost") != std::string::npos);

  const json j = json::parse(slurp(dir + "/solve.json"));
  REQUIRE(j.at("tour").size() == 8);
  CHECK(j.at("tour").front() == "v0");
  CHECK(j.at("tour").back() == "v0");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("evaluations") == 200);
  CHECK(j.at("cost_history").size() == 10);
  CHECK(j.at("start_s") == 28800);
  CHECK(j.at("timeline").size() == 8);
  CHECK(j.at("cost_minutes").get<double>() > 0.0);

  // Identical invocations must produce identical bytes.
  const std::string first = slurp(dir + "/solve.json");
  const CmdResult again = run_cli("--out " + dir + " --seed 7 solve --fixture kyoto --ants 20 --iterations 10");
  REQUIRE(again.code == 0);
  CHECK(slurp(dir + "/solve.json") == first);
}

TEST_CASE("exact search reproduces the published routes") {
  const std::string dir = g_work + "/oracle";
  REQUIRE(run_cli("--out " + dir + " oracle --fixture kyoto").code == 0);
  const json base = json::parse(slurp(dir + "/oracle.json"));
  CHECK(base.at("tour") ==
        json::array({"v0", "v4", "v5", "v2", "v1", "v3", "v6", "v0"}));
  CHECK(base.at("cost_minutes") == 548.0);
  CHECK(base.at("permutations") == 720);
  CHECK(base.at("ties").size() == 1);

  REQUIRE(run_cli("--out " + dir +
                  " oracle --fixture kyoto --perturb-node v3 --factor 2 --output doubled.json")
              .code == 0);
  const json doubled = json::parse(slurp(dir + "/doubled.json"));
  CHECK(doubled.at("tour") ==
        json::array({"v0", "v6", "v3", "v1", "v2", "v5", "v4", "v0"}));
  CHECK(doubled.at("cost_minutes") == 596.0);
}

TEST_CASE("synthetic city generation is reproducible and seedable") {
  const std::string dir = g_work + "/synth";
  spit(g_work + "/city.json", kCityJson);
  REQUIRE(run_cli("--out " + dir + " synth --spec " + g_work + "/city.json").code == 0);
  const std::string first = slurp(dir + "/logs.csv");
  CHECK(first.find("daily_id,timestamp,lat,lon,residence") == 0);

  REQUIRE(run_cli("--out " + dir + " synth --spec " + g_work + "/city.json").code == 0);
  CHECK(slurp(dir + "/logs.csv") == first);

  REQUIRE(run_cli("--out " + dir + " --seed 9 synth --spec " + g_work +
                  "/city.json --output reseeded.csv")
              .code == 0);
  CHECK(slurp(dir + "/reseeded.csv") != first);
}

TEST_CASE("the full pipeline recovers the planted city") {
  const std::string dir = g_work + "/pipeline";
  spit(g_work + "/city.json", kCityJson);
  spit(g_work + "/nodes.json", kNodesJson);
  REQUIRE(run_cli("--out " + dir + " synth --spec " + g_work + "/city.json").code == 0);

  const CmdResult ingest = run_cli(
      "--out " + dir + " ingest --logs " + dir +
      "/logs.csv --origin-lat 35.0 --origin-lon 135.76 --cell-size 500");
  REQUIRE(ingest.code == 0);
  CHECK(ingest.out.find("30 connections") != std::string::npos);

  const CmdResult profiles = run_cli("--out " + dir + " profiles --connections " + dir +
                                     "/connections.csv --dest 0,3");
  REQUIRE(profiles.code == 0);
  const json profs = json::parse(slurp(dir + "/profiles.json"));
  REQUIRE(profs.contains("0,0"));
  CHECK(profs.at("0,0").size() == 15);  // planted distinct departures survive

  const CmdResult weights = run_cli("--out " + dir + " weights --connections " + dir +
                                    "/connections.csv --nodes " + g_work + "/nodes.json");
  REQUIRE(weights.code == 0);
  const json graph = json::parse(slurp(dir + "/weights.json"));
  CHECK(graph.at("weights").at("west->east") == json::array({30, 10, 20, 15, 25}));
  CHECK(graph.at("weights").at("east->west") == json::array({25, 12, 18, 14, 22}));

  const CmdResult congestion = run_cli(
      "--out " + dir + " congestion --logs " + dir + "/logs.csv --nodes " + g_work +
      "/nodes.json --origin-lat 35.0 --origin-lon 135.76 --cell-size 500");
  REQUIRE(congestion.code == 0);
  const json cong = json::parse(slurp(dir + "/congestion.json"));
  CHECK(cong.at("theta").contains("east"));
  CHECK(cong.at("theta").at("east").size() == 5);
  CHECK(cong.at("stay_counts").at("east")[0].get<int>() >= 5);

  // A derived two-node table feeds straight back into the solvers.
  const CmdResult solve = run_cli("--out " + dir + " solve --weights " + dir +
                                  "/weights.json --ants 5 --iterations 5 --output mini.json");
  REQUIRE(solve.code == 0);
  const json mini = json::parse(slurp(dir + "/mini.json"));
  CHECK(mini.at("tour") == json::array({"west", "east", "west"}));
}

TEST_CASE("analysis emits hourly means and a histogram") {
  const std::string dir = g_work + "/analyze";
  spit(g_work + "/city.json", kCityJson);
  REQUIRE(run_cli("--out " + dir + " synth --spec " + g_work + "/city.json").code == 0);
  REQUIRE(run_cli("--out " + dir + " ingest --logs " + dir +
                  "/logs.csv --origin-lat 35.0 --origin-lon 135.76 --cell-size 500")
              .code == 0);

  const CmdResult analyze = run_cli("--out " + dir + " analyze --connections " + dir +
                                    "/connections.csv --dest 0,3 --step 600");
  REQUIRE(analyze.code == 0);
  const std::string mean_csv = slurp(dir + "/analysis_mean_by_hour.csv");
  CHECK(mean_csv.find("hour,mean_minutes\n") == 0);
  CHECK(mean_csv.size() > std::string("hour,mean_minutes\n").size());
  const std::string density_csv = slurp(dir + "/analysis_density.csv");
  CHECK(density_csv.find("bin_lower_s,density\n") == 0);
  CHECK(density_csv.size() > std::string("bin_lower_s,density\n").size());

  // A filter nothing matches: still exit 0, header-only tables, a warning.
  const CmdResult empty = run_cli("--out " + dir + " analyze --connections " + dir +
                                  "/connections.csv --dest 0,3 --months 12 --prefix empty");
  CHECK(empty.code == 0);
  CHECK(empty.err.find("no samples") != std::string::npos);
  CHECK(slurp(dir + "/empty_mean_by_hour.csv") == "hour,mean_minutes\n");
  CHECK(slurp(dir + "/empty_density.csv") == "bin_lower_s,density\n");

  // Conflicting day-of-week switches are refused.
  CHECK(run_cli("--out " + dir + " analyze --connections " + dir +
                "/connections.csv --dest 0,3 --weekdays --weekends")
            .code != 0);
}

TEST_CASE("config files feed nested subcommand settings") {
  const std::string dir = g_work + "/config";
  spit(g_work + "/run.json",
       R"({"seed": 3, "solve": {"ants": 5, "iterations": 10, "fixture": "kyoto"}})");
  const CmdResult r =
      run_cli("--out " + dir + " --config " + g_work + "/run.json solve");
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(dir + "/solve.json"));
  CHECK(j.at("evaluations") == 50);
  CHECK(j.at("seed") == 3);
}

TEST_CASE("failures are machine-readable") {
  SUBCASE("missing input file") {
    const CmdResult r = run_cli("solve --weights /nonexistent/graph.json");
    CHECK(r.code == 1);
    const json err = json::parse(r.err);
    CHECK(err.at("error").at("type") == "io");
  }
  SUBCASE("domain validation failure") {
    const CmdResult r = run_cli("oracle --fixture kyoto --perturb-node v9 --factor 2");
    CHECK(r.code == 1);
    const json err = json::parse(r.err);
    CHECK(err.at("error").at("type") == "validation");
    CHECK(err.at("error").at("message").get<std::string>().find("v9") != std::string::npos);
  }
  SUBCASE("malformed input file") {
    spit(g_work + "/broken.json", "{not json");
    const CmdResult r = run_cli("solve --weights " + g_work + "/broken.json");
    CHECK(r.code == 1);
    const json err = json::parse(r.err);
    CHECK(err.at("error").at("type") == "parse");
  }
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_test <path-to-binary> [doctest args]\n");
    return 2;
  }
  g_cli = argv[1];
  g_work = (fs::temp_directory_path() /
            ("tempotsp_cli_" + std::to_string(::getpid())))
               .string();
  fs::create_directories(g_work);

  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  const int rc = ctx.run();
  fs::remove_all(g_work);
  return rc;
}
