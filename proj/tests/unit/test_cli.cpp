#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "nls/cli.hpp"

using nls::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nls");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nls_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) { return int(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("oracle-check passes at N = 8") {
  const auto r = cli({"oracle-check", "--n-modes", "8", "--trials", "20", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS", 0) == 0);
}

TEST_CASE("oracle-check JSON summary") {
  const auto r = cli({"oracle-check", "--n-modes", "1", "--trials", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["n_modes"] == 1);
}

TEST_CASE("oracle-check above the oracle limit is a configuration error") {
  CHECK(cli({"oracle-check", "--n-modes", "64"}).code == 2);
}

TEST_CASE("converge-time writes a CSV with one row per tau and seed") {
  const auto path = temp_path("r.csv");
  const auto r = cli({"converge-time", "--gamma", "1.0", "--n-modes", "32", "--t-final", "0.5", "--seed", "1",
                      "--tau-list", "0.125,0.0625,0.03125", "--output", path.string()});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("experiment_id,kind,gamma,tau,n_modes,t_final,seed,error_l2,runtime_ms,saturated\n", 0) == 0);
  CHECK(count_lines(csv) == 4);
  std::filesystem::remove(path);
}

TEST_CASE("converge-time default tau list with several seeds") {
  const auto r = cli({"converge-time", "--gamma", "0.8", "--n-modes", "8", "--seeds", "1,2", "--t-final", "0.25"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 1 + 6 * 2);
}

TEST_CASE("missing --gamma on converge-time is a usage error") {
  const auto r = cli({"converge-time", "--n-modes", "1024", "--t-final", "1", "--seed", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--gamma") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("plane-wave reference needs no gamma") {
  const auto r = cli({"converge-time", "--reference", "plane-wave", "--tau-list", "0.0625,0.03125", "--format",
                      "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["rows"].size() == 2);
  CHECK(j["config"]["n_modes"] == 64);
}

TEST_CASE("converge-space JSON") {
  const auto r = cli({"converge-space", "--gamma", "0.8", "--n-list", "4,8", "--tau", "0.0625", "--t-final", "0.25",
                      "--seeds", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["rows"].size() == 2);
  CHECK(j["report"]["slopes"].size() == 1);
  CHECK(j["config"]["n_ref"] == 32);
}

TEST_CASE("unknown flags and subcommands are usage errors") {
  CHECK(cli({"converge-time", "--gamma", "1", "--bogus"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"run", "--format", "xml"}).code == 2);
  CHECK(cli({"run", "--reference", "exact"}).code == 2);
}

TEST_CASE("inconsistent parameters are configuration errors") {
  CHECK(cli({"run", "--tau", "0.3", "--t-final", "1", "--n-modes", "4"}).code == 2);
  CHECK(cli({"converge-time", "--gamma", "1", "--tau-list", "0.1,0.2,0.05"}).code == 2);
  CHECK(cli({"converge-space", "--gamma", "1", "--n-list", "4,8", "--n-ref", "16"}).code == 2);
}

TEST_CASE("help exits 0") {
  const auto r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("converge-space") != std::string::npos);
  CHECK(cli({"run", "--help"}).code == 0);
}

TEST_CASE("run reports the final state and masses") {
  const auto r = cli({"run", "--gamma", "1", "--n-modes", "8", "--tau", "0.125", "--t-final", "0.5", "--seed", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["final_state"].size() == 17);
  CHECK(j["mass_initial"].get<double>() > 0.0);
  const auto lie = cli({"run", "--gamma", "1", "--n-modes", "8", "--tau", "0.125", "--t-final", "0.5", "--seed", "4",
                        "--baseline", "lie", "--format", "csv"});
  REQUIRE(lie.code == 0);
  CHECK(count_lines(lie.out) == 18);
}

TEST_CASE("run against the plane wave reports its error") {
  const auto r = cli({"run", "--reference", "plane-wave", "--n-modes", "4", "--tau", "0.0625"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["error_l2"].get<double>() > 0.0);
  CHECK(j["error_l2"].get<double>() < 0.1);
}

TEST_CASE("dump-initial") {
  const auto r = cli({"dump-initial", "--gamma", "0.8", "--seed", "3", "--k-max", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["gamma"] == 0.8);
  CHECK(j["seed"] == 3);
  CHECK(j["modes"].size() == 11);
  const auto projected = nlohmann::json::parse(cli({"dump-initial", "--gamma", "0.8", "--n-modes", "2"}).out);
  CHECK(projected["modes"].size() == 5);
  CHECK(projected["k_max"] == 4);
}

TEST_CASE("config file supplies defaults and flags override it") {
  const auto path = temp_path("config.ini");
  {
    std::ofstream f(path);
    f << "# sweep settings\n"
         "gamma = 0.8\n"
         "n_modes = 8\n"
         "seeds = 1,2\n"
         "tau-list = 0.125,0.0625\n"
         "t-final = 0.5\n";
  }
  const auto from_file = cli({"converge-time", "--config", path.string()});
  REQUIRE(from_file.code == 0);
  CHECK(count_lines(from_file.out) == 1 + 2 * 2);
  CHECK(from_file.out.find(",0.8,") != std::string::npos);

  const auto overridden = cli({"converge-time", "--config", path.string(), "--seed", "7", "--gamma", "0.6"});
  REQUIRE(overridden.code == 0);
  CHECK(count_lines(overridden.out) == 1 + 2);
  CHECK(overridden.out.find(",0.6,") != std::string::npos);
  CHECK(overridden.out.find(",7,") != std::string::npos);

  {
    std::ofstream f(path);
    f << "bogus = 1\n";
  }
  CHECK(cli({"converge-time", "--config", path.string()}).code == 2);
  CHECK(cli({"converge-time", "--config", (path.string() + ".missing")}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("unwritable output path is a configuration error") {
  CHECK(cli({"dump-initial", "--gamma", "1", "--output", "/nonexistent-dir/x.json"}).code == 2);
}
