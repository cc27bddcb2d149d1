#include "doctest.h"
#include "fermiwasser/cli.hpp"
#include "fermiwasser/generators.hpp"
#include "fermiwasser/io.hpp"
#include "helpers.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fwtest;

namespace {

const std::string kFixtures = FW_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig command(const std::string& name, std::vector<std::string> inputs = {}) {
  RunConfig c;
  c.command = name;
  c.inputs = std::move(inputs);
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
  return out;
}

std::string write_temp(const char* name, const Json& j) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream(path) << j.dump();
  return path;
}

struct ThreadsEnv {
  explicit ThreadsEnv(const char* v) { setenv("FERMIWASSER_THREADS", v, 1); }
  ~ThreadsEnv() { unsetenv("FERMIWASSER_THREADS"); }
};

}  // namespace

TEST_CASE("distance on the qubit pair fixture gives one optimal CSV row") {
  auto cfg = command("distance", {kFixtures + "/qubit_pair.json"});
  cfg.format = "csv";
  const auto r = invoke(cfg);
  REQUIRE(r.code == kExitOk);
  const auto lines = split(r.out, '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "system_a,system_b,class,value,squared,status,chain_ok,dual_gap,iterations");
  const auto row = split(lines[1], ',');
  REQUIRE(row.size() == 9);
  CHECK(row[0] == "A");
  CHECK(row[1] == "B");
  CHECK(row[2] == "Fsigmasigma");
  CHECK(row[5] == "optimal");
  // Same state and dynamics, coordinates (σx, σy) against (σx, σz). The σy–σz
  // cross term pairs an odd with an even operator and vanishes in any even
  // plan, the σx term is at most 1, and the identity plan attains both:
  // W² = 4 − 2·1 = 2.
  CHECK(std::stod(row[3]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));

  // the library path gives the same number
  const auto systems = load_systems(kFixtures + "/qubit_pair.json");
  const auto direct = wasserstein(systems[0].sys, systems[1].sys, WClass::Fsigmasigma);
  CHECK(std::stod(row[3]) == doctest::Approx(direct.value).epsilon(1e-14));
}

TEST_CASE("distance JSON carries the plan Choi matrix") {
  auto cfg = command("distance", {kFixtures + "/qubit_pair.json"});
  cfg.cls = WClass::F;
  const auto r = invoke(cfg);
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  const Json& res = j.at("results").at(0);
  CHECK(res.at("class") == "F");
  CHECK(res.at("status") == "optimal");
  const Channel plan = channel_from_json(res.at("plan"));
  CHECK(plan.n_in == 2);
  CHECK(unital_residual(plan) < 1e-8);
  CHECK(is_completely_positive(plan, 1e-8));
}

TEST_CASE("distance jobs give the same report for any thread count") {
  Rng rng(301);
  Json list{{"systems", Json::array()}};
  for (int i = 0; i < 3; ++i) list["systems"].push_back(system_to_json(random_system(2, 1, rng)));
  const auto path = write_temp("fw_cli_three.json", list);
  auto cfg = command("distance", {path});
  cfg.cls = WClass::Fsigma;
  std::string one, three;
  {
    ThreadsEnv env("1");
    const auto r = invoke(cfg);
    REQUIRE(r.code == kExitOk);
    one = r.out;
  }
  {
    ThreadsEnv env("3");
    const auto r = invoke(cfg);
    REQUIRE(r.code == kExitOk);
    three = r.out;
  }
  CHECK(one == three);
  CHECK(Json::parse(one).at("results").size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("verify with a fixed seed is reproducible") {
  auto cfg = command("verify");
  cfg.seed = 7;
  cfg.suites = {1, 3};
  const auto a = invoke(cfg);
  const auto b = invoke(cfg);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j.at("passed") == true);
  CHECK(j.at("suites").size() == 2);
  cfg.seed = 8;
  CHECK(invoke(cfg).out != a.out);
}

TEST_CASE("lattice k=2 report passes") {
  auto cfg = command("lattice");
  cfg.lattice_k = 2;
  const auto r = invoke(cfg);
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("report").at("passes") == true);
  CHECK(j.at("report").at("k") == 2);
  CHECK(j.at("report").at("cyclic_rank") == 16);
}

TEST_CASE("lattice config with dynamics runs the FDB check") {
  LatticeInput in;
  in.config = {1, {0.3, 0.7}};
  in.dynamics.push_back({"damp", amplitude_damping(0.3, 0.4)});
  const auto path = write_temp("fw_cli_lattice.json", lattice_to_json(in));
  const auto r = invoke(command("lattice", {path}));
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j.at("fdb").at("holds") == true);
  std::filesystem::remove(path);
}

TEST_CASE("fdb command on the reversible fixture") {
  auto cfg = command("fdb", {kFixtures + "/reversible_pair.json"});
  cfg.format = "csv";
  const auto r = invoke(cfg);
  CHECK(r.code == kExitOk);
  const auto lines = split(r.out, '\n');
  REQUIRE(lines.size() == 6);
  CHECK(lines[1].rfind("fdb_residual,B_fdb,", 0) == 0);

  // A on its own is reversible but not in detailed balance
  const auto systems = load_systems(kFixtures + "/reversible_pair.json");
  const auto path = write_temp("fw_cli_rev_a.json", system_to_json(systems[0].sys));
  CHECK(invoke(command("fdb", {path})).code == kExitAssertion);
  std::filesystem::remove(path);
}

TEST_CASE("report summarizes systems without solving") {
  auto cfg = command("report", {kFixtures + "/qubit_pair.json", kFixtures + "/reversible_pair.json"});
  const auto r = invoke(cfg);
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  REQUIRE(j.at("systems").size() == 4);
  CHECK(j.at("systems").at(0).at("reversible") == false);
  CHECK(j.at("systems").at(3).at("fdb").at("holds") == true);
}

TEST_CASE("exit codes") {
  SUBCASE("unknown command") { CHECK(invoke(command("plot")).code == kExitConfig); }
  SUBCASE("bad format") {
    auto cfg = command("lattice");
    cfg.lattice_k = 1;
    cfg.format = "xml";
    CHECK(invoke(cfg).code == kExitConfig);
  }
  SUBCASE("missing file") { CHECK(invoke(command("distance", {"/nonexistent/x.json"})).code == kExitConfig); }
  SUBCASE("single system") {
    Rng rng(302);
    const auto path = write_temp("fw_cli_one.json", system_to_json(random_system(2, 1, rng)));
    CHECK(invoke(command("distance", {path})).code == kExitConfig);
    std::filesystem::remove(path);
  }
  SUBCASE("mismatched dynamics names") {
    const auto r = invoke(command("distance", {kFixtures + "/qubit_pair.json", kFixtures + "/reversible_pair.json"}));
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("config error") != std::string::npos);
  }
  SUBCASE("deviation needs a modular class") {
    auto cfg = command("fdb", {kFixtures + "/reversible_pair.json"});
    cfg.cls = WClass::F;
    CHECK(invoke(cfg).code == kExitConfig);
  }
  SUBCASE("bad thread count") {
    ThreadsEnv env("zero");
    CHECK(invoke(command("distance", {kFixtures + "/qubit_pair.json"})).code == kExitConfig);
  }
  SUBCASE("unreachable feasibility tolerance is a solver failure") {
    auto cfg = command("distance", {kFixtures + "/qubit_pair.json"});
    cfg.tol_feas = 1e-40;
    cfg.format = "csv";
    const auto r = invoke(cfg);
    CHECK(r.code == kExitSolver);
    const auto row = split(split(r.out, '\n').at(1), ',');
    CHECK(row.at(3) == "nan");
    CHECK(row.at(5) != "optimal");
  }
}

TEST_CASE("--out writes the report to a file") {
  const auto path = (std::filesystem::temp_directory_path() / "fw_cli_out.json").string();
  auto cfg = command("lattice");
  cfg.lattice_k = 1;
  cfg.out = path;
  const auto r = invoke(cfg);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(read_json_file(path).at("report").at("passes") == true);
  std::filesystem::remove(path);
}
