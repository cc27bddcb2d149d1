#include "doctest.h"
#include "fermiwasser/generators.hpp"
#include "fermiwasser/io.hpp"
#include "helpers.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

using namespace fwtest;

namespace {

// Exact equality, bit for bit (−0 and +0 differ here).
bool same_bits(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x[2] = {a.data()[i].real(), a.data()[i].imag()};
    const double y[2] = {b.data()[i].real(), b.data()[i].imag()};
    if (std::memcmp(x, y, sizeof x) != 0) return false;
  }
  return true;
}

GradedSystem through_text(const GradedSystem& sys) {
  return system_from_json(Json::parse(system_to_json(sys).dump()));
}

void require_identical(const GradedSystem& a, const GradedSystem& b) {
  REQUIRE(a.n() == b.n());
  CHECK(same_bits(a.alg.u, b.alg.u));
  CHECK(same_bits(a.rho, b.rho));
  REQUIRE(a.coords.size() == b.coords.size());
  for (std::size_t i = 0; i < a.coords.size(); ++i) CHECK(same_bits(a.coords[i], b.coords[i]));
  REQUIRE(a.dynamics.size() == b.dynamics.size());
  for (std::size_t i = 0; i < a.dynamics.size(); ++i) {
    CHECK(a.dynamics[i].name == b.dynamics[i].name);
    CHECK(a.dynamics[i].map.antimultiplicative == b.dynamics[i].map.antimultiplicative);
    CHECK(same_bits(a.dynamics[i].map.S, b.dynamics[i].map.S));
  }
  REQUIRE(a.copying.has_value() == b.copying.has_value());
  if (a.copying) CHECK(same_bits(a.copying->K, b.copying->K));
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("matrix json round trip is bit-exact") {
  Rng rng(101);
  Mat m = random_matrix(3, 4, rng);
  m(0, 0) = cplx(1.0 / 3.0, -0.0);
  m(1, 2) = cplx(1e-300, 5e-324);
  m(2, 3) = cplx(-1.7976931348623157e308, 0.1);
  const Mat back = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
  CHECK(same_bits(m, back));
}

TEST_CASE("matrix json accepts bare numbers and rejects malformed input") {
  const Mat m = matrix_from_json(Json::parse("[[1, [0, 2]], [-3.5, 0]]"));
  CHECK(m(0, 0) == cplx(1, 0));
  CHECK(m(0, 1) == cplx(0, 2));
  CHECK(m(1, 0) == cplx(-3.5, 0));
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, [0, 2, 3]]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[\"x\"]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[]")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("3")), Error);
}

TEST_CASE("channel json keeps the superoperator and checks the convention") {
  Rng rng(102);
  const Channel e = random_even_channel(diagonal_grading(2, 1), diagonal_grading(3, 1), rng);
  const Json j = channel_to_json(e);
  CHECK(j.at("convention") == kChoiConvention);
  const Channel back = channel_from_json(Json::parse(j.dump()));
  CHECK(back.n_in == 2);
  CHECK(back.n_out == 3);
  CHECK(same_bits(e.S, back.S));

  Json wrong = j;
  wrong["convention"] = "column-major";
  CHECK_THROWS_AS(channel_from_json(wrong), Error);
  wrong = j;
  wrong["n_out"] = 2;
  CHECK_THROWS_AS(channel_from_json(wrong), Error);

  Channel anti = Channel::identity(2);
  anti.antimultiplicative = true;
  CHECK_THROWS_AS(channel_to_json(anti), Error);
}

TEST_CASE("graded system round trip is bit-exact") {
  Rng rng(103);
  const auto sys = random_system(3, 1, rng, 2, 2);
  require_identical(sys, through_text(sys));
}

TEST_CASE("reversible system round trip rebuilds theta bit-exactly") {
  Rng rng(104);
  const auto sys = random_fdb_system(3, 1, rng);
  REQUIRE(sys.reversible());
  const Json j = system_to_json(sys);
  // θ is derived, never stored
  for (const auto& d : j.at("dynamics")) CHECK(d.at("name") != kThetaName);
  const auto back = through_text(sys);
  CHECK(back.reversible());
  require_identical(sys, back);
}

TEST_CASE("system loading validates") {
  Rng rng(105);
  Json j = system_to_json(random_system(2, 1, rng));
  SUBCASE("non-invariant state") {
    j["state"] = Json::parse("[[0.9, 0], [0, 0.1]]");
    CHECK_THROWS_AS(system_from_json(j), Error);
  }
  SUBCASE("odd state") {
    j["state"] = Json::parse("[[0.5, 0.1], [0.1, 0.5]]");
    CHECK_THROWS_AS(system_from_json(j), Error);
  }
  SUBCASE("wrong size") {
    j["state"] = matrix_to_json(Mat::Identity(3, 3) / 3.0);
    CHECK_THROWS_AS(system_from_json(j), Error);
  }
  SUBCASE("missing coordinates") {
    j.erase("coordinates");
    CHECK_THROWS_AS(system_from_json(j), Error);
  }
}

TEST_CASE("load_systems reads single systems and lists") {
  Rng rng(106);
  const auto a = random_system(2, 1, rng);
  const auto b = random_system(2, 1, rng);
  const std::string list_path = temp_path("fw_io_list.json");
  const std::string single_path = temp_path("fw_io_single.json");
  {
    Json ja = system_to_json(a);
    ja["name"] = "first";
    std::ofstream(list_path) << Json{{"systems", {ja, system_to_json(b)}}}.dump();
    std::ofstream(single_path) << system_to_json(a).dump();
  }
  const auto list = load_systems(list_path);
  REQUIRE(list.size() == 2);
  CHECK(list[0].name == "first");
  CHECK(list[1].name == "fw_io_list#1");
  require_identical(list[1].sys, b);
  const auto single = load_systems(single_path);
  REQUIRE(single.size() == 1);
  CHECK(single[0].name == "fw_io_single#0");
  CHECK_THROWS_AS(load_systems(temp_path("fw_io_missing.json")), Error);
  std::remove(list_path.c_str());
  std::remove(single_path.c_str());
}

TEST_CASE("lattice json round trip and validation") {
  LatticeInput in;
  in.config = {1, {0.25, 0.75}};
  in.dynamics.push_back({"damp", amplitude_damping(0.25, 0.3)});
  in.coords.push_back(pauli_x());
  const LatticeInput back = lattice_from_json(Json::parse(lattice_to_json(in).dump()));
  CHECK(back.config.k == 1);
  CHECK(back.config.probabilities == in.config.probabilities);
  REQUIRE(back.dynamics.size() == 1);
  CHECK(same_bits(back.dynamics[0].map.S, in.dynamics[0].map.S));
  CHECK(same_bits(back.coords[0], pauli_x()));

  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"k": 1, "probabilities": [0.5, 0.6]})")), Error);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"k": 2, "probabilities": [0.5, 0.5]})")), Error);
  CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"probabilities": [0.5, 0.5]})")), Error);
}

TEST_CASE("reports serialize non-finite numbers as null") {
  LatticeReport r;
  r.theta = INFINITY;
  const Json j = to_json(r);
  CHECK(j.at("theta").is_null());
  CHECK(j.at("passes") == false);
  Check c{"x", std::nan(""), 1.0};
  CHECK(to_json(c).at("value").is_null());
}
