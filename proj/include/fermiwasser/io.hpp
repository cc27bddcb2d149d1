#pragma once

#include "fermiwasser/car_lattice.hpp"
#include "fermiwasser/suites.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace fw {

using Json = nlohmann::json;

// Complex entries are [re, im]; matrices are row-major arrays of rows. A bare
// number is read as a real entry. Doubles go through nlohmann's shortest
// round-trip formatting, so save/load is bit-exact.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

// {"n_in", "n_out", "convention", "choi"}; antimultiplicative maps have no
// Choi form worth storing and are rejected.
Json channel_to_json(const Channel& e);
Channel channel_from_json(const Json& j);

// {"name"?, "n", "grading", "state", "dynamics": [{"name", "choi"}],
//  "coordinates": [...], "copying_unitary"?}. θ is not stored: a system
// with a copying unitary is rebuilt with make_reversible_system, which
// derives θ again. Loading validates like make_system and throws fw::Error.
Json system_to_json(const GradedSystem& sys);
GradedSystem system_from_json(const Json& j);

struct NamedSystem {
  std::string name;
  GradedSystem sys;
};

// A file holds one system object or {"systems": [...]}. Systems without a
// name get "<file stem>#<index>".
std::vector<NamedSystem> load_systems(const std::string& path);
Json read_json_file(const std::string& path);

// {"k", "probabilities", "dynamics"?, "coordinates"?}. Dynamics and
// coordinates live on M_{2^k}.
struct LatticeInput {
  LatticeConfig config;
  std::vector<NamedMap> dynamics;
  std::vector<Mat> coords;
};
LatticeInput lattice_from_json(const Json& j);
Json lattice_to_json(const LatticeInput& in);

Json to_json(const SdpSolution& s);
Json to_json(const WassersteinResult& r, bool with_plan = true);
Json to_json(const FdbReport& r);
Json to_json(const DeviationReport& r);
Json to_json(const LatticeReport& r);
Json to_json(const SystemReport& r);
Json to_json(const Check& c);
Json to_json(const SuiteResult& r);

}  // namespace fw
