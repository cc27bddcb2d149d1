#include "fermiwasser/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace fw {

namespace {

// NaN and ±inf have no JSON spelling; they become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw Error(std::string("json: bad value for ") + what);
  }
}

cplx entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw Error("json: matrix entry must be a number or [re, im]");
}

Json maps_to_json(const std::vector<NamedMap>& maps) {
  Json out = Json::array();
  for (const auto& nm : maps) {
    if (nm.map.antimultiplicative) continue;
    Json d = channel_to_json(nm.map);
    d["name"] = nm.name;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<NamedMap> maps_from_json(const Json& j, int n) {
  if (!j.is_array()) throw Error("json: dynamics must be an array");
  std::vector<NamedMap> out;
  for (const Json& d : j) {
    NamedMap nm{get_as<std::string>(field(d, "name"), "dynamics name"), channel_from_json(d)};
    if (nm.map.n_in != n || nm.map.n_out != n) throw Error("json: dynamics \"" + nm.name + "\" has the wrong size");
    out.push_back(std::move(nm));
  }
  return out;
}

std::vector<Mat> coords_from_json(const Json& j, int n) {
  if (!j.is_array()) throw Error("json: coordinates must be an array");
  std::vector<Mat> out;
  for (const Json& c : j) {
    out.push_back(matrix_from_json(c));
    if (out.back().rows() != n || out.back().cols() != n) throw Error("json: coordinate has the wrong size");
  }
  return out;
}

Json coords_to_json(const std::vector<Mat>& coords) {
  Json out = Json::array();
  for (const Mat& c : coords) out.push_back(matrix_to_json(c));
  return out;
}

Json residual_map(const std::map<std::string, double>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = number(v);
  return out;
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error("json: matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw Error("json: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json channel_to_json(const Channel& e) {
  if (e.antimultiplicative) throw Error("json: antimultiplicative maps are not serialized");
  return {{"n_in", e.n_in}, {"n_out", e.n_out}, {"convention", kChoiConvention}, {"choi", matrix_to_json(choi(e))}};
}

Channel channel_from_json(const Json& j) {
  const Mat c = matrix_from_json(field(j, "choi"));
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.rows()))));
  const int n_in = j.contains("n_in") ? get_as<int>(j.at("n_in"), "n_in") : n;
  const int n_out = j.contains("n_out") ? get_as<int>(j.at("n_out"), "n_out") : n;
  if (j.contains("convention") && get_as<std::string>(j.at("convention"), "convention") != kChoiConvention)
    throw Error("json: unknown Choi convention");
  if (n_in < 1 || n_out < 1 || c.rows() != n_in * n_out || c.cols() != c.rows())
    throw Error("json: Choi matrix does not match n_in, n_out");
  return Channel::from_choi(c, n_in, n_out);
}

Json system_to_json(const GradedSystem& sys) {
  Json j{{"n", sys.n()},
         {"grading", matrix_to_json(sys.alg.u)},
         {"state", matrix_to_json(sys.rho)},
         {"dynamics", maps_to_json(sys.dynamics)},
         {"coordinates", coords_to_json(sys.coords)}};
  if (sys.copying) j["copying_unitary"] = matrix_to_json(sys.copying->K);
  return j;
}

GradedSystem system_from_json(const Json& j) {
  const int n = get_as<int>(field(j, "n"), "n");
  if (n < 1) throw Error("json: n must be positive");
  const Mat u = j.contains("grading") ? matrix_from_json(j.at("grading")) : Mat(Mat::Identity(n, n));
  const Mat rho = matrix_from_json(field(j, "state"));
  if (u.rows() != n || u.cols() != n || rho.rows() != n || rho.cols() != n)
    throw Error("json: grading and state must be n × n");
  auto dynamics = j.contains("dynamics") ? maps_from_json(j.at("dynamics"), n) : std::vector<NamedMap>{};
  auto coords = coords_from_json(field(j, "coordinates"), n);
  const auto alg = canonical_standard_form(n, u);
  if (j.contains("copying_unitary")) {
    const Mat K = matrix_from_json(j.at("copying_unitary"));
    if (K.rows() != n * n || K.cols() != n * n) throw Error("json: copying_unitary must be n² × n²");
    return make_reversible_system(alg, rho, std::move(dynamics), std::move(coords), K);
  }
  return make_system(alg, rho, std::move(dynamics), std::move(coords));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<NamedSystem> load_systems(const std::string& path) {
  const Json j = read_json_file(path);
  const std::string stem = std::filesystem::path(path).stem().string();
  std::vector<NamedSystem> out;
  auto add = [&](const Json& s) {
    std::string name = s.contains("name") ? get_as<std::string>(s.at("name"), "name")
                                          : stem + "#" + std::to_string(out.size());
    try {
      out.push_back({name, system_from_json(s)});
    } catch (const Error& e) {
      throw Error(path + " (" + name + "): " + e.what());
    }
  };
  if (j.is_object() && j.contains("systems")) {
    if (!j.at("systems").is_array()) throw Error(path + ": \"systems\" must be an array");
    for (const Json& s : j.at("systems")) add(s);
  } else {
    add(j);
  }
  return out;
}

LatticeInput lattice_from_json(const Json& j) {
  LatticeInput in;
  in.config.k = get_as<int>(field(j, "k"), "k");
  in.config.probabilities = get_as<std::vector<double>>(field(j, "probabilities"), "probabilities");
  check_lattice_config(in.config);
  const int n = 1 << in.config.k;
  if (j.contains("dynamics")) in.dynamics = maps_from_json(j.at("dynamics"), n);
  if (j.contains("coordinates")) in.coords = coords_from_json(j.at("coordinates"), n);
  return in;
}

Json lattice_to_json(const LatticeInput& in) {
  Json j{{"k", in.config.k}, {"probabilities", in.config.probabilities}};
  if (!in.dynamics.empty()) j["dynamics"] = maps_to_json(in.dynamics);
  if (!in.coords.empty()) j["coordinates"] = coords_to_json(in.coords);
  return j;
}

Json to_json(const SdpSolution& s) {
  return {{"status", to_string(s.status)},
          {"value", number(s.value)},
          {"dual_value", number(s.dual_value)},
          {"dual_gap", number(s.dual_gap)},
          {"primal_residual", number(s.primal_residual)},
          {"dual_residual", number(s.dual_residual)},
          {"min_eigenvalue", number(s.min_eigenvalue)},
          {"iterations", s.iterations},
          {"reduced_constraints", s.reduced_constraints}};
}

Json to_json(const WassersteinResult& r, bool with_plan) {
  Json chain = Json::array();
  for (double c : r.chain) chain.push_back(number(c));
  Json j{{"class", to_string(r.cls)},
         {"value", number(r.value)},
         {"squared", number(r.squared)},
         {"status", to_string(r.solution.status)},
         {"chain", chain},
         {"chain_ok", r.chain_ok},
         {"solver", to_json(r.solution)}};
  if (with_plan) j["plan"] = channel_to_json(r.plan.e);
  return j;
}

Json to_json(const FdbReport& r) {
  return {{"holds", r.holds},
          {"max_residual", number(r.max_residual)},
          {"copy_residual", residual_map(r.copy_residual)},
          {"reverse_residual", residual_map(r.reverse_residual)}};
}

Json to_json(const DeviationReport& r) {
  return {{"class", to_string(r.cls)},          {"w_a_rev", number(r.w_a_rev)},
          {"w_rev_a", number(r.w_rev_a)},       {"w_a_b", number(r.w_a_b)},
          {"w_b_a", number(r.w_b_a)},           {"forward_bound", r.forward_bound},
          {"backward_bound", r.backward_bound}, {"all_optimal", r.all_optimal},
          {"holds", r.holds()}};
}

Json to_json(const LatticeReport& r) {
  return {{"k", r.k},
          {"passes", r.passes()},
          {"car", number(r.car)},
          {"parity", number(r.parity)},
          {"state", number(r.state)},
          {"cyclic_rank", r.cyclic_rank},
          {"separating_rank", r.separating_rank},
          {"twisted_angle", number(r.twisted_angle)},
          {"trivial_angle", number(r.trivial_angle)},
          {"k_unitary", number(r.k_unitary)},
          {"k_lambda", number(r.k_lambda)},
          {"k_squared", number(r.k_squared)},
          {"kg", number(r.kg)},
          {"kj", number(r.kj)},
          {"kj_twisted", number(r.kj_twisted)},
          {"kappa", number(r.kappa)},
          {"copy_state", number(r.copy_state)},
          {"theta", number(r.theta)}};
}

Json to_json(const SystemReport& r) {
  return {{"ok", r.ok},
          {"state_evenness", number(r.state_evenness)},
          {"invariance", number(r.invariance)},
          {"dynamics_evenness", number(r.dynamics_evenness)},
          {"unitality", number(r.unitality)},
          {"theta_present", r.theta_present}};
}

Json to_json(const Check& c) {
  return {{"name", c.name},          {"value", number(c.value)}, {"relation", to_string(c.kind)},
          {"bound", number(c.bound)}, {"samples", c.samples},     {"passed", c.passed()}};
}

Json to_json(const SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json j{{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"checks", checks}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace fw
