#include "fermiwasser/cli.hpp"

#include "fermiwasser/detailed_balance.hpp"
#include "fermiwasser/io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace fw {

namespace {

struct ConfigError : Error {
  using Error::Error;
};

// Shortest form that reads back to the same double.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Output {
  Json json;
  std::vector<std::string> csv_rows;  // header first
  int code = kExitOk;
  void fail(int c) { code = std::max(code, c); }
};

void add_row(Output& o, std::initializer_list<std::string> fields) {
  std::string row;
  for (const auto& f : fields) row += (row.empty() ? "" : ",") + csv_field(f);
  o.csv_rows.push_back(std::move(row));
}

std::vector<NamedSystem> load_all(const RunConfig& cfg) {
  std::vector<NamedSystem> out;
  for (const auto& path : cfg.inputs) {
    try {
      for (auto& s : load_systems(path)) out.push_back(std::move(s));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

WassersteinOptions solver_options(const RunConfig& cfg) {
  WassersteinOptions o;
  if (cfg.tol_gap) o.sdp.tol_gap = *cfg.tol_gap;
  if (cfg.tol_feas) o.sdp.tol_feas = *cfg.tol_feas;
  return o;
}

Output distance_command(const RunConfig& cfg) {
  const auto systems = load_all(cfg);
  if (systems.size() < 2) throw ConfigError("distance: need at least two systems");
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < systems.size(); ++i)
    for (std::size_t k = i + 1; k < systems.size(); ++k) {
      try {
        require_matching(systems[i].sys, systems[k].sys);
      } catch (const Error& e) {
        throw ConfigError(systems[i].name + " vs " + systems[k].name + ": " + e.what());
      }
      jobs.emplace_back(i, k);
    }

  const auto opts = solver_options(cfg);
  std::vector<std::optional<WassersteinResult>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next++) < jobs.size();) {
      try {
        results[j] = wasserstein(systems[jobs[j].first].sys, systems[jobs[j].second].sys, cfg.cls, opts);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };
  const int nthreads = std::min<int>(job_threads(), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Output o;
  o.json = {{"command", "distance"}, {"class", to_string(cfg.cls)}, {"results", Json::array()}};
  add_row(o, {"system_a", "system_b", "class", "value", "squared", "status", "chain_ok", "dual_gap", "iterations"});
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& a = systems[jobs[j].first].name;
    const auto& b = systems[jobs[j].second].name;
    if (!results[j]) {
      o.json["results"].push_back({{"system_a", a}, {"system_b", b}, {"error", errors[j]}});
      add_row(o, {a, b, to_string(cfg.cls), "nan", "nan", "error", "", "", ""});
      o.fail(kExitSolver);
      continue;
    }
    const auto& r = *results[j];
    Json jr = to_json(r);
    jr["system_a"] = a;
    jr["system_b"] = b;
    // Without an optimal solve the objective at the last iterate is no distance.
    const double value = r.optimal() ? r.value : std::nan("");
    const double squared = r.optimal() ? r.squared : std::nan("");
    if (!r.optimal()) jr["value"] = jr["squared"] = nullptr;
    o.json["results"].push_back(std::move(jr));
    add_row(o, {a, b, to_string(r.cls), num(value), num(squared), to_string(r.solution.status),
                r.chain_ok ? "true" : "false", num(r.solution.dual_gap), std::to_string(r.solution.iterations)});
    if (!r.optimal()) o.fail(kExitSolver);
    else if (!r.chain_ok) o.fail(kExitAssertion);
  }
  return o;
}

Output verify_command(const RunConfig& cfg) {
  std::vector<int> ids = cfg.suites;
  if (ids.empty())
    for (int i = 1; i <= kSuiteCount; ++i) ids.push_back(i);
  for (int id : ids)
    if (id < 1 || id > kSuiteCount) throw ConfigError("verify: suite ids run from 1 to " + std::to_string(kSuiteCount));

  Output o;
  o.json = {{"command", "verify"}, {"seed", cfg.seed}, {"suites", Json::array()}};
  add_row(o, {"suite_id", "suite", "check", "value", "relation", "bound", "samples", "passed"});
  for (int id : ids) {
    const auto r = run_suite(id, {cfg.seed});
    o.json["suites"].push_back(to_json(r));
    for (const auto& c : r.checks)
      add_row(o, {std::to_string(r.id), r.name, c.name, num(c.value), to_string(c.kind), num(c.bound),
                  std::to_string(c.samples), c.passed() ? "true" : "false"});
    if (!r.error.empty()) add_row(o, {std::to_string(r.id), r.name, "error: " + r.error, "", "", "", "", "false"});
    if (!r.passed()) o.fail(kExitAssertion);
  }
  o.json["passed"] = o.code == kExitOk;
  return o;
}

Output fdb_command(const RunConfig& cfg) {
  const auto systems = load_all(cfg);
  if (systems.empty() || systems.size() > 2) throw ConfigError("fdb: expects B or A B");
  const NamedSystem& b = systems.back();
  if (!b.sys.reversible()) throw ConfigError("fdb: " + b.name + " has no μ-copying unitary");
  if (systems.size() == 2) {
    if (cfg.cls == WClass::F) throw ConfigError("fdb: deviation bounds need --class Fsigma or Fsigmasigma");
    try {
      require_matching(systems[0].sys, b.sys);
    } catch (const Error& e) {
      throw ConfigError(std::string("fdb: ") + e.what());
    }
  }

  Output o;
  add_row(o, {"check", "system_a", "system_b", "value", "holds"});
  const FdbReport fr = check_fdb(b.sys);
  o.json = {{"command", "fdb"}, {"system", b.name}, {"fdb", to_json(fr)}};
  add_row(o, {"fdb_residual", b.name, "", num(fr.max_residual), fr.holds ? "true" : "false"});
  if (!fr.holds) {
    o.fail(kExitAssertion);
    return o;
  }
  if (systems.size() == 2) {
    const NamedSystem& a = systems.front();
    const auto dev = fdb_deviation(a.sys, b.sys, cfg.cls, solver_options(cfg));
    Json jd = to_json(dev);
    jd["system_a"] = a.name;
    o.json["deviation"] = std::move(jd);
    const std::string f = dev.forward_bound ? "true" : "false";
    const std::string bk = dev.backward_bound ? "true" : "false";
    add_row(o, {"w_a_rev", a.name, b.name, num(dev.w_a_rev), f});
    add_row(o, {"w_a_b", a.name, b.name, num(dev.w_a_b), f});
    add_row(o, {"w_rev_a", a.name, b.name, num(dev.w_rev_a), bk});
    add_row(o, {"w_b_a", a.name, b.name, num(dev.w_b_a), bk});
    if (!dev.all_optimal) o.fail(kExitSolver);
    else if (!dev.holds()) o.fail(kExitAssertion);
  }
  return o;
}

// Distinct weights p_s ∝ s + 1 when no config file is given.
LatticeInput default_lattice(int k) {
  LatticeInput in;
  in.config.k = k;
  const int n = 1 << k;
  const double total = n * (n + 1) / 2.0;
  for (int s = 0; s < n; ++s) in.config.probabilities.push_back((s + 1) / total);
  return in;
}

Output lattice_command(const RunConfig& cfg) {
  LatticeInput in;
  try {
    if (cfg.inputs.size() == 1) in = lattice_from_json(read_json_file(cfg.inputs[0]));
    else if (cfg.inputs.empty() && cfg.lattice_k) in = default_lattice(*cfg.lattice_k);
    else throw Error("lattice: expects one config file or --k");
    check_lattice_config(in.config);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const FockFrame frame = build_frame(in.config);
  const LatticeReport rep = verify_lattice_standard_form(frame);

  Output o;
  o.json = {{"command", "lattice"}, {"config", lattice_to_json(in)}, {"report", to_json(rep)}};
  add_row(o, {"check", "value"});
  for (const auto& [key, val] : o.json["report"].items())
    add_row(o, {key, val.is_boolean() ? (val.get<bool>() ? "true" : "false") : val.is_null() ? "nan" : val.dump()});
  if (!rep.passes()) o.fail(kExitAssertion);

  if (!in.dynamics.empty()) {
    auto coords = in.coords;
    if (coords.empty())
      for (int l = 0; l < frame.k; ++l) coords.push_back(frame.m_coordinates(frame.a[l]));
    GradedSystem sys;
    try {
      sys = to_graded_system(frame, in.dynamics, coords);
    } catch (const Error& e) {
      throw ConfigError(std::string("lattice dynamics: ") + e.what());
    }
    const FdbReport fr = check_fdb(sys);
    o.json["fdb"] = to_json(fr);
    add_row(o, {"fdb_residual", num(fr.max_residual)});
    if (!fr.holds) o.fail(kExitAssertion);
  }
  return o;
}

Output report_command(const RunConfig& cfg) {
  const auto systems = load_all(cfg);
  if (systems.empty()) throw ConfigError("report: no systems given");
  Output o;
  o.json = {{"command", "report"}, {"systems", Json::array()}};
  add_row(o, {"system", "n", "dynamics", "valid", "hermitian", "generating", "reversible", "fdb_residual"});
  for (const auto& ns : systems) {
    const auto& s = ns.sys;
    const SystemReport vr = validate_system(s);
    Json names = Json::array();
    std::string joined;
    for (const auto& d : s.dynamics) {
      names.push_back(d.name);
      joined += (joined.empty() ? "" : ";") + d.name;
    }
    Json js{{"name", ns.name},
            {"n", s.n()},
            {"dynamics", names},
            {"validation", to_json(vr)},
            {"hermitian", is_hermitian(s)},
            {"generating", coordinates_generate(s)},
            {"reversible", s.reversible()}};
    std::string fdb_col;
    if (s.reversible()) {
      const FdbReport fr = check_fdb(s);
      js["fdb"] = to_json(fr);
      fdb_col = num(fr.max_residual);
    }
    add_row(o, {ns.name, std::to_string(s.n()), joined, vr.ok ? "true" : "false", is_hermitian(s) ? "true" : "false",
                coordinates_generate(s) ? "true" : "false", s.reversible() ? "true" : "false", fdb_col});
    o.json["systems"].push_back(std::move(js));
    if (!vr.ok) o.fail(kExitAssertion);
  }
  return o;
}

Output dispatch(const RunConfig& cfg) {
  if (cfg.command == "distance") return distance_command(cfg);
  if (cfg.command == "verify") return verify_command(cfg);
  if (cfg.command == "fdb") return fdb_command(cfg);
  if (cfg.command == "lattice") return lattice_command(cfg);
  if (cfg.command == "report") return report_command(cfg);
  throw ConfigError("unknown command \"" + cfg.command + "\"");
}

}  // namespace

int job_threads() {
  if (const char* env = std::getenv("FERMIWASSER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw Error("FERMIWASSER_THREADS must be a positive integer");
    return static_cast<int>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.format != "json" && cfg.format != "csv") {
    err << "error: --format must be json or csv\n";
    return kExitConfig;
  }
  Output o;
  try {
    try {
      job_threads();
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    o = dispatch(cfg);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  }

  std::ostringstream text;
  if (cfg.format == "json") {
    text << o.json.dump(2) << "\n";
  } else {
    for (const auto& row : o.csv_rows) text << row << "\n";
  }
  if (cfg.out.empty()) {
    out << text.str();
  } else {
    std::ofstream f(cfg.out);
    if (!f || !(f << text.str())) {
      err << "error: cannot write " << cfg.out << "\n";
      return kExitConfig;
    }
  }
  return o.code;
}

}  // namespace fw
