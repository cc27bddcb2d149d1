#pragma once

#include "fermiwasser/wasserstein.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fw {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitConfig = 2, kExitSolver = 3 };

// distance  systems...   W for every unordered pair of the loaded systems
// verify                 property suites 1-10 (or `suites`), seeded
// fdb       [A] B        check_fdb on B; with A also fdb_deviation(A, B)
// lattice   [config]     FockFrame checks; without a file, lattice_k is used
// report    systems...   validation summary of each system, no solves
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  WClass cls = WClass::Fsigmasigma;
  std::optional<double> tol_gap;
  std::optional<double> tol_feas;
  std::uint64_t seed = 1;
  std::vector<int> suites;
  std::optional<int> lattice_k;
  std::string out;  // empty: the out stream
  std::string format = "json";
};

// Worker threads for distance jobs: FERMIWASSER_THREADS if set (≥ 1), else
// the hardware concurrency. Throws fw::Error on a malformed value.
int job_threads();

// Writes the report to cfg.out or `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fw
