#pragma once

#include "fermiwasser/sdp.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fw {

// One named property with the worst value seen over all trials.
struct Check {
  enum class Kind { at_most, above, equals };
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Kind kind = Kind::at_most;
  int samples = 0;
  bool passed() const;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  std::string error;  // set when the suite threw
  bool passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
};

// Value of min Re Tr(CX) from an independent solver.
using SdpOracle = std::function<double(const SdpProblem&)>;

// The numbered property suites; each draws from Rng(seed + id).
SuiteResult modular_suite(const SuiteOptions& opt);        // 1
SuiteResult commutant_suite(const SuiteOptions& opt);      // 2
SuiteResult dual_suite(const SuiteOptions& opt);           // 3
SuiteResult bijection_suite(const SuiteOptions& opt);      // 4
SuiteResult metric_suite(const SuiteOptions& opt);         // 5
// Without an oracle only the gap and seed checks run.
SuiteResult sdp_suite(const SuiteOptions& opt, const SdpOracle& oracle = {});  // 6
SuiteResult symmetry_suite(const SuiteOptions& opt);       // 7
SuiteResult fdb_suite(const SuiteOptions& opt);            // 8
SuiteResult car_suite(const SuiteOptions& opt);            // 9
SuiteResult faithfulness_suite(const SuiteOptions& opt);   // 10

inline constexpr int kSuiteCount = 10;
// Runs suite `id` (1-based).
SuiteResult run_suite(int id, const SuiteOptions& opt, const SdpOracle& oracle = {});

std::string to_string(Check::Kind k);

}  // namespace fw
