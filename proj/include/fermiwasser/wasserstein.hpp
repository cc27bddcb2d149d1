#pragma once

#include "fermiwasser/sdp.hpp"
#include "fermiwasser/transport.hpp"

#include <array>
#include <string>
#include <vector>

namespace fw {

enum class WClass { F, Fsigma, Fsigmasigma };
std::string to_string(WClass c);
// Accepts F, Fsigma, Fsigmasigma (case-sensitive).
WClass parse_class(const std::string& s);

struct CostReport {
  double value = 0.0;
  std::vector<double> terms;  // per coordinate
  double norm_form = 0.0;     // Σ ‖[k_i ⊙ 1] − [1 ⊙ l_i′]‖² in the GNS space
  double norm_form_gap = 0.0;
};

// I(ω) = Σ_i μ(k_i*k_i) + ν(l_i*l_i) − ν(E(k_i)*l_i) − ν(l_i*E(k_i)).
// The norm form is computed from the usual plan table when with_norm_form is
// set (it costs a Gram matrix of size n²m²).
CostReport cost(const GradedSystem& sys_a, const GradedSystem& sys_b, const TransportPlan& plan,
                bool with_norm_form = true);

struct WassersteinOptions {
  SdpOptions sdp{1e-9, 1e-12, 200, 1e-10, 1e-9, 1e-10};
  double chain_tol = 1e-6;
  bool check_chain = true;
};

struct WassersteinResult {
  WClass cls = WClass::F;
  double value = 0.0;    // √ of the optimal cost
  double squared = 0.0;  // optimal cost
  TransportPlan plan;
  SdpSolution solution;
  // W^F, W^F_σ, W^F_σσ up to the requested class (later entries NaN).
  std::array<double, 3> chain{};
  bool chain_ok = true;
  bool optimal() const { return solution.status == SdpStatus::optimal; }
};

// The transport SDP over Choi matrices of E: A → B. Constraints: unital,
// ν∘E = μ, E∘γ_A = γ_B∘E and E∘α_υ = β_υ∘E for every υ; the modular
// generator condition for Fσ and above; E∘α_υ^σ = β_υ^σ∘E for Fσσ.
// Objective: Re Tr(C X) equals the cost itself; the constant part
// Σ μ(k*k) + ν(l*l) rides on the identity since every feasible X has trace m.
struct TransportSdp {
  SdpProblem problem;
  Mat seed;  // Choi matrix of the product plan a ↦ μ(a)1
};

TransportSdp transport_sdp(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                           const SdpOptions& opts = {});

// Solves the requested class; with check_chain set, the lower classes are
// solved as well and W^F ≤ W^F_σ ≤ W^F_σσ is verified within chain_tol.
WassersteinResult wasserstein(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                              const WassersteinOptions& opts = {});

struct IsomorphismReport {
  Channel iota;
  double multiplicativity = 0.0;
  double star = 0.0;
  double evenness = 0.0;
  double intertwining = 0.0;
  double coordinates = 0.0;
  double max_residual() const;
};

// ι = E_ω for a zero-cost plan between hermitian systems with generating
// coordinates. Throws when the preconditions fail.
IsomorphismReport extract_isomorphism(const GradedSystem& sys_a, const GradedSystem& sys_b,
                                      const TransportPlan& plan, double max_cost = 1e-12);

struct FaithfulnessReport {
  WassersteinResult forward;
  std::optional<WassersteinResult> backward;  // W^F needs both directions
  IsomorphismReport iso;
  std::optional<IsomorphismReport> iso_back;
  double round_trip = 0.0;  // ‖ι_back ∘ ι − id‖ when both directions are solved
};

FaithfulnessReport faithfulness(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                                const WassersteinOptions& opts = {});

}  // namespace fw
