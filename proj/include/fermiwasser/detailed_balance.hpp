#pragma once

#include "fermiwasser/wasserstein.hpp"

#include <map>
#include <string>

namespace fw {

// ϰ(a) = K a K† for a unitary K on H. Throws "image not inside twisted
// commutant" when some K a K† leaves A^≀.
CopyingMap make_copying_map(const StandardFormAlgebra& alg, const Mat& rho, const Mat& K, double tol = 1e-9);

// K = klein · F · (w ⊗ w̄) with F the tensor flip, for an even unitary
// w = wᵀ commuting with ρ; then ϰ(a) reads w a w† in twisted coordinates.
// It is μ-copying when ρ and u are real (ρ^≀ = ρᵀ = ρ).
Mat flip_copying_unitary(const StandardFormAlgebra& alg, const Mat& w);

// Symmetric even unitary commuting with a real symmetric even ρ:
// V diag(e^{iφ}) Vᵀ with V a real orthogonal eigenbasis of ρ.
Mat symmetric_phase_unitary(const Mat& rho, const RVec& phases);

struct ReversingOperation {
  Channel theta;
  double involution = 0.0;
  double antimultiplicativity = 0.0;
  double star = 0.0;
  double invariance = 0.0;
  double evenness = 0.0;
  double unitality = 0.0;
  double max_residual() const;
};

// θ = j ∘ γ^{-1/2} ∘ ϰ. Throws unless cm is μ-copying.
ReversingOperation reversing_from_copying(const CopyingMap& cm, const StandardFormAlgebra& alg, const Mat& rho);

// Builds a reversible system: θ from the copying map is appended to the
// dynamics under the name "theta".
GradedSystem make_reversible_system(const StandardFormAlgebra& alg, const Mat& rho, std::vector<NamedMap> dynamics,
                                    std::vector<Mat> coords, const Mat& K);

// E^← = ϰ_A⁻¹ ∘ E^≀ ∘ ϰ_B : B → A for an even E: A → B.
Channel reverse_channel(const Channel& e, const CopyingMap& cm_a, const StandardFormAlgebra& alg_a,
                        const Mat& rho_mu, const CopyingMap& cm_b, const StandardFormAlgebra& alg_b,
                        const Mat& rho_nu);

// E^← computed as θ_A ∘ E^σ ∘ θ_B.
Channel reverse_channel_via_theta(const Channel& e, const Channel& theta_a, const StandardFormAlgebra& alg_a,
                                  const Mat& rho_mu, const Channel& theta_b, const StandardFormAlgebra& alg_b,
                                  const Mat& rho_nu);

inline constexpr double kTolFdb = 1e-7;

struct FdbReport {
  std::map<std::string, double> copy_residual;     // ‖α^ϰ − α^≀‖
  std::map<std::string, double> reverse_residual;  // ‖α^← − α‖
  double max_residual = 0.0;
  bool holds = false;
};

// Throws unless the system is reversible.
FdbReport check_fdb(const GradedSystem& sys, double tol = kTolFdb);

// A^← = (A, α^←, μ, k).
GradedSystem reverse_system(const GradedSystem& sys);

// A^ϰ = (A^≀, ϰαϰ⁻¹, μ∘ϰ⁻¹, ϰ(k)) on the canonical form of A^≀. Its copying
// map is K transported by the standard-form unitary V = F · klein†, under
// which an element a of A = A^≀≀ has twisted coordinates γ(a).
GradedSystem copy_system(const GradedSystem& sys);

// Unitary V: H → H′ carrying A^≀ (twisted coordinates c) to the left action
// c ⊗ 1 of its canonical form and Λ_μ to Λ_{ρᵀ}.
Mat twisted_standard_unitary(const StandardFormAlgebra& alg);

// Element of A represented by twisted coordinates c of the canonical form
// of A^≀ (the A^≀≀ = A identification): γ_A(c).
Mat from_double_twisted(const StandardFormAlgebra& alg, const Mat& c);

struct DeviationReport {
  WClass cls = WClass::Fsigma;
  double w_a_rev = 0.0;   // W(A, A^←)
  double w_rev_a = 0.0;   // W(A^←, A)
  double w_a_b = 0.0;     // W(A, B)
  double w_b_a = 0.0;     // W(B, A)
  bool forward_bound = false;   // W(A, A^←) ≤ 2 W(A, B) + slack
  bool backward_bound = true;   // W(A^←, A) ≤ 2 W(B, A) + slack (asserted for both classes)
  bool all_optimal = false;
  bool holds() const { return forward_bound && backward_bound && all_optimal; }
};

// Throws unless B satisfies FDB; cls must be Fσ or Fσσ.
DeviationReport fdb_deviation(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                              const WassersteinOptions& opts = {}, double slack = 1e-5);

}  // namespace fw
