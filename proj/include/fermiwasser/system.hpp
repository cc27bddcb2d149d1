#pragma once

#include "fermiwasser/channel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fw {

// Even *-isomorphism ϰ: A → A^≀ implemented by a unitary K on H,
// ϰ(a) = K a K†. kappa maps coordinates of A to twisted coordinates.
struct CopyingMap {
  Channel kappa;
  Mat K;
  bool is_mu_copying = false;
  double homomorphism_residual = 0.0;  // max ‖ϰ(ab) − ϰ(a)ϰ(b)‖, ‖ϰ(a*) − ϰ(a)*‖
  double evenness_residual = 0.0;
  double kg_residual = 0.0;         // ‖Kg − gK‖
  double k_squared_residual = 0.0;  // ‖K² − g‖
  double state_residual = 0.0;      // ‖ρ^ϰ − ρ^≀‖ in twisted coordinates
  double vector_residual = 0.0;     // ‖KΛ_μ − Λ_μ‖
};

struct NamedMap {
  std::string name;
  Channel map;
};

// Name under which a reversing operation sits among the dynamics.
inline constexpr const char* kThetaName = "theta";
inline constexpr const char* kGammaName = "gamma";

// A ℤ₂-graded system (A, α, μ, k) on M_n in canonical standard form.
struct GradedSystem {
  StandardFormAlgebra alg;
  std::vector<NamedMap> dynamics;
  Mat rho;
  std::vector<Mat> coords;
  std::optional<CopyingMap> copying;

  int n() const { return alg.n; }
  const Channel* find(const std::string& name) const;
  bool reversible() const { return copying && copying->is_mu_copying && find(kThetaName); }
};

struct SystemReport {
  double state_evenness = 0.0;
  double invariance = 0.0;  // max over υ of ‖ρ ∘ α_υ − ρ‖ on matrix units
  double dynamics_evenness = 0.0;
  double unitality = 0.0;
  bool theta_present = true;
  bool ok = false;
};

SystemReport validate_system(const GradedSystem& sys, double tol = 1e-9);

// Validates and returns the system; throws with the failing condition.
GradedSystem make_system(const StandardFormAlgebra& alg, const Mat& rho, std::vector<NamedMap> dynamics,
                         std::vector<Mat> coords, std::optional<CopyingMap> copying = std::nullopt);

bool is_hermitian(const GradedSystem& sys, double tol = 1e-10);

// Coordinates generate M_n when iterated products of {k_i, k_i*} span it.
bool coordinates_generate(const GradedSystem& sys, double rank_rel = 1e-9);

// A^γ: γ appended to the dynamics (no-op if already present).
GradedSystem with_grading_as_dynamics(const GradedSystem& sys);

// A^σ: every α_υ replaced by its KMS dual.
GradedSystem kms_dual_system(const GradedSystem& sys);

// A^≀ on its own canonical form: grading ū, state ρᵀ, dynamics α^≀ and
// coordinates k^≀ = γ^{1/2}(j(k*)), all in twisted coordinates.
GradedSystem twisted_dual_system(const GradedSystem& sys);

// k ↦ j(k*) read in twisted coordinates through γ^{1/2}.
Mat twisted_coordinate(const StandardFormAlgebra& alg, const Mat& k);

// A_θ = (A, α, μ, θ(k*)); needs θ among the dynamics.
GradedSystem theta_coordinate_system(const GradedSystem& sys);

// ‖μ ∘ E − μ‖ over matrix units for E: M_n → M_n.
double invariance_residual(const Channel& e, const Mat& rho);

// Same dynamics names in the same order and same number of coordinates.
void require_matching(const GradedSystem& a, const GradedSystem& b);

}  // namespace fw
