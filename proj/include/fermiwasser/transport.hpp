#pragma once

#include "fermiwasser/system.hpp"

#include <map>
#include <set>
#include <string>

namespace fw {

// A transport plan stored through its channel E = E_ω: A → B. The usual plan
// is ω(a ⊙ b′) = ⟨Λ_ν, E(a) b′ Λ_ν⟩, the fermionic one
// ω(a ⊗F b^≀) = ⟨Λ_ν, E(a) b^≀ Λ_ν⟩.
struct TransportPlan {
  Channel e;
  StandardFormAlgebra alg_a, alg_b;
  Mat rho_mu, rho_nu;
  std::set<std::string> tags;  // ⊆ {plain, graded, modular, kms, fermionic}

  bool has(const std::string& tag) const { return tags.count(tag) > 0; }
};

struct PlanTolerances {
  double unital = 1e-9;
  double cp = 1e-9;
  double compat = 1e-9;
  double tag = 1e-9;
};

// Validates E (unital, CP, hermiticity preserving, ν∘E = μ) and computes the
// structural tags: graded when E is even, modular when E intertwines the
// modular generators, fermionic when graded with even states.
TransportPlan plan_from_channel(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                                const StandardFormAlgebra& alg_b, const Mat& rho_nu,
                                const PlanTolerances& tol = {});

// ‖E ∘ ad(log ρ_μ) − ad(log ρ_ν) ∘ E‖
double modular_residual(const Channel& e, const Mat& rho_mu, const Mat& rho_nu);

// Evaluation table T[i, j] = ω(e_i ⊙ c_j) (usual, c_j ↦ 1 ⊗ c_j) or
// ω(e_i ⊗F c_j) (fermionic, c_j ↦ twisted(c_j)), both over matrix units in
// row-major order.
struct RawPlanTable {
  bool fermionic = false;
  Mat values;
};

RawPlanTable usual_table(const TransportPlan& plan);
RawPlanTable fermionic_table(const TransportPlan& plan);

// Evaluates a table on arbitrary coordinates by bilinearity.
cplx table_eval(const RawPlanTable& raw, const Mat& a, const Mat& c);

cplx usual_eval(const TransportPlan& plan, const Mat& a, const Mat& c);
// Throws without the fermionic tag.
cplx fermionic_eval(const TransportPlan& plan, const Mat& a, const Mat& c);

// Recovers E from a table: E(a)Λ_ν is solved against the frame {c_j Λ_ν}
// and E(a) read off from E(a)Λ_ν since Λ_ν is separating. Throws "not a
// transport plan" when the table is not reproduced by the recovered map or
// the map is not a state-compatible channel.
Channel channel_from_raw(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                         const StandardFormAlgebra& alg_b, const Mat& rho_nu);

// Bijection between graded usual plans and fermionic plans, on tables.
// T_F(a, c) = T(a, c₊) − i T(a, c₋) with c± the parts for the commutant
// grading; the inverse is T(a, c) = T_F(a, c₊) + i T_F(a, c₋).
RawPlanTable to_fermionic(const RawPlanTable& usual, const StandardFormAlgebra& alg_b);
RawPlanTable to_usual(const RawPlanTable& fermionic, const StandardFormAlgebra& alg_b);

TransportPlan diagonal_plan(const StandardFormAlgebra& alg, const Mat& rho_nu, bool fermionic);

struct BalanceReport {
  std::map<std::string, double> dynamics;
  double modular = 0.0;
  std::map<std::string, double> kms;
  double max_dynamics() const;
  double max_kms() const;
};

// Residuals of E∘α_υ = β_υ∘E, of the modular generator condition and of
// E∘α_υ^σ = β_υ^σ∘E.
BalanceReport check_balance(const TransportPlan& plan, const GradedSystem& sys_a, const GradedSystem& sys_b);
// Adds "kms" when every KMS residual is below tol (the other tags are
// structural and set by plan_from_channel).
void update_tags(TransportPlan& plan, const BalanceReport& r, double tol = 1e-9);

// ω′ with E_{ω′} = E′ between commutants, ω^σ with E^σ, ω^≀ with E^≀, and
// ω^ϰ with ϰ_B ∘ E ∘ ϰ_A⁻¹. Endpoints are expressed on their own canonical
// forms (commutant grading ū, states ρᵀ).
TransportPlan plan_dual(const TransportPlan& plan);
TransportPlan plan_kms(const TransportPlan& plan);
TransportPlan plan_twisted(const TransportPlan& plan);
TransportPlan plan_copy(const TransportPlan& plan, const CopyingMap& kappa_a, const CopyingMap& kappa_b);

// Density of μ^ϰ = μ ∘ ϰ⁻¹ in twisted coordinates.
Mat copied_density(const CopyingMap& cm, const Mat& rho);

// GNS construction of a raw table over monomials e_i ⊗ c_j.
//
// In the fermionic case monomials are products x ⊗F y of homogeneous
// elements, with (x ⊗ y)* = (−1)^{∂x∂y} x* ⊗ y* and
// (x ⊗ y)(x′ ⊗ y′) = (−1)^{∂y∂x′} xx′ ⊗ yy′.
struct GnsReport {
  Mat gram;          // over monomials, index i·m² + j
  double min_eigenvalue = 0.0;
  int dim = 0;       // GNS dimension
  Mat basis;         // G-orthonormal representatives of the GNS space
  Mat h;             // grading on monomials (diagonal)
  double h_squared_residual = 0.0;
};

GnsReport gns_of_plan(const RawPlanTable& raw, const StandardFormAlgebra& alg_a,
                      const StandardFormAlgebra& alg_b, double tol_pd = 1e-9);

// Matrices of π(a ⊗ 1) and π(1 ⊗ c) on the monomial coefficient space; c is
// taken homogeneous in the fermionic case (otherwise split by the caller).
Mat gns_left(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const StandardFormAlgebra& alg_b,
             const Mat& a);
Mat gns_right(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const StandardFormAlgebra& alg_b,
              const Mat& c);

// Operator of a coefficient-space matrix on the GNS space.
Mat gns_operator(const GnsReport& g, const Mat& x);

// max ‖[π(a⊗1), η^{±1/2}(π(1⊗c))]‖ over homogeneous matrix units, where
// η(x) = h x h and η^{1/2}(x) = h^{1/2} x h^{-1/2}, h^{1/2} = q⁺ − i q⁻.
double gns_lemma_residual(const RawPlanTable& fermionic, const StandardFormAlgebra& alg_a,
                          const StandardFormAlgebra& alg_b, const GnsReport& g);

// E(a) extracted as the compression of π(a ⊙ 1) to the closure of
// [1 ⊙ B′], read through ⟨[1⊙c_j], π(a⊙1)[1⊙c_l]⟩ = ⟨c_jΛ_ν, E(a) c_lΛ_ν⟩.
Channel gns_extract_channel(const RawPlanTable& usual, const StandardFormAlgebra& alg_a,
                            const StandardFormAlgebra& alg_b, const Mat& rho_nu);

}  // namespace fw
