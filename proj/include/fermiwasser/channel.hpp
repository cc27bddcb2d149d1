#pragma once

#include "fermiwasser/algebra.hpp"

#include <functional>
#include <random>
#include <string>

namespace fw {

// Linear map M_{n_in} → M_{n_out} stored as its superoperator on row-major
// vec'd matrices: vec(E(a)) = S vec(a).
struct Channel {
  int n_in = 0;
  int n_out = 0;
  Mat S;
  // Set for reversing operations θ; such maps are u.p. but not CP, and no
  // code treats a map as CP unless its Choi matrix says so.
  bool antimultiplicative = false;

  Mat apply(const Mat& a) const;

  static Channel identity(int n);
  static Channel from_function(int n_in, int n_out, const std::function<Mat(const Mat&)>& f);
  // E(a) = U† a U for a unitary (or isometry) U of size n_in × n_out.
  static Channel conjugation(const Mat& u);
  // E(a) = Σ V_k† a V_k with V_k of size n_in × n_out.
  static Channel from_kraus(const std::vector<Mat>& kraus);
  // E(a) = Tr(ρ a) 1_{n_out}
  static Channel product(const Mat& rho, int n_out);
  // Inverse of choi().
  static Channel from_choi(const Mat& choi, int n_in, int n_out);
};

// (f ∘ e)
Channel compose(const Channel& f, const Channel& e);
Channel operator+(const Channel& a, const Channel& b);
Channel operator*(double s, const Channel& a);
double distance(const Channel& a, const Channel& b);

// C = Σ_{pq} e_pq ⊗ E(e_pq), indexed C[(p·n_out + r), (q·n_out + s)] =
// E(e_pq)_{rs}. E(a) = Tr₁[(aᵀ ⊗ 1) C].
inline constexpr const char* kChoiConvention =
    "choi[p*n_out+r][q*n_out+s] = E(e_pq)[r][s], row-major vec";
Mat choi(const Channel& e);

// The trace adjoint E†: Tr(E†(b) a) = Tr(b E(a)).
Channel trace_adjoint(const Channel& e);

double unital_residual(const Channel& e);
double choi_min_eigenvalue(const Channel& e);
bool is_completely_positive(const Channel& e, double tol_pd = 1e-10);
double hermiticity_preservation_residual(const Channel& e);
// ‖E ∘ γ_A − γ_B ∘ E‖ for gradings given by unitaries on coordinates.
double evenness_residual(const Channel& e, const Mat& u_in, const Mat& u_out);
// max_a |ν(E(a)) − μ(a)| over matrix units.
double compatibility_residual(const Channel& e, const Mat& rho_mu, const Mat& rho_nu);
// max ‖E(ab) − E(b)E(a)‖ over matrix units.
double antimultiplicativity_residual(const Channel& e);
double multiplicativity_residual(const Channel& e);
// Smallest eigenvalue of E(x) over `samples` random PSD inputs. This is a
// heuristic positivity flag, not a proof.
double sampled_positivity(const Channel& e, std::mt19937_64& rng, int samples = 200);

// Accardi-Cecchini dual E′: B′ → A′ in commutant coordinates (c ↔ 1 ⊗ c),
// obtained by solving ⟨Λ_μ, a E′(b′) Λ_μ⟩ = ⟨Λ_ν, E(a) b′ Λ_ν⟩ over the full
// basis grid.
Channel accardi_dual(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                     const StandardFormAlgebra& alg_b, const Mat& rho_nu);

// E^σ = j_A ∘ E′ ∘ j_B : B → A.
Channel kms_dual(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                 const StandardFormAlgebra& alg_b, const Mat& rho_nu);

// E^≀ = γ_A^{1/2} ∘ E′ ∘ γ_B^{−1/2} : B^≀ → A^≀ in twisted coordinates
// (c ↔ klein (1 ⊗ c) klein†). Throws unless E is even.
Channel twisted_dual(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                     const StandardFormAlgebra& alg_b, const Mat& rho_nu);

// Residuals of the two defining relations of E^≀, over the basis grid:
//   ⟨Λ_μ, a E^≀(y) Λ_μ⟩ = ⟨Λ_ν, E(a) y Λ_ν⟩
//   (−1)^{∂a∂y} ⟨Λ_μ, E^≀(y) a Λ_μ⟩ = ⟨Λ_ν, E(a) y Λ_ν⟩
// for homogeneous a and y; general pairs are split into homogeneous parts.
// Without the sign the second relation fails whenever a and y are both odd.
struct TwistedRelationResiduals {
  double left;
  double right;
};
TwistedRelationResiduals twisted_relation_residuals(const Channel& e, const Channel& e_twisted,
                                                    const StandardFormAlgebra& alg_a,
                                                    const Mat& rho_mu,
                                                    const StandardFormAlgebra& alg_b,
                                                    const Mat& rho_nu);

// Residual of ⟨Λ_μ, a E′(b′) Λ_μ⟩ = ⟨Λ_ν, E(a) b′ Λ_ν⟩ over the basis grid.
double accardi_relation_residual(const Channel& e, const Channel& e_dual,
                                 const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                                 const StandardFormAlgebra& alg_b, const Mat& rho_nu);

// ‖(F ∘ E)^≀ − E^≀ ∘ F^≀‖ for E: A → B, F: B → C.
double compose_dual_check(const Channel& e, const Channel& f, const StandardFormAlgebra& alg_a,
                          const Mat& rho_a, const StandardFormAlgebra& alg_b, const Mat& rho_b,
                          const StandardFormAlgebra& alg_c, const Mat& rho_c);

}  // namespace fw
