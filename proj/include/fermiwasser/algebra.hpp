#pragma once

#include "fermiwasser/numerics.hpp"

#include <functional>
#include <vector>

namespace fw {

// M_n in canonical standard form on H = Cⁿ ⊗ Cⁿ, the space of vec'd n×n
// matrices. With the row-major vec convention:
//   A  acts as X ↦ aX,        i.e. a ⊗ 1
//   A′ acts as X ↦ X cᵀ,      i.e. 1 ⊗ c  (c ↦ 1 ⊗ c is a *-isomorphism)
//   J vec(X) = vec(X†)
//   g vec(X) = vec(u X u†),   i.e. g = u ⊗ ū
// Elements of A, A′ and A^≀ are addressed by n×n coordinate matrices through
// left(), right() and twisted().
struct StandardFormAlgebra {
  int n = 0;
  Mat u;      // algebra-level grading unitary, self-adjoint
  Mat g;      // grading unitary on H
  Mat klein;  // g^{1/2} = p⁺ − i p⁻
  AntilinearOperator j_op;
  Vec omega;  // vec(1/√n)

  int hilbert_dim() const { return n * n; }

  Mat left(const Mat& a) const;
  Mat right(const Mat& c) const;
  Mat twisted(const Mat& c) const;  // klein (1 ⊗ c) klein†

  Mat from_left(const Mat& x) const;
  Mat from_right(const Mat& x) const;
  Mat from_twisted(const Mat& x) const;

  // γ on coordinates of A: a ↦ u a u†.
  Mat grade(const Mat& a) const { return u * a * u.adjoint(); }
  // Grading unitary that represents x ↦ g x g on the coordinates of A′ and
  // of A^≀. It is ū, derived from g rather than supplied.
  Mat commutant_grading() const { return u.conjugate(); }

  Mat grade_op(const Mat& x) const { return g * x * g; }
  // γ^{±1/2}(x) = g^{±1/2} x g^{∓1/2}
  Mat klein_map(const Mat& x, int sign) const;
  // j(x) = J x* J
  Mat j(const Mat& x) const { return j_op.sandwich(x.adjoint()); }

  // Matrix units of M_n in row-major order; this is the declared basis for
  // every superoperator and table in the library.
  std::vector<Mat> basis() const;
};

// Throws when u is not a self-adjoint unitary.
StandardFormAlgebra canonical_standard_form(int n, const Mat& grading_u);
StandardFormAlgebra canonical_standard_form(int n);

// States are carried as density matrices ρ with μ(a) = Tr(ρ a).
// Throws unless rho is Hermitian, trace one and strictly positive.
void check_state(const Mat& rho, double tol_pd = default_tolerances().pd);
double evenness_residual(const StandardFormAlgebra& alg, const Mat& rho);

// Λ_μ = vec(ρ^{1/2}).
Vec state_vector(const StandardFormAlgebra& alg, const Mat& rho);

// Density of μ′ on A′ and of μ^≀ on A^≀ in coordinates, computed from the
// vector state ⟨Λ_μ, · Λ_μ⟩.
Mat commutant_density(const StandardFormAlgebra& alg, const Mat& rho);
Mat twisted_density(const StandardFormAlgebra& alg, const Mat& rho);

struct ModularData {
  AntilinearOperator S;
  AntilinearOperator J;
  Mat Delta;
  Mat log_delta;
};

// S is assembled from S(aΛ) = a*Λ over the matrix units; J and Δ come from
// its polar decomposition.
ModularData modular_data(const StandardFormAlgebra& alg, const Mat& rho);

// σ_t(a) = ρ^{it} a ρ^{-it} as a superoperator on coordinates.
Mat modular_superoperator(const Mat& rho, double t);

// Orthonormal (Hilbert-Schmidt) basis of the operators commuting with every
// generator.
std::vector<Mat> commutant(const std::vector<Mat>& generators, int hilbert_dim,
                           double rank_rel = default_tolerances().rank_rel);

std::vector<Mat> left_action_basis(const StandardFormAlgebra& alg);
std::vector<Mat> twisted_commutant(const StandardFormAlgebra& alg);

// Returns γ^{±1/2} as a map on operators of H.
std::function<Mat(const Mat&)> klein_isomorphism(const StandardFormAlgebra& alg, int sign);

// Largest principal angle between the spans of two operator families.
double span_angle(const std::vector<Mat>& a, const std::vector<Mat>& b);

// Homogeneous parts x± = (x ± g x g)/2 of an operator on H.
Mat even_part(const StandardFormAlgebra& alg, const Mat& x);
Mat odd_part(const StandardFormAlgebra& alg, const Mat& x);

}  // namespace fw
