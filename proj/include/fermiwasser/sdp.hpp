#pragma once

#include "fermiwasser/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fw {

// min Re Tr(C X)  s.t.  Re Tr(A_k X) = b_k,  X ⪰ 0,  X Hermitian d×d.
//
// Solved by a primal-dual path-following method with HKM search directions
// and a Mehrotra predictor-corrector, on the real symmetric embedding
//   X ↦ Y = [[Re X, −Im X], [Im X, Re X]].
// Tr(Y Ỹ) = 2 Re Tr(X X̃), so embedded constraint matrices are divided by √2
// (and right-hand sides multiplied by √2) to keep them orthonormal, and the
// embedded objective is C̃/2. The iteration runs in long double, and each
// search direction is re-projected onto A(ΔY) = r_p, which keeps primal
// feasibility at rounding level while the Schur complement degenerates.
struct SdpOptions {
  double tol_feas = 1e-8;  // relative primal and dual residuals
  // |pobj − dobj| and N·μ must fall below tol_gap + tol_gap_rel·|pobj|.
  double tol_gap = 1e-7;
  int max_iter = 200;
  double rank_rel = 1e-10;  // constraint reduction threshold
  double tol_pd = 1e-9;
  double tol_gap_rel = 0.0;
};

struct SdpProblem {
  int dim = 0;
  Mat objective;
  std::vector<Mat> a;
  std::vector<double> b;
  SdpOptions options;

  void add_constraint(const Mat& a_k, double b_k);
  // Adds Re f(X) = Re β and Im f(X) = Im β for the complex functional
  // f(X) = Σ_ij w_ij X_ij.
  void add_complex_constraint(const Mat& w, cplx beta);
};

// The Hermitian H with Re Tr(H X) = Re f(X) for Hermitian X, where
// f(X) = Σ_ij w_ij X_ij.
Mat real_part_functional(const Mat& w);

enum class SdpStatus { optimal, infeasible, max_iter };
std::string to_string(SdpStatus s);

struct SdpSolution {
  Mat X;
  double value = 0.0;       // Re Tr(C X)
  double dual_value = 0.0;  // bᵀy
  double primal_residual = 0.0;  // max_k |Re Tr(A_k X) − b_k|
  double dual_residual = 0.0;
  double dual_gap = 0.0;  // |value − dual_value|
  double min_eigenvalue = 0.0;
  SdpStatus status = SdpStatus::max_iter;
  int iterations = 0;
  int reduced_constraints = 0;
};

// The seed, when given, must be positive definite; it is used as the
// starting primal iterate.
SdpSolution solve(const SdpProblem& p, const std::optional<Mat>& seed = std::nullopt);

struct FeasiblePoint {
  bool feasible = false;
  Mat X;
  double residual = 0.0;
  double min_eigenvalue = 0.0;
};

// With a seed: checks the constraints at the seed and, if they hold within
// tol_feas, returns it. Without one, solves the phase-one problem
// min Tr(X) subject to the constraints and returns its analytic-centre-ish
// solution.
FeasiblePoint feasible_point(const SdpProblem& p, const std::optional<Mat>& seed = std::nullopt);

double constraint_residual(const SdpProblem& p, const Mat& x);

// Orthogonal projection of a Hermitian x onto the affine constraint set
// (least-squares correction; positivity is not enforced).
Mat affine_projection(const SdpProblem& p, const Mat& x);

}  // namespace fw
