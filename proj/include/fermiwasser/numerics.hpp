#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fw {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I_unit{0.0, 1.0};

// Thrown for violated preconditions: bad shapes, non-faithful states,
// maps that are not even, and similar.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rank_rel = 1e-9;  // relative to the largest singular value
  double pd = 1e-12;
  double herm = 1e-10;
  double span = 1e-8;  // principal angle, radians
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

// Vectorisation is row-major throughout: vec(X)[i*cols + j] = X(i, j).
// With this choice vec(a X b) = (a ⊗ bᵀ) vec(X), so left multiplication
// by a is a ⊗ 1 and right multiplication by b is 1 ⊗ bᵀ.
Vec vec(const Mat& x);
Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols);

Mat kron(const Mat& a, const Mat& b);

// Matrix unit e_{ij} of size n×n.
Mat unit(int n, int i, int j);

// Permutation P on Cⁿ ⊗ Cᵐ with P (x ⊗ y) = y ⊗ x.
Mat swap_operator(int n, int m);

// For x on Cⁿ ⊗ Cᵐ: trace out the second (resp. first) factor.
Mat partial_trace_second(const Mat& x, int n, int m);
Mat partial_trace_first(const Mat& x, int n, int m);

double hermiticity_defect(const Mat& h);
Mat hermitian_part(const Mat& h);

struct HermEig {
  RVec values;  // ascending
  Mat vectors;  // unitary, columns are eigenvectors
};

// Throws when h is not Hermitian within tol_herm·max(1, ‖h‖).
HermEig herm_eig(const Mat& h, double tol_herm = default_tolerances().herm);

// V diag(f(λ)) V†. Throws when f reports the spectrum as out of domain.
Mat matrix_function(const Mat& h, const std::function<cplx(double)>& f,
                    double tol_herm = default_tolerances().herm);

// Fractional powers and logarithms of positive definite matrices; these
// reject eigenvalues at or below tol_pd with "state not faithful".
Mat sqrtm_psd(const Mat& h);
Mat powm_pd(const Mat& h, double p, double tol_pd = default_tolerances().pd);
Mat logm_pd(const Mat& h, double tol_pd = default_tolerances().pd);
// ρ^{it}
Mat imag_power(const Mat& h, double t, double tol_pd = default_tolerances().pd);

double min_eigenvalue(const Mat& h);

// x ↦ m · conj(x) in the standard basis.
struct AntilinearOperator {
  Mat m;

  Vec apply(const Vec& x) const { return m * x.conjugate(); }
  // (this ∘ other)(x) = m conj(other.m conj(x)) = m conj(other.m) x: linear.
  Mat compose(const AntilinearOperator& other) const {
    return m * other.m.conjugate();
  }
  // this ∘ l for a linear l.
  AntilinearOperator after(const Mat& l) const { return {m * l.conjugate()}; }
  // The linear operator J x J for linear x.
  Mat sandwich(const Mat& x) const { return m * x.conjugate() * m.conjugate(); }
  // The adjoint s* defined by ⟨s* y, x⟩ = ⟨s x, y⟩.
  AntilinearOperator adjoint() const { return {m.transpose()}; }
};

struct AntilinearPolar {
  AntilinearOperator j;
  Mat delta_half;
};

// s = j ∘ delta_half with delta_half = (s* s)^{1/2}.
//
// For s = M·conj, ⟨s x, y⟩ = (M x̄)† y = xᵀ M† y, and requiring this to equal
// ⟨s* y, x⟩ = (s* y)† x forces s* y = conj(M† y) = Mᵀ ȳ. Hence
// s* s x = Mᵀ conj(M x̄) = Mᵀ M̄ x, a positive linear operator, and
// j = s ∘ delta_half⁻¹ has matrix M · conj(delta_half⁻¹).
AntilinearPolar antilinear_polar(const AntilinearOperator& s,
                                 double tol_pd = default_tolerances().pd);

// Orthonormal basis (as columns) of ker(rows), by SVD thresholding at
// rank_rel·σ_max.
Mat nullspace(const Mat& rows, double rank_rel = default_tolerances().rank_rel);

// Orthonormal basis (as columns) of the column span.
Mat orthonormal_span(const Mat& cols, double rank_rel = default_tolerances().rank_rel);

int numerical_rank(const Mat& m, double rank_rel = default_tolerances().rank_rel);

// Largest principal angle between the column spans of a and b; returns π/2
// when the dimensions differ.
double max_principal_angle(const Mat& a, const Mat& b,
                           double rank_rel = default_tolerances().rank_rel);

// Stacks vec(x) of each operator as a column.
Mat stack_vecs(const std::vector<Mat>& ops);

double opnorm(const Mat& m);

}  // namespace fw
