#include "fermiwasser/algebra.hpp"

#include <cmath>

namespace fw {

Mat StandardFormAlgebra::left(const Mat& a) const {
  return kron(a, Mat::Identity(n, n));
}

Mat StandardFormAlgebra::right(const Mat& c) const {
  return kron(Mat::Identity(n, n), c);
}

Mat StandardFormAlgebra::twisted(const Mat& c) const {
  return klein * right(c) * klein.adjoint();
}

Mat StandardFormAlgebra::from_left(const Mat& x) const {
  return partial_trace_second(x, n, n) / static_cast<double>(n);
}

Mat StandardFormAlgebra::from_right(const Mat& x) const {
  return partial_trace_first(x, n, n) / static_cast<double>(n);
}

Mat StandardFormAlgebra::from_twisted(const Mat& x) const {
  return from_right(klein.adjoint() * x * klein);
}

Mat StandardFormAlgebra::klein_map(const Mat& x, int sign) const {
  return sign > 0 ? Mat(klein * x * klein.adjoint()) : Mat(klein.adjoint() * x * klein);
}

std::vector<Mat> StandardFormAlgebra::basis() const {
  std::vector<Mat> b;
  b.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.push_back(unit(n, i, j));
  return b;
}

StandardFormAlgebra canonical_standard_form(int n, const Mat& grading_u) {
  if (n < 1) throw Error("canonical_standard_form: n must be positive");
  if (grading_u.rows() != n || grading_u.cols() != n)
    throw Error("canonical_standard_form: grading unitary has wrong size");
  const Mat id = Mat::Identity(n, n);
  if ((grading_u - grading_u.adjoint()).norm() > 1e-10 || (grading_u * grading_u - id).norm() > 1e-10)
    throw Error("canonical_standard_form: grading unitary is not a self-adjoint involution");

  StandardFormAlgebra alg;
  alg.n = n;
  alg.u = grading_u;
  alg.g = kron(grading_u, grading_u.conjugate());
  const Mat big_id = Mat::Identity(n * n, n * n);
  const Mat p_plus = 0.5 * (big_id + alg.g);
  const Mat p_minus = 0.5 * (big_id - alg.g);
  alg.klein = p_plus - I_unit * p_minus;
  alg.j_op = AntilinearOperator{swap_operator(n, n)};
  alg.omega = vec(id / std::sqrt(static_cast<double>(n)));
  return alg;
}

StandardFormAlgebra canonical_standard_form(int n) {
  return canonical_standard_form(n, Mat::Identity(n, n));
}

void check_state(const Mat& rho, double tol_pd) {
  if (rho.rows() != rho.cols()) throw Error("state density not square");
  if (hermiticity_defect(rho) > 1e-10) throw Error("state density not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw Error("state density not normalised");
  if (min_eigenvalue(rho) <= tol_pd) throw Error("state not faithful");
}

double evenness_residual(const StandardFormAlgebra& alg, const Mat& rho) {
  return (alg.grade(rho) - rho).norm();
}

Vec state_vector(const StandardFormAlgebra& alg, const Mat& rho) {
  if (rho.rows() != alg.n) throw Error("state_vector: size mismatch");
  check_state(rho);
  return vec(sqrtm_psd(rho));
}

namespace {

Mat density_from(const StandardFormAlgebra& alg, const Mat& rho,
                 const std::function<Mat(const Mat&)>& embed) {
  const Vec lam = state_vector(alg, rho);
  Mat sigma(alg.n, alg.n);
  // Tr(σ e_pq) = σ_qp
  for (int p = 0; p < alg.n; ++p)
    for (int q = 0; q < alg.n; ++q) sigma(q, p) = lam.dot(embed(unit(alg.n, p, q)) * lam);
  return sigma;
}

}  // namespace

Mat commutant_density(const StandardFormAlgebra& alg, const Mat& rho) {
  return density_from(alg, rho, [&](const Mat& c) { return alg.right(c); });
}

Mat twisted_density(const StandardFormAlgebra& alg, const Mat& rho) {
  return density_from(alg, rho, [&](const Mat& c) { return alg.twisted(c); });
}

ModularData modular_data(const StandardFormAlgebra& alg, const Mat& rho) {
  const Vec lam = state_vector(alg, rho);
  const int d = alg.hilbert_dim();
  Mat v(d, d), w(d, d);
  int col = 0;
  for (const Mat& a : alg.basis()) {
    v.col(col) = alg.left(a) * lam;
    w.col(col) = alg.left(a.adjoint()) * lam;
    ++col;
  }
  if (numerical_rank(v) < d) throw Error("vector not cyclic");
  // S acts as M·conj, so S v_k = w_k for all k reads M conj(V) = W.
  const Mat m = v.conjugate().transpose().fullPivLu().solve(w.transpose()).transpose();
  AntilinearOperator s{m};
  const auto polar = antilinear_polar(s);
  const Mat delta = polar.delta_half * polar.delta_half;
  return {s, polar.j, delta, logm_pd(hermitian_part(delta), 0.0)};
}

Mat modular_superoperator(const Mat& rho, double t) {
  const Mat r = imag_power(rho, t);
  // vec(r a r†) = (r ⊗ conj(r)) vec(a)
  return kron(r, r.conjugate());
}

std::vector<Mat> commutant(const std::vector<Mat>& generators, int hilbert_dim, double rank_rel) {
  const int d = hilbert_dim;
  const Mat id = Mat::Identity(d, d);
  Mat rows(static_cast<Eigen::Index>(generators.size()) * d * d, d * d);
  Eigen::Index r = 0;
  for (const Mat& gen : generators) {
    // vec(g x − x g) = (g ⊗ 1 − 1 ⊗ gᵀ) vec(x)
    rows.middleRows(r, d * d) = kron(gen, id) - kron(id, gen.transpose());
    r += d * d;
  }
  const Mat ns = nullspace(rows, rank_rel);
  std::vector<Mat> out;
  for (Eigen::Index k = 0; k < ns.cols(); ++k) out.push_back(unvec(ns.col(k), d, d));
  return out;
}

std::vector<Mat> left_action_basis(const StandardFormAlgebra& alg) {
  std::vector<Mat> out;
  for (const Mat& a : alg.basis()) out.push_back(alg.left(a));
  return out;
}

std::vector<Mat> twisted_commutant(const StandardFormAlgebra& alg) {
  std::vector<Mat> out;
  for (const Mat& c : commutant(left_action_basis(alg), alg.hilbert_dim()))
    out.push_back(alg.klein * c * alg.klein.adjoint());
  return out;
}

std::function<Mat(const Mat&)> klein_isomorphism(const StandardFormAlgebra& alg, int sign) {
  return [alg, sign](const Mat& x) { return alg.klein_map(x, sign); };
}

double span_angle(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  return max_principal_angle(stack_vecs(a), stack_vecs(b));
}

Mat even_part(const StandardFormAlgebra& alg, const Mat& x) {
  return 0.5 * (x + alg.grade_op(x));
}

Mat odd_part(const StandardFormAlgebra& alg, const Mat& x) {
  return 0.5 * (x - alg.grade_op(x));
}

}  // namespace fw
