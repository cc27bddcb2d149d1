#include "fermiwasser/random.hpp"

#include <cmath>
#include <numbers>

namespace fw {

Mat random_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd;
  Mat x(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x(i, j) = cplx(nd(rng), nd(rng));
  return x;
}

Mat random_hermitian(int n, Rng& rng) { return hermitian_part(random_matrix(n, n, rng)); }

Mat random_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(n, n, rng));
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

Mat diagonal_grading(int n, int n_odd) {
  Mat u = Mat::Identity(n, n);
  for (int i = n - n_odd; i < n; ++i) u(i, i) = -1.0;
  return u;
}

Mat random_even_unitary(const Mat& u, Rng& rng) {
  const Mat h = random_hermitian(static_cast<int>(u.rows()), rng);
  const Mat h_even = 0.5 * (h + u * h * u.adjoint());
  return matrix_function(h_even, [](double x) { return std::exp(I_unit * x); });
}

Mat random_even_state(const Mat& u, Rng& rng, bool real, double min_weight) {
  const int n = static_cast<int>(u.rows());
  Mat x = random_matrix(n, n, rng);
  if (real) x = Mat(x.real().cast<cplx>());
  Mat rho = x * x.adjoint();
  rho = 0.5 * (rho + u * rho * u.adjoint());
  rho /= rho.trace().real();
  rho = (1.0 - min_weight * n) * rho + min_weight * Mat::Identity(n, n);
  return hermitian_part(rho);
}

Channel random_even_channel(const Mat& u_in, const Mat& u_out, Rng& rng, int kraus) {
  const int n_in = static_cast<int>(u_in.rows());
  const int n_out = static_cast<int>(u_out.rows());
  std::vector<Mat> vs;
  for (int k = 0; k < kraus; ++k) {
    const Mat v = random_matrix(n_in, n_out, rng);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    vs.push_back(0.5 * (v + sign * u_in * v * u_out));
  }
  Mat t = Mat::Zero(n_out, n_out);
  for (const Mat& v : vs) t += v.adjoint() * v;
  const Mat t_inv_half = powm_pd(hermitian_part(t), -0.5, 1e-14);
  for (Mat& v : vs) v = v * t_inv_half;
  return Channel::from_kraus(vs);
}

Channel random_invariant_dynamics(const Mat& u, const Mat& rho, Rng& rng) {
  const int n = static_cast<int>(u.rows());
  // F: B → A is a random even u.c.p. map and ν = μ ∘ F; then F ∘ F^σ is
  // u.c.p., even and μ-invariant. A unitary commuting with ρ and u breaks
  // the KMS symmetry of that product.
  const auto alg = canonical_standard_form(n, u);
  const Channel f = random_even_channel(u, u, rng, 2);
  Mat rho_nu = Mat(trace_adjoint(f).apply(rho));
  rho_nu = hermitian_part(rho_nu);
  const Channel f_sigma = kms_dual(f, alg, rho_nu, alg, rho);
  const Channel relax = compose(f, f_sigma);

  const auto e = herm_eig(rho);
  RVec phases(n);
  std::uniform_real_distribution<double> ud(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < n; ++i) phases(i) = ud(rng);
  // h shares the eigenbasis of ρ, and ρ commutes with u, so projecting h to
  // its even part keeps [h, ρ] = 0.
  Mat h = e.vectors * phases.cast<cplx>().asDiagonal() * e.vectors.adjoint();
  h = 0.5 * (h + u * h * u.adjoint());
  const Mat w = matrix_function(hermitian_part(h), [](double x) { return std::exp(I_unit * x); });
  const Channel rot = Channel::conjugation(w);

  std::uniform_real_distribution<double> ul(0.2, 0.8);
  const double lam = ul(rng);
  return compose(rot, lam * relax + (1.0 - lam) * Channel::identity(n));
}

Mat random_homogeneous(const Mat& u, int parity, Rng& rng) {
  const Mat x = random_matrix(static_cast<int>(u.rows()), static_cast<int>(u.rows()), rng);
  const double s = parity == 0 ? 1.0 : -1.0;
  return 0.5 * (x + s * u * x * u.adjoint());
}

}  // namespace fw
