#pragma once

#include "fermiwasser/channel.hpp"
#include "fermiwasser/random.hpp"

#include <cmath>

namespace fwtest {

using namespace fw;

inline Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat pauli_y() {
  Mat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Mat diag(std::initializer_list<double> xs) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) m(i, i) = x, ++i;
  return m;
}

// Closed-form KMS dual, used only to cross-check the linear-solve path:
// E^σ(b) = ρ_μ^{-1/2} E†(ρ_ν^{1/2} b ρ_ν^{1/2}) ρ_μ^{-1/2}.
inline Channel petz_formula(const Channel& e, const Mat& rho_mu, const Mat& rho_nu) {
  const Mat mu_inv_half = powm_pd(rho_mu, -0.5);
  const Mat nu_half = powm_pd(rho_nu, 0.5);
  const Channel adj = trace_adjoint(e);
  return Channel::from_function(e.n_out, e.n_in, [&](const Mat& b) {
    return Mat(mu_inv_half * adj.apply(nu_half * b * nu_half) * mu_inv_half);
  });
}

// An even u.c.p. map E together with a faithful even ν on the target and
// μ = ν ∘ E on the source.
struct CompatibleMap {
  StandardFormAlgebra alg_a, alg_b;
  Mat rho_mu, rho_nu;
  Channel e;
};

inline CompatibleMap random_compatible_map(int n, int m, Rng& rng, int n_odd_a = 1, int n_odd_b = 1) {
  CompatibleMap c;
  c.alg_a = canonical_standard_form(n, diagonal_grading(n, n_odd_a));
  c.alg_b = canonical_standard_form(m, diagonal_grading(m, n_odd_b));
  c.e = random_even_channel(c.alg_a.u, c.alg_b.u, rng);
  c.rho_nu = random_even_state(c.alg_b.u, rng);
  c.rho_mu = hermitian_part(trace_adjoint(c.e).apply(c.rho_nu));
  return c;
}

}  // namespace fwtest
