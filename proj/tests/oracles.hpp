#pragma once

// Independent first-order SDP oracle shared by the unit tests and the
// acceptance binary. It does not touch the interior-point code path: it works
// on complex Hermitian matrices directly, with an explicit affine projector
// and eigenvalue clipping.

#include "fermiwasser/sdp.hpp"

#include <algorithm>

namespace fwtest {

using namespace fw;

inline Mat psd_projection(const Mat& x) {
  const auto e = herm_eig(hermitian_part(x), 1e-6);
  RVec clipped = e.values.cwiseMax(0.0);
  return e.vectors * clipped.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

struct OracleResult {
  double value = 0.0;
  Mat X;
  int iterations = 0;
  double residual = 0.0;
};

// ADMM on  min ⟨C, X⟩ + ι_affine(X) + ι_psd(Z),  X = Z.
// Each iteration is a gradient step on the objective folded into the
// projection onto the affine set, then a projection onto the PSD cone.
inline OracleResult admm_oracle(const SdpProblem& p, int max_iter = 200000, double tol = 1e-11,
                                double rho = 1.0) {
  const int d = p.dim;
  const int k = static_cast<int>(p.a.size());
  // Affine projector in the real coordinates (Re X, Im X) flattened.
  const int nv = 2 * d * d;
  RMat rows(k, nv);
  RVec b(k);
  for (int i = 0; i < k; ++i) {
    // Re Tr(A X) = Σ Re(A_ji) Re X_ij − Im(A_ji) Im X_ij
    const Mat at = p.a[i].transpose();
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        rows(i, r * d + c) = at(r, c).real();
        rows(i, d * d + r * d + c) = -at(r, c).imag();
      }
    b(i) = p.b[i];
  }
  const Eigen::CompleteOrthogonalDecomposition<RMat> cod(rows);
  const RMat pinv = cod.pseudoInverse();
  auto flatten = [&](const Mat& x) {
    RVec v(nv);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        v(r * d + c) = x(r, c).real();
        v(d * d + r * d + c) = x(r, c).imag();
      }
    return v;
  };
  auto unflatten = [&](const RVec& v) {
    Mat x(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) x(r, c) = cplx(v(r * d + c), v(d * d + r * d + c));
    return x;
  };
  auto project_affine = [&](const Mat& x) {
    const RVec v = flatten(x);
    return hermitian_part(unflatten(v - pinv * (rows * v - b)));
  };

  const Mat c = hermitian_part(p.objective);
  Mat z = Mat::Identity(d, d) / static_cast<double>(d);
  Mat u = Mat::Zero(d, d);
  Mat x = z;
  OracleResult out;
  for (int it = 0; it < max_iter; ++it) {
    x = project_affine(z - u - c / rho);
    const Mat z_old = z;
    z = psd_projection(x + u);
    u += x - z;
    out.iterations = it + 1;
    const double primal = (x - z).norm();
    const double dual = rho * (z - z_old).norm();
    if (primal <= tol && dual <= tol) break;
  }
  out.X = z;
  out.value = (c * z).trace().real();
  out.residual = constraint_residual(p, z);
  return out;
}

}  // namespace fwtest
