#include "fermiwasser/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/float128.hpp>

using Quad = boost::multiprecision::float128;

// boost/multiprecision/eigen.hpp predates the infinity() and quiet_NaN()
// members this Eigen asks for, so the traits are spelled out here.
template <>
struct Eigen::NumTraits<Quad> : Eigen::GenericNumTraits<Quad> {
  using Real = Quad;
  using NonInteger = Quad;
  using Literal = Quad;
  using Nested = Quad;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 4, MulCost = 8 };
  static Quad epsilon() { return std::numeric_limits<Quad>::epsilon(); }
  static Quad dummy_precision() { return 1000 * epsilon(); }
  static Quad highest() { return std::numeric_limits<Quad>::max(); }
  static Quad lowest() { return std::numeric_limits<Quad>::lowest(); }
  static Quad infinity() { return std::numeric_limits<Quad>::infinity(); }
  static Quad quiet_NaN() { return std::numeric_limits<Quad>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Quad>::digits10; }
};

namespace fw {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Orthonormal real coordinates on Hermitian d×d matrices (the "hvec" basis):
// e_ii, (e_ij + e_ji)/√2 and i(e_ij − e_ji)/√2 for i < j, so that
// Re Tr(A X) = hvec(A) · hvec(X).
RVec hvec(const Mat& a) {
  const int d = static_cast<int>(a.rows());
  RVec v(d * d);
  int t = 0;
  for (int i = 0; i < d; ++i) v(t++) = a(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      v(t++) = kSqrt2 * a(i, j).real();
      v(t++) = kSqrt2 * a(i, j).imag();
    }
  return v;
}

Mat unhvec(const RVec& v, int d) {
  Mat a = Mat::Zero(d, d);
  int t = 0;
  for (int i = 0; i < d; ++i) a(i, i) = v(t++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = v(t++) / kSqrt2;
      const double im = v(t++) / kSqrt2;
      a(i, j) = cplx(re, im);
      a(j, i) = cplx(re, -im);
    }
  return a;
}

RMat embed(const Mat& x) {
  const Eigen::Index d = x.rows();
  RMat y(2 * d, 2 * d);
  y.topLeftCorner(d, d) = x.real();
  y.topRightCorner(d, d) = -x.imag();
  y.bottomLeftCorner(d, d) = x.imag();
  y.bottomRightCorner(d, d) = x.real();
  return y;
}

Mat unembed(const RMat& y) {
  const Eigen::Index d = y.rows() / 2;
  const RMat re = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
  const RMat im = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
  Mat x(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = cplx(re(i, j), im(i, j));
  return hermitian_part(x);
}

template <typename M>
typename M::Scalar inner(const M& a, const M& b) {
  return a.cwiseProduct(b).sum();
}

template <typename M>
M sym(const M& a) {
  return (a + a.transpose()) / 2;
}

// Largest α ≤ 1 with y + α dy ⪰ 0 scaled by tau, for y ≻ 0.
template <typename M>
typename M::Scalar step_length(const M& y, const M& dy, typename M::Scalar tau) {
  Eigen::LLT<M> llt(y);
  const M l_inv = llt.matrixL().solve(M::Identity(y.rows(), y.cols()));
  const M s = sym(M(l_inv * dy * l_inv.transpose()));
  Eigen::SelfAdjointEigenSolver<M> es(s, Eigen::EigenvaluesOnly);
  const auto lmin = es.eigenvalues()(0);
  if (lmin >= 0) return 1;
  return std::min<typename M::Scalar>(1, -tau / lmin);
}

bool is_pd(const RMat& y) {
  Eigen::LLT<RMat> llt(y);
  return llt.info() == Eigen::Success;
}

struct Reduced {
  bool consistent = true;
  std::vector<RMat> a;  // embedded, orthonormal
  RVec b;
};

// Rank-revealing reduction of the constraint rows in hvec coordinates,
// followed by the real embedding.
Reduced reduce(const SdpProblem& p) {
  const int d = p.dim;
  const int k = static_cast<int>(p.a.size());
  Reduced out;
  if (k == 0) {
    out.b = RVec(0);
    return out;
  }
  RMat rows(k, d * d);
  RVec b(k);
  for (int i = 0; i < k; ++i) {
    rows.row(i) = hvec(p.a[i]).transpose();
    b(i) = p.b[i];
  }
  Eigen::BDCSVD<RMat> svd(rows, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  int r = 0;
  const double smax = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > p.options.rank_rel * smax) ++r;
  const RMat u = svd.matrixU().leftCols(r);
  const RMat v = svd.matrixV().leftCols(r);
  const RVec ub = u.transpose() * b;
  const double off = (b - u * ub).norm();
  if (off > p.options.tol_feas * (1.0 + b.norm())) out.consistent = false;
  out.b = RVec(r);
  for (int i = 0; i < r; ++i) {
    out.a.push_back(embed(unhvec(v.col(i), d)) / kSqrt2);
    out.b(i) = kSqrt2 * ub(i) / sv(i);
  }
  return out;
}

}  // namespace

void SdpProblem::add_constraint(const Mat& a_k, double b_k) {
  if (a_k.rows() != dim || a_k.cols() != dim) throw Error("SdpProblem: constraint has the wrong size");
  a.push_back(hermitian_part(a_k));
  b.push_back(b_k);
}

Mat real_part_functional(const Mat& w) {
  // Re Σ w_ij X_ij = Re Tr(wᵀ X); for Hermitian X only the Hermitian part of
  // wᵀ contributes.
  return hermitian_part(w.transpose());
}

void SdpProblem::add_complex_constraint(const Mat& w, cplx beta) {
  add_constraint(real_part_functional(w), beta.real());
  // Im f(X) = Re f(−i X)
  add_constraint(real_part_functional(Mat(-I_unit * w)), beta.imag());
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

double constraint_residual(const SdpProblem& p, const Mat& x) {
  double worst = 0.0;
  for (std::size_t k = 0; k < p.a.size(); ++k)
    worst = std::max(worst, std::abs((p.a[k] * x).trace().real() - p.b[k]));
  return worst;
}

namespace {

// Mehrotra predictor-corrector with HKM directions in scalar type S. Extended
// precision pushes the attainable barrier parameter well below what doubles
// allow, which matters because distances are square roots of SDP values.
struct IpmResult {
  RMat y;
  double dobj = 0.0, rel_d = 0.0, merit = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

template <typename S>
IpmResult ipm(const std::vector<RMat>& as_d, const RVec& b_d, const RMat& c_d, const RMat& y0,
                 const SdpOptions& opt) {
  using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using V = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  const int r = static_cast<int>(as_d.size());
  const int nn = static_cast<int>(c_d.rows());
  std::vector<M> as;
  for (const RMat& a : as_d) as.push_back(a.cast<S>());
  const V b = b_d.cast<S>();
  const M c = c_d.cast<S>();

  auto op_a = [&](const M& y) {
    V out(r);
    for (int i = 0; i < r; ++i) out(i) = inner(as[i], y);
    return out;
  };
  auto op_at = [&](const V& y) {
    M out = M::Zero(nn, nn);
    for (int i = 0; i < r; ++i) out += y(i) * as[i];
    return out;
  };

  M y_mat = y0.cast<S>();
  M z = std::max<S>(1, c.norm()) * M::Identity(nn, nn);
  V yv = V::Zero(r);
  const S b_norm = b.norm();
  const S tau = S(0.98);

  // Best iterate by a merit that is ≤ 1 exactly when the stopping test holds.
  IpmResult best;
  int since_best = 0;
  int it = 0;
  for (;; ++it) {
    const V rp = b - op_a(y_mat);
    const M rd = c - op_at(yv) - z;
    const S pobj = inner(c, y_mat);
    const S dobj = b.dot(yv);
    const double rel_p = static_cast<double>(rp.norm() / (1 + b_norm));
    const double rel_d = static_cast<double>(rd.norm() / (1 + c.norm()));
    const S mu = inner(y_mat, z) / nn;
    const double gap = std::abs(static_cast<double>(pobj - dobj));
    const double gap_tol = opt.tol_gap + opt.tol_gap_rel * std::abs(static_cast<double>(pobj));
    const double merit = std::max({rel_p / opt.tol_feas, rel_d / opt.tol_feas,
                                   std::max(gap, static_cast<double>(mu * nn)) / gap_tol});
    if (merit < best.merit) {
      best.merit = merit;
      best.y = y_mat.template cast<double>();
      best.dobj = static_cast<double>(dobj);
      best.rel_d = rel_d;
      since_best = 0;
    } else {
      ++since_best;
    }
    best.iterations = it;
    if (merit <= 1.0) break;
    // Stalled at the floor of the working precision.
    if (it >= opt.max_iter || since_best >= 5) break;

    Eigen::LLT<M> zllt(z);
    Eigen::LLT<M> yllt(y_mat);
    if (zllt.info() != Eigen::Success || yllt.info() != Eigen::Success) break;
    const M z_inv = sym(M(zllt.solve(M::Identity(nn, nn))));

    // The Schur complement M_ij = Tr(A_i Y A_j Z⁻¹) equals ⟨G_i, G_j⟩ with
    // G_i = L_Yᵀ A_i L_Z⁻ᵀ. Its condition number grows like μ⁻², so it is
    // never formed: M = BᵀB with B = [vec G_i] and B = QR, leaving only
    // cond(R) ~ μ⁻¹ in the solves.
    const M ly_t = yllt.matrixU();
    const M lz_inv_t = zllt.matrixU().solve(M::Identity(nn, nn));
    M bmat(nn * nn, r);
    for (int i = 0; i < r; ++i) {
      const M gi = ly_t * as[i] * lz_inv_t;
      bmat.col(i) = Eigen::Map<const V>(gi.data(), nn * nn);
    }
    const Eigen::HouseholderQR<M> qr(bmat);
    const M rfac = qr.matrixQR().topRows(r).template triangularView<Eigen::Upper>();
    auto schur_solve = [&](const V& rhs) -> V {
      const V w = rfac.transpose().template triangularView<Eigen::Lower>().solve(rhs);
      return rfac.template triangularView<Eigen::Upper>().solve(w);
    };

    auto direction = [&](const M& rc, M& dy_mat, V& dyv, M& dz) {
      // rc is the complementarity target: ΔY + Y ΔZ Z⁻¹ = rc.
      const V rhs = rp - op_a(M(rc - y_mat * rd * z_inv));
      dyv = schur_solve(rhs);
      dz = rd - op_at(dyv);
      dy_mat = sym(M(rc - y_mat * dz * z_inv));
      // Iterative refinement on A(ΔY) = r_p. A correction δ of Δy moves
      // ΔZ by −Aᵀδ and ΔY by Y Aᵀδ Z⁻¹, so the other two equations stay
      // exact; a plain projection of ΔY would not, and near the optimum it
      // shifts ⟨ΔY, Z⟩ by as much as μ itself.
      for (int pass = 0; pass < 3; ++pass) {
        const V defect = rp - op_a(dy_mat);
        if (defect.norm() <= std::numeric_limits<S>::epsilon() * (1 + rp.norm())) break;
        const V delta = schur_solve(defect);
        const M at_delta = op_at(delta);
        dyv += delta;
        dz -= at_delta;
        dy_mat += sym(M(y_mat * at_delta * z_inv));
      }
      // Whatever refinement could not remove is projected away.
      dy_mat += op_at(V(rp - op_a(dy_mat)));
    };

    // Predictor.
    M dy_a, dz_a;
    V dyv_a;
    direction(-y_mat, dy_a, dyv_a, dz_a);
    const S ap = step_length(y_mat, dy_a, S(1));
    const S ad = step_length(z, dz_a, S(1));
    const S mu_aff = inner(M(y_mat + ap * dy_a), M(z + ad * dz_a)) / nn;
    const S ratio = std::max<S>(0, mu_aff) / mu;
    S sigma = ratio * ratio * ratio;
    sigma = std::clamp<S>(sigma, 0, 1);

    // Corrector.
    M dy_mat, dz;
    V dyv;
    direction(M(sigma * mu * z_inv - y_mat - dy_a * dz_a * z_inv), dy_mat, dyv, dz);
    const S sp = step_length(y_mat, dy_mat, tau);
    const S sd = step_length(z, dz, tau);
    y_mat = sym(M(y_mat + sp * dy_mat));
    yv += sd * dyv;
    z = sym(M(z + sd * dz));
  }
  return best;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const std::optional<Mat>& seed) {
  const int d = p.dim;
  const int nn = 2 * d;
  if (p.objective.rows() != d || p.objective.cols() != d) throw Error("SdpProblem: objective has the wrong size");
  SdpSolution sol;
  const Reduced red = reduce(p);
  sol.reduced_constraints = static_cast<int>(red.a.size());
  if (!red.consistent) {
    sol.status = SdpStatus::infeasible;
    sol.X = Mat::Zero(d, d);
    sol.primal_residual = std::numeric_limits<double>::infinity();
    return sol;
  }
  const int r = static_cast<int>(red.a.size());
  const RMat c = embed(hermitian_part(p.objective)) / 2.0;
  RMat y0;
  if (seed) {
    y0 = embed(hermitian_part(*seed));
    if (!is_pd(y0)) throw Error("sdp solve: seed is not positive definite");
  } else {
    double xi = std::sqrt(static_cast<double>(nn));
    for (int i = 0; i < r; ++i) xi = std::max(xi, (1.0 + std::abs(red.b(i))) / (1.0 + red.a[i].norm()));
    y0 = xi * RMat::Identity(nn, nn);
  }
  auto res = ipm<long double>(red.a, red.b, c, y0, p.options);
  // Degenerate problems (optimal value 0 on a low-rank face) can stall with
  // μ around 1e-13, where the long double Newton system has no correct
  // digits left. Those get a second run in quad precision.
  if (res.merit > 1.0) {
    auto quad = ipm<Quad>(red.a, red.b, c, y0, p.options);
    if (quad.merit < res.merit) res = std::move(quad);
  }
  sol.iterations = res.iterations;
  sol.X = unembed(res.y);
  sol.value = (p.objective * sol.X).trace().real();
  sol.dual_value = res.dobj;
  sol.primal_residual = constraint_residual(p, sol.X);
  sol.dual_residual = res.rel_d;
  sol.min_eigenvalue = min_eigenvalue(sol.X);
  sol.dual_gap = std::abs(sol.value - sol.dual_value);
  double b_inf = 0.0;
  for (double bk : p.b) b_inf = std::max(b_inf, std::abs(bk));
  const bool feasible =
      sol.primal_residual <= p.options.tol_feas * (1.0 + b_inf) && sol.min_eigenvalue >= -p.options.tol_pd;
  sol.status = feasible && res.merit <= 1.0 ? SdpStatus::optimal : SdpStatus::max_iter;
  return sol;
}


Mat affine_projection(const SdpProblem& p, const Mat& x) {
  const int k = static_cast<int>(p.a.size());
  if (k == 0) return hermitian_part(x);
  RMat rows(k, p.dim * p.dim);
  RVec b(k);
  for (int i = 0; i < k; ++i) {
    rows.row(i) = hvec(p.a[i]).transpose();
    b(i) = p.b[i];
  }
  const RVec v = hvec(hermitian_part(x));
  const Eigen::CompleteOrthogonalDecomposition<RMat> cod(rows);
  return unhvec(v - cod.solve(RVec(rows * v - b)), p.dim);
}

FeasiblePoint feasible_point(const SdpProblem& p, const std::optional<Mat>& seed) {
  FeasiblePoint fp;
  if (seed) {
    fp.X = hermitian_part(*seed);
    fp.residual = constraint_residual(p, fp.X);
    fp.min_eigenvalue = min_eigenvalue(fp.X);
    fp.feasible = fp.residual <= p.options.tol_feas && fp.min_eigenvalue > 0.0;
    return fp;
  }
  // Phase one with a zero objective: the iterates follow the central path
  // towards the analytic centre, so the result is interior when the feasible
  // set has an interior.
  SdpProblem phase = p;
  phase.objective = Mat::Zero(p.dim, p.dim);
  const SdpSolution s = solve(phase);
  fp.X = s.X;
  fp.residual = s.primal_residual;
  fp.min_eigenvalue = s.min_eigenvalue;
  fp.feasible = s.status == SdpStatus::optimal;
  return fp;
}

}  // namespace fw
