#include "fermiwasser/detailed_balance.hpp"

#include <algorithm>
#include <cmath>

namespace fw {

namespace {

Channel inverse(const Channel& e) {
  Channel out{e.n_out, e.n_in, e.S.inverse()};
  out.antimultiplicative = e.antimultiplicative;
  return out;
}

double star_residual(const Channel& e) {
  double worst = 0.0;
  for (int p = 0; p < e.n_in; ++p)
    for (int q = 0; q < e.n_in; ++q) {
      const Mat a = unit(e.n_in, p, q);
      worst = std::max(worst, (e.apply(a.adjoint()) - e.apply(a).adjoint()).norm());
    }
  return worst;
}

}  // namespace

CopyingMap make_copying_map(const StandardFormAlgebra& alg, const Mat& rho, const Mat& K, double tol) {
  const int n = alg.n;
  const int h = n * n;
  if (K.rows() != h || K.cols() != h) throw Error("copying map: K has the wrong size");
  if ((K.adjoint() * K - Mat::Identity(h, h)).norm() > tol) throw Error("copying map: K is not unitary");
  CopyingMap cm;
  cm.K = K;
  cm.kappa = Channel{n, n, Mat(h, h)};
  int col = 0;
  for (const Mat& e : alg.basis()) {
    const Mat y = K * alg.left(e) * K.adjoint();
    const Mat c = alg.from_twisted(y);
    if ((alg.twisted(c) - y).norm() > tol * (1.0 + y.norm())) throw Error("image not inside twisted commutant");
    cm.kappa.S.col(col++) = vec(c);
  }
  cm.homomorphism_residual = std::max(multiplicativity_residual(cm.kappa), star_residual(cm.kappa));
  cm.evenness_residual = evenness_residual(cm.kappa, alg.u, alg.commutant_grading());
  cm.kg_residual = (K * alg.g - alg.g * K).norm();
  cm.k_squared_residual = (K * K - alg.g).norm();
  cm.state_residual = (copied_density(cm, rho) - twisted_density(alg, rho)).norm();
  const Vec lam = state_vector(alg, rho);
  cm.vector_residual = (K * lam - lam).norm();
  cm.is_mu_copying = cm.state_residual <= tol && cm.k_squared_residual <= tol;
  return cm;
}

Mat flip_copying_unitary(const StandardFormAlgebra& alg, const Mat& w) {
  return alg.klein * swap_operator(alg.n, alg.n) * kron(w, w.conjugate());
}

Mat symmetric_phase_unitary(const Mat& rho, const RVec& phases) {
  if (rho.imag().norm() > 1e-12) throw Error("symmetric_phase_unitary: state is not real");
  Eigen::SelfAdjointEigenSolver<RMat> es(rho.real());
  const RMat v = es.eigenvectors();
  Mat d = Mat::Zero(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) d(i, i) = std::exp(I_unit * phases(i));
  return v.cast<cplx>() * d * v.transpose().cast<cplx>();
}

double ReversingOperation::max_residual() const {
  return std::max({involution, antimultiplicativity, star, invariance, evenness, unitality});
}

ReversingOperation reversing_from_copying(const CopyingMap& cm, const StandardFormAlgebra& alg, const Mat& rho) {
  if (!cm.is_mu_copying) throw Error("reversing operation needs a μ-copying map");
  ReversingOperation r;
  double leak = 0.0;
  r.theta = Channel::from_function(alg.n, alg.n, [&](const Mat& a) {
    const Mat x = alg.j(alg.klein_map(alg.twisted(cm.kappa.apply(a)), -1));
    const Mat t = alg.from_left(x);
    leak = std::max(leak, (alg.left(t) - x).norm());
    return t;
  });
  if (leak > 1e-9) throw Error("reversing operation does not map A into A");
  r.theta.antimultiplicative = true;
  r.involution = distance(compose(r.theta, r.theta), Channel::identity(alg.n));
  r.antimultiplicativity = antimultiplicativity_residual(r.theta);
  r.star = star_residual(r.theta);
  r.invariance = compatibility_residual(r.theta, rho, rho);
  r.evenness = evenness_residual(r.theta, alg.u, alg.u);
  r.unitality = unital_residual(r.theta);
  return r;
}

GradedSystem make_reversible_system(const StandardFormAlgebra& alg, const Mat& rho, std::vector<NamedMap> dynamics,
                                    std::vector<Mat> coords, const Mat& K) {
  CopyingMap cm = make_copying_map(alg, rho, K);
  const auto rev = reversing_from_copying(cm, alg, rho);
  if (rev.max_residual() > 1e-9) throw Error("reversing operation fails its invariants");
  dynamics.erase(std::remove_if(dynamics.begin(), dynamics.end(), [](const NamedMap& d) { return d.name == kThetaName; }),
                 dynamics.end());
  dynamics.push_back({kThetaName, rev.theta});
  return make_system(alg, rho, std::move(dynamics), std::move(coords), std::move(cm));
}

Channel reverse_channel(const Channel& e, const CopyingMap& cm_a, const StandardFormAlgebra& alg_a,
                        const Mat& rho_mu, const CopyingMap& cm_b, const StandardFormAlgebra& alg_b,
                        const Mat& rho_nu) {
  const Channel tw = twisted_dual(e, alg_a, rho_mu, alg_b, rho_nu);
  Channel out = compose(inverse(cm_a.kappa), compose(tw, cm_b.kappa));
  out.antimultiplicative = e.antimultiplicative;
  return out;
}

Channel reverse_channel_via_theta(const Channel& e, const Channel& theta_a, const StandardFormAlgebra& alg_a,
                                  const Mat& rho_mu, const Channel& theta_b, const StandardFormAlgebra& alg_b,
                                  const Mat& rho_nu) {
  const Channel s = kms_dual(e, alg_a, rho_mu, alg_b, rho_nu);
  Channel out = compose(theta_a, compose(s, theta_b));
  out.antimultiplicative = e.antimultiplicative;
  return out;
}

FdbReport check_fdb(const GradedSystem& sys, double tol) {
  if (!sys.reversible()) throw Error("check_fdb: system is not reversible");
  const CopyingMap& cm = *sys.copying;
  const Channel kinv = inverse(cm.kappa);
  FdbReport r;
  for (const auto& d : sys.dynamics) {
    const Channel copied = compose(cm.kappa, compose(d.map, kinv));
    const Channel tw = twisted_dual(d.map, sys.alg, sys.rho, sys.alg, sys.rho);
    r.copy_residual[d.name] = distance(copied, tw);
    const Channel rev = reverse_channel(d.map, cm, sys.alg, sys.rho, cm, sys.alg, sys.rho);
    r.reverse_residual[d.name] = distance(rev, d.map);
    r.max_residual = std::max({r.max_residual, r.copy_residual[d.name], r.reverse_residual[d.name]});
  }
  r.holds = r.max_residual <= tol;
  return r;
}

GradedSystem reverse_system(const GradedSystem& sys) {
  if (!sys.reversible()) throw Error("reverse_system: system is not reversible");
  const CopyingMap& cm = *sys.copying;
  std::vector<NamedMap> dyn;
  for (const auto& d : sys.dynamics)
    dyn.push_back({d.name, reverse_channel(d.map, cm, sys.alg, sys.rho, cm, sys.alg, sys.rho)});
  return make_system(sys.alg, sys.rho, std::move(dyn), sys.coords, sys.copying);
}

Mat twisted_standard_unitary(const StandardFormAlgebra& alg) {
  return swap_operator(alg.n, alg.n) * alg.klein.adjoint();
}

Mat from_double_twisted(const StandardFormAlgebra& alg, const Mat& c) { return alg.grade(c); }

GradedSystem copy_system(const GradedSystem& sys) {
  if (!sys.copying) throw Error("copy_system: no copying map");
  const CopyingMap& cm = *sys.copying;
  const Channel kinv = inverse(cm.kappa);
  const auto alg = canonical_standard_form(sys.n(), sys.alg.commutant_grading());
  const Mat rho = copied_density(cm, sys.rho);
  std::vector<NamedMap> dyn;
  for (const auto& d : sys.dynamics) {
    Channel m = compose(cm.kappa, compose(d.map, kinv));
    m.antimultiplicative = d.map.antimultiplicative;
    dyn.push_back({d.name, m});
  }
  std::vector<Mat> coords;
  for (const Mat& k : sys.coords) coords.push_back(cm.kappa.apply(k));
  const Mat v = twisted_standard_unitary(sys.alg);
  std::optional<CopyingMap> next;
  if (cm.is_mu_copying) next = make_copying_map(alg, rho, v * cm.K * v.adjoint());
  return make_system(alg, rho, std::move(dyn), std::move(coords), std::move(next));
}

DeviationReport fdb_deviation(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                              const WassersteinOptions& opts, double slack) {
  if (cls == WClass::F) throw Error("fdb_deviation: class must be Fsigma or Fsigmasigma");
  if (!check_fdb(sys_b).holds) throw Error("fdb_deviation: B does not satisfy fermionic detailed balance");
  const GradedSystem rev = reverse_system(sys_a);
  DeviationReport r;
  r.cls = cls;
  const auto a_rev = wasserstein(sys_a, rev, cls, opts);
  const auto rev_a = wasserstein(rev, sys_a, cls, opts);
  const auto a_b = wasserstein(sys_a, sys_b, cls, opts);
  const auto b_a = wasserstein(sys_b, sys_a, cls, opts);
  r.w_a_rev = a_rev.value;
  r.w_rev_a = rev_a.value;
  r.w_a_b = a_b.value;
  r.w_b_a = b_a.value;
  r.all_optimal = a_rev.optimal() && rev_a.optimal() && a_b.optimal() && b_a.optimal();
  r.forward_bound = r.w_a_rev <= 2.0 * r.w_a_b + slack;
  r.backward_bound = r.w_rev_a <= 2.0 * r.w_b_a + slack;
  return r;
}

}  // namespace fw
