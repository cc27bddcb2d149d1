#include "fermiwasser/transport.hpp"

#include <algorithm>
#include <cmath>

namespace fw {

namespace {

Mat commutator_superop(const Mat& h) {
  const Eigen::Index n = h.rows();
  const Mat id = Mat::Identity(n, n);
  return kron(h, id) - kron(id, h.transpose());
}

// Superoperator of c ↦ u c u† on row-major vec.
Mat grading_superop(const Mat& u) { return kron(u, u.conjugate()); }

std::vector<int> unit_parities(const Mat& u) {
  const int n = static_cast<int>(u.rows());
  if ((u - Mat(u.diagonal().asDiagonal())).norm() > 1e-12)
    throw Error("GNS validation needs a diagonal grading unitary");
  std::vector<int> out(static_cast<std::size_t>(n * n));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) out[p * n + q] = (u(p, p).real() * u(q, q).real() < 0) ? 1 : 0;
  return out;
}

int parity_of(const Mat& x, const Mat& u) {
  const Mat gx = u * x * u.adjoint();
  if ((gx - x).norm() <= 1e-12 * (1 + x.norm())) return 0;
  if ((gx + x).norm() <= 1e-12 * (1 + x.norm())) return 1;
  throw Error("element is not homogeneous");
}

std::set<std::string> structural_tags(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                                      const StandardFormAlgebra& alg_b, const Mat& rho_nu, double tol) {
  std::set<std::string> tags{"plain"};
  const bool graded = evenness_residual(e, alg_a.u, alg_b.u) <= tol;
  if (graded) tags.insert("graded");
  if (modular_residual(e, rho_mu, rho_nu) <= tol) tags.insert("modular");
  if (graded && evenness_residual(alg_a, rho_mu) <= tol && evenness_residual(alg_b, rho_nu) <= tol)
    tags.insert("fermionic");
  return tags;
}

Channel inverse(const Channel& e) {
  Channel out{e.n_out, e.n_in, e.S.inverse()};
  out.antimultiplicative = e.antimultiplicative;
  return out;
}

}  // namespace

double modular_residual(const Channel& e, const Mat& rho_mu, const Mat& rho_nu) {
  const Mat dm = commutator_superop(logm_pd(rho_mu));
  const Mat dn = commutator_superop(logm_pd(rho_nu));
  return (e.S * dm - dn * e.S).norm();
}

TransportPlan plan_from_channel(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                                const StandardFormAlgebra& alg_b, const Mat& rho_nu, const PlanTolerances& tol) {
  if (e.n_in != alg_a.n || e.n_out != alg_b.n) throw Error("plan: dimension mismatch");
  check_state(rho_mu);
  check_state(rho_nu);
  if (unital_residual(e) > tol.unital) throw Error("plan: map is not unital");
  if (!is_completely_positive(e, tol.cp)) throw Error("plan: map is not completely positive");
  if (compatibility_residual(e, rho_mu, rho_nu) > tol.compat) throw Error("state compatibility violated");
  return {e, alg_a, alg_b, rho_mu, rho_nu, structural_tags(e, alg_a, rho_mu, alg_b, rho_nu, tol.tag)};
}

namespace {

Mat table_with(const TransportPlan& plan, const std::function<Mat(const Mat&)>& embed) {
  const int n = plan.alg_a.n, m = plan.alg_b.n;
  const Vec lam = state_vector(plan.alg_b, plan.rho_nu);
  Mat t(n * n, m * m);
  std::vector<Vec> right_vecs;
  for (const Mat& c : plan.alg_b.basis()) right_vecs.push_back(embed(c) * lam);
  int i = 0;
  for (const Mat& a : plan.alg_a.basis()) {
    const Vec left = plan.alg_b.left(plan.e.apply(a)).adjoint() * lam;
    for (int j = 0; j < m * m; ++j) t(i, j) = left.dot(right_vecs[j]);
    ++i;
  }
  return t;
}

}  // namespace

RawPlanTable usual_table(const TransportPlan& plan) {
  return {false, table_with(plan, [&](const Mat& c) { return plan.alg_b.right(c); })};
}

RawPlanTable fermionic_table(const TransportPlan& plan) {
  if (!plan.has("fermionic")) throw Error("plan is not fermionic");
  return {true, table_with(plan, [&](const Mat& c) { return plan.alg_b.twisted(c); })};
}

cplx table_eval(const RawPlanTable& raw, const Mat& a, const Mat& c) {
  return (vec(a).transpose() * raw.values * vec(c))(0, 0);
}

cplx usual_eval(const TransportPlan& plan, const Mat& a, const Mat& c) {
  const Vec lam = state_vector(plan.alg_b, plan.rho_nu);
  return lam.dot(plan.alg_b.left(plan.e.apply(a)) * plan.alg_b.right(c) * lam);
}

cplx fermionic_eval(const TransportPlan& plan, const Mat& a, const Mat& c) {
  if (!plan.has("fermionic")) throw Error("plan is not fermionic");
  const Vec lam = state_vector(plan.alg_b, plan.rho_nu);
  return lam.dot(plan.alg_b.left(plan.e.apply(a)) * plan.alg_b.twisted(c) * lam);
}

RawPlanTable to_fermionic(const RawPlanTable& usual, const StandardFormAlgebra& alg_b) {
  if (usual.fermionic) throw Error("to_fermionic: table is already fermionic");
  const Mat g = grading_superop(alg_b.commutant_grading());
  const Mat id = Mat::Identity(g.rows(), g.cols());
  const Mat m = 0.5 * (id + g) - I_unit * 0.5 * (id - g);
  return {true, usual.values * m};
}

RawPlanTable to_usual(const RawPlanTable& fermionic, const StandardFormAlgebra& alg_b) {
  if (!fermionic.fermionic) throw Error("to_usual: table is not fermionic");
  const Mat g = grading_superop(alg_b.commutant_grading());
  const Mat id = Mat::Identity(g.rows(), g.cols());
  const Mat m = 0.5 * (id + g) + I_unit * 0.5 * (id - g);
  return {false, fermionic.values * m};
}

Channel channel_from_raw(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                         const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  const int n = alg_a.n, m = alg_b.n;
  if (raw.values.rows() != n * n || raw.values.cols() != m * m) throw Error("not a transport plan");
  const RawPlanTable usual = raw.fermionic ? to_usual(raw, alg_b) : raw;
  const Vec lam = state_vector(alg_b, rho_nu);
  // T[i, j] = ⟨c_j† Λ_ν, E(e_i) Λ_ν⟩ since B′ commutes with E(e_i).
  Mat frame(m * m, m * m);
  int j = 0;
  for (const Mat& c : alg_b.basis()) frame.col(j++) = alg_b.right(c.adjoint()) * lam;
  Eigen::FullPivLU<Mat> lu(frame.adjoint());
  const Mat inv_half = powm_pd(rho_nu, -0.5);
  Channel e{n, m, Mat(m * m, n * n)};
  for (int i = 0; i < n * n; ++i) {
    const Vec w = lu.solve(Vec(usual.values.row(i).transpose()));
    // w = vec(E(e_i) ρ^{1/2})
    e.S.col(i) = vec(unvec(w, m, m) * inv_half);
  }
  const TransportPlan probe{e, alg_a, alg_b, rho_mu, rho_nu, {}};
  const double scale = std::max(1.0, usual.values.norm());
  if ((usual_table(probe).values - usual.values).norm() > 1e-8 * scale) throw Error("not a transport plan");
  try {
    plan_from_channel(e, alg_a, rho_mu, alg_b, rho_nu, {1e-8, 1e-8, 1e-8, 1e-8});
  } catch (const Error&) {
    throw Error("not a transport plan");
  }
  return e;
}

TransportPlan diagonal_plan(const StandardFormAlgebra& alg, const Mat& rho_nu, bool fermionic) {
  check_state(rho_nu);
  if (fermionic && evenness_residual(alg, rho_nu) > 1e-9) throw Error("diagonal plan: state is not even");
  TransportPlan p{Channel::identity(alg.n), alg, alg, rho_nu, rho_nu, {"plain", "graded", "modular", "kms"}};
  if (fermionic) p.tags.insert("fermionic");
  return p;
}

double BalanceReport::max_dynamics() const {
  double m = 0.0;
  for (const auto& [k, v] : dynamics) m = std::max(m, v);
  return m;
}

double BalanceReport::max_kms() const {
  double m = 0.0;
  for (const auto& [k, v] : kms) m = std::max(m, v);
  return m;
}

BalanceReport check_balance(const TransportPlan& plan, const GradedSystem& sys_a, const GradedSystem& sys_b) {
  require_matching(sys_a, sys_b);
  if (plan.e.n_in != sys_a.n() || plan.e.n_out != sys_b.n()) throw Error("check_balance: dimension mismatch");
  BalanceReport r;
  for (const auto& d : sys_a.dynamics) {
    const Channel& beta = *sys_b.find(d.name);
    r.dynamics[d.name] = distance(compose(plan.e, d.map), compose(beta, plan.e));
    const Channel a_sigma = kms_dual(d.map, sys_a.alg, sys_a.rho, sys_a.alg, sys_a.rho);
    const Channel b_sigma = kms_dual(beta, sys_b.alg, sys_b.rho, sys_b.alg, sys_b.rho);
    r.kms[d.name] = distance(compose(plan.e, a_sigma), compose(b_sigma, plan.e));
  }
  r.modular = modular_residual(plan.e, sys_a.rho, sys_b.rho);
  return r;
}

void update_tags(TransportPlan& plan, const BalanceReport& r, double tol) {
  if (r.max_kms() <= tol && r.max_dynamics() <= tol) plan.tags.insert("kms");
  else plan.tags.erase("kms");
  if (r.modular <= tol) plan.tags.insert("modular");
  else plan.tags.erase("modular");
}

namespace {

TransportPlan retag(const Channel& e, const StandardFormAlgebra& a, const Mat& rho_a, const StandardFormAlgebra& b,
                    const Mat& rho_b) {
  // Duals of channels are channels; the tolerances absorb the linear solves.
  return plan_from_channel(e, a, rho_a, b, rho_b, {1e-8, 1e-8, 1e-8, 1e-8});
}

}  // namespace

TransportPlan plan_dual(const TransportPlan& plan) {
  const Channel d = accardi_dual(plan.e, plan.alg_a, plan.rho_mu, plan.alg_b, plan.rho_nu);
  const auto a = canonical_standard_form(plan.alg_b.n, plan.alg_b.commutant_grading());
  const auto b = canonical_standard_form(plan.alg_a.n, plan.alg_a.commutant_grading());
  return retag(d, a, commutant_density(plan.alg_b, plan.rho_nu), b, commutant_density(plan.alg_a, plan.rho_mu));
}

TransportPlan plan_kms(const TransportPlan& plan) {
  const Channel d = kms_dual(plan.e, plan.alg_a, plan.rho_mu, plan.alg_b, plan.rho_nu);
  return retag(d, plan.alg_b, plan.rho_nu, plan.alg_a, plan.rho_mu);
}

TransportPlan plan_twisted(const TransportPlan& plan) {
  const Channel d = twisted_dual(plan.e, plan.alg_a, plan.rho_mu, plan.alg_b, plan.rho_nu);
  const auto a = canonical_standard_form(plan.alg_b.n, plan.alg_b.commutant_grading());
  const auto b = canonical_standard_form(plan.alg_a.n, plan.alg_a.commutant_grading());
  return retag(d, a, twisted_density(plan.alg_b, plan.rho_nu), b, twisted_density(plan.alg_a, plan.rho_mu));
}

Mat copied_density(const CopyingMap& cm, const Mat& rho) {
  // Tr(σ y) = Tr(ρ ϰ⁻¹(y)), so σ is the trace adjoint of ϰ⁻¹ applied to ρ.
  return hermitian_part(trace_adjoint(inverse(cm.kappa)).apply(rho));
}

TransportPlan plan_copy(const TransportPlan& plan, const CopyingMap& kappa_a, const CopyingMap& kappa_b) {
  const Channel e = compose(kappa_b.kappa, compose(plan.e, inverse(kappa_a.kappa)));
  const auto a = canonical_standard_form(plan.alg_a.n, plan.alg_a.commutant_grading());
  const auto b = canonical_standard_form(plan.alg_b.n, plan.alg_b.commutant_grading());
  return retag(e, a, copied_density(kappa_a, plan.rho_mu), b, copied_density(kappa_b, plan.rho_nu));
}

// GNS validation path.

namespace {

struct MonomialData {
  int n2 = 0, m2 = 0;
  std::vector<int> pa, pb;
};

MonomialData monomials(const RawPlanTable& raw, const StandardFormAlgebra& alg_a,
                       const StandardFormAlgebra& alg_b) {
  MonomialData md;
  md.n2 = alg_a.n * alg_a.n;
  md.m2 = alg_b.n * alg_b.n;
  if (raw.values.rows() != md.n2 || raw.values.cols() != md.m2) throw Error("GNS: table has the wrong size");
  md.pa = unit_parities(alg_a.u);
  md.pb = raw.fermionic ? unit_parities(alg_b.commutant_grading()) : std::vector<int>(md.m2, 0);
  if (!raw.fermionic) md.pa.assign(md.n2, 0);
  return md;
}

}  // namespace

GnsReport gns_of_plan(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const StandardFormAlgebra& alg_b,
                      double tol_pd) {
  const auto md = monomials(raw, alg_a, alg_b);
  const int dim = md.n2 * md.m2;
  const auto ua = alg_a.basis();
  const auto ub = alg_b.basis();
  GnsReport g;
  g.gram = Mat(dim, dim);
  // ⟨x_i ⊗ y_j, x_k ⊗ y_l⟩ = ω((x_i ⊗ y_j)*(x_k ⊗ y_l))
  //                       = (−1)^{∂y_j(∂x_i + ∂x_k)} ω(x_i* x_k ⊗ y_j* y_l)
  for (int i = 0; i < md.n2; ++i)
    for (int k = 0; k < md.n2; ++k) {
      const Mat xa = ua[i].adjoint() * ua[k];
      const Vec va = vec(xa);
      for (int j = 0; j < md.m2; ++j)
        for (int l = 0; l < md.m2; ++l) {
          const Mat yb = ub[j].adjoint() * ub[l];
          const double sign = (md.pb[j] * (md.pa[i] + md.pa[k])) % 2 ? -1.0 : 1.0;
          g.gram(i * md.m2 + j, k * md.m2 + l) = sign * (va.transpose() * raw.values * vec(yb))(0, 0);
        }
    }
  if (hermiticity_defect(g.gram) > 1e-9 * std::max(1.0, g.gram.norm())) throw Error("not a state");
  const auto e = herm_eig(hermitian_part(g.gram), 1e-8);
  g.min_eigenvalue = e.values(0);
  if (g.min_eigenvalue < -tol_pd) throw Error("not a state");
  const double thresh = std::max(tol_pd, 1e-10 * std::max(1.0, e.values(dim - 1)));
  std::vector<int> keep;
  for (int i = 0; i < dim; ++i)
    if (e.values(i) > thresh) keep.push_back(i);
  g.dim = static_cast<int>(keep.size());
  g.basis = Mat(dim, g.dim);
  for (int c = 0; c < g.dim; ++c) g.basis.col(c) = e.vectors.col(keep[c]) / std::sqrt(e.values(keep[c]));
  g.h = Mat::Zero(dim, dim);
  for (int i = 0; i < md.n2; ++i)
    for (int j = 0; j < md.m2; ++j) g.h(i * md.m2 + j, i * md.m2 + j) = ((md.pa[i] + md.pb[j]) % 2) ? -1.0 : 1.0;
  const Mat hg = gns_operator(g, g.h);
  g.h_squared_residual = (hg * hg - Mat::Identity(g.dim, g.dim)).norm();
  return g;
}

Mat gns_left(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const StandardFormAlgebra& alg_b,
             const Mat& a) {
  (void)raw;
  const int n = alg_a.n, m = alg_b.n;
  return kron(kron(a, Mat::Identity(n, n)), Mat::Identity(m * m, m * m));
}

Mat gns_right(const RawPlanTable& raw, const StandardFormAlgebra& alg_a, const StandardFormAlgebra& alg_b,
              const Mat& c) {
  const auto md = monomials(raw, alg_a, alg_b);
  const int m = alg_b.n;
  const int pc = raw.fermionic ? parity_of(c, alg_b.commutant_grading()) : 0;
  Mat signs = Mat::Zero(md.n2, md.n2);
  for (int k = 0; k < md.n2; ++k) signs(k, k) = (pc != 0 && md.pa[k] != 0) ? -1.0 : 1.0;
  return kron(signs, kron(c, Mat::Identity(m, m)));
}

Mat gns_operator(const GnsReport& g, const Mat& x) { return g.basis.adjoint() * g.gram * x * g.basis; }

double gns_lemma_residual(const RawPlanTable& fermionic, const StandardFormAlgebra& alg_a,
                          const StandardFormAlgebra& alg_b, const GnsReport& g) {
  if (!fermionic.fermionic) throw Error("gns_lemma_residual: table is not fermionic");
  const Eigen::Index dim = g.h.rows();
  Mat h_half = Mat::Zero(dim, dim), h_half_inv = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const bool even = g.h(i, i).real() > 0;
    h_half(i, i) = even ? cplx(1.0) : -I_unit;
    h_half_inv(i, i) = even ? cplx(1.0) : I_unit;
  }
  double worst = 0.0;
  for (const Mat& a : alg_a.basis()) {
    const Mat pa = gns_left(fermionic, alg_a, alg_b, a);
    for (const Mat& c : alg_b.basis()) {
      const Mat pc = gns_right(fermionic, alg_a, alg_b, c);
      for (int s : {+1, -1}) {
        const Mat eta = s > 0 ? Mat(h_half * pc * h_half_inv) : Mat(h_half_inv * pc * h_half);
        worst = std::max(worst, opnorm(gns_operator(g, pa * eta - eta * pa)));
      }
    }
  }
  return worst;
}

Channel gns_extract_channel(const RawPlanTable& usual, const StandardFormAlgebra& alg_a,
                            const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  if (usual.fermionic) throw Error("gns_extract_channel: expects a usual table");
  const auto g = gns_of_plan(usual, alg_a, alg_b);
  const int n = alg_a.n, m = alg_b.n;
  const int n2 = n * n, m2 = m * m;
  // Coefficient vectors of the monomials 1 ⊙ c_l.
  const Vec one = vec(Mat::Identity(n, n));
  Mat v = Mat::Zero(n2 * m2, m2);
  for (int l = 0; l < m2; ++l)
    for (int i = 0; i < n2; ++i) v(i * m2 + l, l) = one(i);
  const Vec lam = state_vector(alg_b, rho_nu);
  Mat frame(m2, m2);
  int l = 0;
  for (const Mat& c : alg_b.basis()) frame.col(l++) = alg_b.right(c) * lam;
  Eigen::FullPivLU<Mat> lu_frame_adj(frame.adjoint());
  return Channel::from_function(n, m, [&](const Mat& a) {
    const Mat q = v.adjoint() * g.gram * gns_left(usual, alg_a, alg_b, a) * v;
    // q = F† L F with F the frame, so L = F^{-†} q F^{-1}.
    const Mat x = lu_frame_adj.solve(q);
    const Mat big = lu_frame_adj.solve(x.adjoint()).adjoint();
    return alg_b.from_left(big);
  });
}

}  // namespace fw
