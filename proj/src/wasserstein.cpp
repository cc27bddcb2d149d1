#include "fermiwasser/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fw {

std::string to_string(WClass c) {
  switch (c) {
    case WClass::F: return "F";
    case WClass::Fsigma: return "Fsigma";
    case WClass::Fsigmasigma: return "Fsigmasigma";
  }
  return "?";
}

WClass parse_class(const std::string& s) {
  if (s == "F") return WClass::F;
  if (s == "Fsigma") return WClass::Fsigma;
  if (s == "Fsigmasigma") return WClass::Fsigmasigma;
  throw Error("unknown distance class '" + s + "'");
}

namespace {

void require_cost_inputs(const GradedSystem& a, const GradedSystem& b, const TransportPlan& plan) {
  if (a.coords.size() != b.coords.size()) throw Error("cost: coordinate counts differ");
  if (plan.e.n_in != a.n() || plan.e.n_out != b.n()) throw Error("cost: plan does not match the systems");
  if ((plan.rho_mu - a.rho).norm() > 1e-9 || (plan.rho_nu - b.rho).norm() > 1e-9)
    throw Error("cost: plan marginals do not match the system states");
}

}  // namespace

CostReport cost(const GradedSystem& sys_a, const GradedSystem& sys_b, const TransportPlan& plan,
                bool with_norm_form) {
  require_cost_inputs(sys_a, sys_b, plan);
  CostReport r;
  const Mat& mu = sys_a.rho;
  const Mat& nu = sys_b.rho;
  for (std::size_t i = 0; i < sys_a.coords.size(); ++i) {
    const Mat& k = sys_a.coords[i];
    const Mat& l = sys_b.coords[i];
    const Mat ek = plan.e.apply(k);
    const cplx t = (mu * k.adjoint() * k).trace() + (nu * l.adjoint() * l).trace() -
                   (nu * ek.adjoint() * l).trace() - (nu * l.adjoint() * ek).trace();
    r.terms.push_back(t.real());
    r.value += t.real();
  }
  if (!with_norm_form) return r;

  const RawPlanTable raw = usual_table(plan);
  const auto g = gns_of_plan(raw, plan.alg_a, plan.alg_b);
  const int n = sys_a.n(), m = sys_b.n();
  const int m2 = m * m;
  const Vec lam = state_vector(plan.alg_b, nu);
  Mat frame(m2, m2);
  int j = 0;
  for (const Mat& c : plan.alg_b.basis()) frame.col(j++) = plan.alg_b.right(c) * lam;
  Eigen::FullPivLU<Mat> lu(frame);
  const Vec one_a = vec(Mat::Identity(n, n)), one_b = vec(Mat::Identity(m, m));
  for (std::size_t i = 0; i < sys_a.coords.size(); ++i) {
    // l′ ∈ B′ with l′Λ_ν = lΛ_ν, in commutant coordinates.
    const Vec lp = lu.solve(Vec(plan.alg_b.left(sys_b.coords[i]) * lam));
    const Vec vk = kron(vec(sys_a.coords[i]), one_b);
    const Vec vl = kron(one_a, lp);
    const Vec diff = vk - vl;
    r.norm_form += diff.dot(g.gram * diff).real();
  }
  r.norm_form_gap = std::abs(r.norm_form - r.value);
  return r;
}

namespace {

// Adds  S_E S_α − S_β S_E = 0  as complex constraints on the Choi matrix,
// where S_E[r·m+s, p·n+q] = C[p·m+r, q·m+s].
void add_intertwining(SdpProblem& p, int n, int m, const Mat& s_alpha, const Mat& s_beta) {
  const int d = n * m;
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s)
      for (int pp = 0; pp < n; ++pp)
        for (int qq = 0; qq < n; ++qq) {
          const int row = r * m + s, col = pp * n + qq;
          Mat w = Mat::Zero(d, d);
          for (int p1 = 0; p1 < n; ++p1)
            for (int q1 = 0; q1 < n; ++q1) w(p1 * m + r, q1 * m + s) += s_alpha(p1 * n + q1, col);
          for (int r1 = 0; r1 < m; ++r1)
            for (int s1 = 0; s1 < m; ++s1) w(pp * m + r1, qq * m + s1) -= s_beta(row, r1 * m + s1);
          if (w.norm() > 0.0) p.add_complex_constraint(w, 0.0);
        }
}

Mat commutator_superop(const Mat& h) {
  const Eigen::Index n = h.rows();
  const Mat id = Mat::Identity(n, n);
  return kron(h, id) - kron(id, h.transpose());
}

}  // namespace

TransportSdp transport_sdp(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                           const SdpOptions& opts) {
  require_matching(sys_a, sys_b);
  const GradedSystem a = with_grading_as_dynamics(sys_a);
  const GradedSystem b = with_grading_as_dynamics(sys_b);
  const int n = a.n(), m = b.n();
  const int d = n * m;
  TransportSdp t;
  SdpProblem& p = t.problem;
  p.dim = d;
  p.options = opts;

  // Unital: Σ_p C[p·m+r, p·m+s] = δ_rs.
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) {
      Mat w = Mat::Zero(d, d);
      for (int pp = 0; pp < n; ++pp) w(pp * m + r, pp * m + s) = 1.0;
      p.add_complex_constraint(w, r == s ? 1.0 : 0.0);
    }
  // ν(E(e_pq)) = μ(e_pq) = ρ_μ[q, p].
  for (int pp = 0; pp < n; ++pp)
    for (int qq = 0; qq < n; ++qq) {
      Mat w = Mat::Zero(d, d);
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) w(pp * m + r, qq * m + s) = b.rho(s, r);
      p.add_complex_constraint(w, a.rho(qq, pp));
    }
  for (const auto& dyn : a.dynamics) add_intertwining(p, n, m, dyn.map.S, b.find(dyn.name)->S);
  if (cls != WClass::F)
    add_intertwining(p, n, m, commutator_superop(logm_pd(a.rho)), commutator_superop(logm_pd(b.rho)));
  if (cls == WClass::Fsigmasigma) {
    for (const auto& dyn : a.dynamics) {
      const Channel as = kms_dual(dyn.map, a.alg, a.rho, a.alg, a.rho);
      const Channel bs = kms_dual(*b.find(dyn.name), b.alg, b.rho, b.alg, b.rho);
      add_intertwining(p, n, m, as.S, bs.S);
    }
  }

  // cost = Σ μ(k*k) + ν(l*l) − 2 Re Tr(ρ_ν E(k†) l), and
  // Tr(ρ_ν E(k†) l) = Σ W[p·m+r, q·m+s] C[p·m+r, q·m+s] with W = k† ⊗ (l ρ_ν)ᵀ.
  // Tr X = m on the feasible set, which carries the constant term.
  p.objective = Mat::Zero(d, d);
  double constant = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const Mat& k = a.coords[i];
    const Mat& l = b.coords[i];
    constant += ((a.rho * k.adjoint() * k).trace() + (b.rho * l.adjoint() * l).trace()).real();
    p.objective -= 2.0 * real_part_functional(kron(k.adjoint(), (l * b.rho).transpose()));
  }
  p.objective += (constant / m) * Mat::Identity(d, d);
  t.seed = kron(a.rho.transpose(), Mat::Identity(m, m));
  return t;
}

namespace {

WassersteinResult solve_class(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                              const WassersteinOptions& opts) {
  const TransportSdp t = transport_sdp(sys_a, sys_b, cls, opts.sdp);
  WassersteinResult r;
  r.cls = cls;
  r.solution = solve(t.problem, t.seed);
  const int n = sys_a.n(), m = sys_b.n();
  // Remove the last bit of infeasibility left by the interior-point method.
  const Mat x = affine_projection(t.problem, r.solution.X);
  const Channel e = Channel::from_choi(x, n, m);
  r.plan = plan_from_channel(e, sys_a.alg, sys_a.rho, sys_b.alg, sys_b.rho, {1e-8, 1e-8, 1e-8, 1e-8});
  r.squared = (t.problem.objective * x).trace().real();
  r.value = std::sqrt(std::max(0.0, r.squared));
  return r;
}

}  // namespace

WassersteinResult wasserstein(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                              const WassersteinOptions& opts) {
  WassersteinResult r = solve_class(sys_a, sys_b, cls, opts);
  r.chain.fill(std::numeric_limits<double>::quiet_NaN());
  const int top = static_cast<int>(cls);
  r.chain[top] = r.value;
  if (opts.check_chain) {
    for (int c = 0; c < top; ++c) r.chain[c] = solve_class(sys_a, sys_b, static_cast<WClass>(c), opts).value;
    for (int c = 0; c < top; ++c) r.chain_ok = r.chain_ok && r.chain[c] <= r.chain[c + 1] + opts.chain_tol;
  }
  return r;
}

double IsomorphismReport::max_residual() const {
  return std::max({multiplicativity, star, evenness, intertwining, coordinates});
}

IsomorphismReport extract_isomorphism(const GradedSystem& sys_a, const GradedSystem& sys_b,
                                      const TransportPlan& plan, double max_cost) {
  if (!is_hermitian(sys_a) || !is_hermitian(sys_b)) throw Error("extract_isomorphism: coordinates are not hermitian");
  if (!coordinates_generate(sys_a) || !coordinates_generate(sys_b))
    throw Error("extract_isomorphism: coordinates do not generate the algebra");
  if (sys_a.n() != sys_b.n()) throw Error("extract_isomorphism: algebras have different dimensions");
  const auto c = cost(sys_a, sys_b, plan, false);
  if (c.value > max_cost) throw Error("extract_isomorphism: plan has nonzero cost");
  IsomorphismReport r;
  r.iota = plan.e;
  r.multiplicativity = multiplicativity_residual(r.iota);
  for (const Mat& e : sys_a.alg.basis())
    r.star = std::max(r.star, (r.iota.apply(e.adjoint()) - r.iota.apply(e).adjoint()).norm());
  r.evenness = evenness_residual(r.iota, sys_a.alg.u, sys_b.alg.u);
  for (const auto& d : sys_a.dynamics)
    r.intertwining = std::max(r.intertwining, distance(compose(r.iota, d.map), compose(*sys_b.find(d.name), r.iota)));
  for (std::size_t i = 0; i < sys_a.coords.size(); ++i)
    r.coordinates = std::max(r.coordinates, (r.iota.apply(sys_a.coords[i]) - sys_b.coords[i]).norm());
  return r;
}

FaithfulnessReport faithfulness(const GradedSystem& sys_a, const GradedSystem& sys_b, WClass cls,
                                const WassersteinOptions& opts) {
  FaithfulnessReport r;
  r.forward = wasserstein(sys_a, sys_b, cls, opts);
  r.iso = extract_isomorphism(sys_a, sys_b, r.forward.plan);
  if (cls == WClass::F) {
    r.backward = wasserstein(sys_b, sys_a, cls, opts);
    r.iso_back = extract_isomorphism(sys_b, sys_a, r.backward->plan);
    r.round_trip = distance(compose(r.iso_back->iota, r.iso.iota), Channel::identity(sys_a.n()));
  }
  return r;
}

}  // namespace fw
