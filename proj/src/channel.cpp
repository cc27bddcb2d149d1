#include "fermiwasser/channel.hpp"

#include <algorithm>
#include <cmath>

namespace fw {

Mat Channel::apply(const Mat& a) const {
  if (a.rows() != n_in || a.cols() != n_in) throw Error("Channel::apply: dimension mismatch");
  return unvec(S * vec(a), n_out, n_out);
}

Channel Channel::identity(int n) {
  return {n, n, Mat::Identity(n * n, n * n)};
}

Channel Channel::from_function(int n_in, int n_out, const std::function<Mat(const Mat&)>& f) {
  Channel e{n_in, n_out, Mat(n_out * n_out, n_in * n_in)};
  for (int p = 0; p < n_in; ++p)
    for (int q = 0; q < n_in; ++q) e.S.col(p * n_in + q) = vec(f(unit(n_in, p, q)));
  return e;
}

Channel Channel::conjugation(const Mat& u) {
  // vec(u† a u) = (u† ⊗ uᵀ) vec(a)
  return {static_cast<int>(u.rows()), static_cast<int>(u.cols()), kron(u.adjoint(), u.transpose())};
}

Channel Channel::from_kraus(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw Error("from_kraus: no Kraus operators");
  Channel e{static_cast<int>(kraus[0].rows()), static_cast<int>(kraus[0].cols()), Mat()};
  e.S = Mat::Zero(e.n_out * e.n_out, e.n_in * e.n_in);
  for (const Mat& v : kraus) e.S += kron(v.adjoint(), v.transpose());
  return e;
}

Channel Channel::product(const Mat& rho, int n_out) {
  const int n = static_cast<int>(rho.rows());
  return from_function(n, n_out, [&](const Mat& a) {
    return Mat((rho * a).trace() * Mat::Identity(n_out, n_out));
  });
}

Channel Channel::from_choi(const Mat& c, int n_in, int n_out) {
  if (c.rows() != n_in * n_out) throw Error("from_choi: dimension mismatch");
  Channel e{n_in, n_out, Mat(n_out * n_out, n_in * n_in)};
  for (int p = 0; p < n_in; ++p)
    for (int q = 0; q < n_in; ++q)
      for (int r = 0; r < n_out; ++r)
        for (int s = 0; s < n_out; ++s)
          e.S(r * n_out + s, p * n_in + q) = c(p * n_out + r, q * n_out + s);
  return e;
}

Mat choi(const Channel& e) {
  const int n = e.n_in, m = e.n_out;
  Mat c(n * m, n * m);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) c(p * m + r, q * m + s) = e.S(r * m + s, p * n + q);
  return c;
}

Channel compose(const Channel& f, const Channel& e) {
  if (f.n_in != e.n_out) throw Error("compose: dimension mismatch");
  return {e.n_in, f.n_out, f.S * e.S};
}

Channel operator+(const Channel& a, const Channel& b) {
  if (a.n_in != b.n_in || a.n_out != b.n_out) throw Error("Channel sum: dimension mismatch");
  return {a.n_in, a.n_out, a.S + b.S};
}

Channel operator*(double s, const Channel& a) {
  return {a.n_in, a.n_out, s * a.S};
}

double distance(const Channel& a, const Channel& b) {
  if (a.n_in != b.n_in || a.n_out != b.n_out) throw Error("Channel distance: dimension mismatch");
  return (a.S - b.S).norm();
}

Channel trace_adjoint(const Channel& e) {
  // With Tr(x y) = vec(xᵀ)ᵀ vec(y): vec(E†(b)ᵀ) = Sᵀ vec(bᵀ).
  return Channel::from_function(e.n_out, e.n_in, [&](const Mat& b) {
    const Mat bt = b.transpose();
    return Mat(unvec(e.S.transpose() * vec(bt), e.n_in, e.n_in).transpose());
  });
}

double unital_residual(const Channel& e) {
  return (e.apply(Mat::Identity(e.n_in, e.n_in)) - Mat::Identity(e.n_out, e.n_out)).norm();
}

double choi_min_eigenvalue(const Channel& e) { return min_eigenvalue(hermitian_part(choi(e))); }

bool is_completely_positive(const Channel& e, double tol_pd) {
  return hermiticity_defect(choi(e)) <= 1e-9 && choi_min_eigenvalue(e) >= -tol_pd;
}

double hermiticity_preservation_residual(const Channel& e) {
  double worst = 0.0;
  for (int p = 0; p < e.n_in; ++p)
    for (int q = 0; q < e.n_in; ++q) {
      const Mat a = unit(e.n_in, p, q);
      worst = std::max(worst, (e.apply(a.adjoint()) - e.apply(a).adjoint()).norm());
    }
  return worst;
}

double evenness_residual(const Channel& e, const Mat& u_in, const Mat& u_out) {
  const Channel g_in = Channel::conjugation(u_in.adjoint());
  const Channel g_out = Channel::conjugation(u_out.adjoint());
  return distance(compose(e, g_in), compose(g_out, e));
}

double compatibility_residual(const Channel& e, const Mat& rho_mu, const Mat& rho_nu) {
  double worst = 0.0;
  for (int p = 0; p < e.n_in; ++p)
    for (int q = 0; q < e.n_in; ++q) {
      const Mat a = unit(e.n_in, p, q);
      worst = std::max(worst, std::abs((rho_nu * e.apply(a)).trace() - (rho_mu * a).trace()));
    }
  return worst;
}

namespace {

double multiplicative_defect(const Channel& e, bool reversed) {
  double worst = 0.0;
  const int n = e.n_in;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const Mat a = unit(n, p, q), b = unit(n, r, s);
          const Mat prod = reversed ? Mat(e.apply(b) * e.apply(a)) : Mat(e.apply(a) * e.apply(b));
          worst = std::max(worst, (e.apply(a * b) - prod).norm());
        }
  return worst;
}

}  // namespace

double antimultiplicativity_residual(const Channel& e) { return multiplicative_defect(e, true); }

double multiplicativity_residual(const Channel& e) { return multiplicative_defect(e, false); }

double sampled_positivity(const Channel& e, std::mt19937_64& rng, int samples) {
  std::normal_distribution<double> nd;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    Mat v(e.n_in, e.n_in);
    for (int i = 0; i < e.n_in; ++i)
      for (int j = 0; j < e.n_in; ++j) v(i, j) = cplx(nd(rng), nd(rng));
    const Mat x = v * v.adjoint();
    worst = std::min(worst, min_eigenvalue(hermitian_part(e.apply(x))) / std::max(1.0, x.norm()));
  }
  return worst;
}

namespace {

void require_compatible(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                        const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  if (e.n_in != alg_a.n || e.n_out != alg_b.n) throw Error("dual: dimension mismatch");
  if (compatibility_residual(e, rho_mu, rho_nu) > 1e-9)
    throw Error("state compatibility violated");
}

// ⟨Λ, x Λ⟩ for every pair (left(a_i), embed(e_j)) laid out as a matrix.
Mat pairing(const StandardFormAlgebra& alg, const Vec& lam, const std::vector<Mat>& lefts,
            const std::function<Mat(const Mat&)>& embed) {
  const int n = alg.n;
  Mat out(static_cast<Eigen::Index>(lefts.size()), n * n);
  for (int k = 0; k < n * n; ++k) {
    const Vec y = embed(unit(n, k / n, k % n)) * lam;
    for (std::size_t i = 0; i < lefts.size(); ++i)
      out(static_cast<Eigen::Index>(i), k) = lam.dot(lefts[i] * y);
  }
  return out;
}

}  // namespace

Channel accardi_dual(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                     const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  require_compatible(e, alg_a, rho_mu, alg_b, rho_nu);
  const Vec lam_mu = state_vector(alg_a, rho_mu);
  const Vec lam_nu = state_vector(alg_b, rho_nu);

  std::vector<Mat> lefts_a, lefts_b;
  for (const Mat& a : alg_a.basis()) {
    lefts_a.push_back(alg_a.left(a));
    lefts_b.push_back(alg_b.left(e.apply(a)));
  }
  // G[i, k] = ⟨Λ_μ, a_i (1 ⊗ e_k) Λ_μ⟩, R[i, l] = ⟨Λ_ν, E(a_i) (1 ⊗ e_l) Λ_ν⟩.
  // The unknown superoperator S′ satisfies G S′ = R.
  const Mat g = pairing(alg_a, lam_mu, lefts_a, [&](const Mat& c) { return alg_a.right(c); });
  const Mat r = pairing(alg_b, lam_nu, lefts_b, [&](const Mat& c) { return alg_b.right(c); });
  Eigen::FullPivLU<Mat> lu(g);
  if (lu.rank() < g.rows()) throw Error("dual: singular defining relation");
  Channel dual{alg_b.n, alg_a.n, lu.solve(r)};
  if ((g * dual.S - r).norm() > 1e-8 * std::max(1.0, r.norm()))
    throw Error("dual: defining relation has no exact solution");
  return dual;
}

Channel kms_dual(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                 const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  const Channel dual = accardi_dual(e, alg_a, rho_mu, alg_b, rho_nu);
  return Channel::from_function(alg_b.n, alg_a.n, [&](const Mat& b) {
    const Mat in_commutant = alg_b.j(alg_b.left(b));
    const Mat image = alg_a.right(dual.apply(alg_b.from_right(in_commutant)));
    return alg_a.from_left(alg_a.j(image));
  });
}

Channel twisted_dual(const Channel& e, const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                     const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  if (evenness_residual(e, alg_a.u, alg_b.u) > 1e-9) throw Error("twisted_dual: map is not even");
  const Channel dual = accardi_dual(e, alg_a, rho_mu, alg_b, rho_nu);
  return Channel::from_function(alg_b.n, alg_a.n, [&](const Mat& c) {
    const Mat untwisted = alg_b.klein_map(alg_b.twisted(c), -1);
    const Mat image = alg_a.right(dual.apply(alg_b.from_right(untwisted)));
    return alg_a.from_twisted(alg_a.klein_map(image, +1));
  });
}

namespace {

// With `graded` set, the dual sits to the left of a and the pair picks up the
// supersign (−1)^{∂a∂b}: A and A^≀ supercommute rather than commute.
double relation_residual(const Channel& e, const Channel& e_dual,
                         const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                         const StandardFormAlgebra& alg_b, const Mat& rho_nu,
                         const std::function<Mat(const StandardFormAlgebra&, const Mat&)>& embed,
                         bool graded) {
  const Vec lam_mu = state_vector(alg_a, rho_mu);
  const Vec lam_nu = state_vector(alg_b, rho_nu);
  const Mat ub = alg_b.commutant_grading();
  double worst = 0.0;
  for (const Mat& a : alg_a.basis()) {
    const Mat ea = alg_b.left(e.apply(a));
    const Mat a_parts[2] = {0.5 * (a + alg_a.grade(a)), 0.5 * (a - alg_a.grade(a))};
    for (const Mat& c : alg_b.basis()) {
      const cplx rhs = lam_nu.dot(ea * (embed(alg_b, c) * lam_nu));
      cplx lhs = 0.0;
      if (!graded) {
        lhs = lam_mu.dot(alg_a.left(a) * (embed(alg_a, e_dual.apply(c)) * lam_mu));
      } else {
        const Mat c_parts[2] = {0.5 * (c + ub * c * ub.adjoint()), 0.5 * (c - ub * c * ub.adjoint())};
        for (int pa = 0; pa < 2; ++pa)
          for (int pc = 0; pc < 2; ++pc) {
            const Mat x = embed(alg_a, e_dual.apply(c_parts[pc]));
            const double sign = (pa && pc) ? -1.0 : 1.0;
            lhs += sign * lam_mu.dot(x * (alg_a.left(a_parts[pa]) * lam_mu));
          }
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace

double accardi_relation_residual(const Channel& e, const Channel& e_dual,
                                 const StandardFormAlgebra& alg_a, const Mat& rho_mu,
                                 const StandardFormAlgebra& alg_b, const Mat& rho_nu) {
  return relation_residual(e, e_dual, alg_a, rho_mu, alg_b, rho_nu,
                           [](const StandardFormAlgebra& alg, const Mat& c) { return alg.right(c); },
                           false);
}

TwistedRelationResiduals twisted_relation_residuals(const Channel& e, const Channel& e_twisted,
                                                    const StandardFormAlgebra& alg_a,
                                                    const Mat& rho_mu,
                                                    const StandardFormAlgebra& alg_b,
                                                    const Mat& rho_nu) {
  const auto embed = [](const StandardFormAlgebra& alg, const Mat& c) { return alg.twisted(c); };
  return {relation_residual(e, e_twisted, alg_a, rho_mu, alg_b, rho_nu, embed, false),
          relation_residual(e, e_twisted, alg_a, rho_mu, alg_b, rho_nu, embed, true)};
}

double compose_dual_check(const Channel& e, const Channel& f, const StandardFormAlgebra& alg_a,
                          const Mat& rho_a, const StandardFormAlgebra& alg_b, const Mat& rho_b,
                          const StandardFormAlgebra& alg_c, const Mat& rho_c) {
  const Channel fe = compose(f, e);
  const Channel lhs = twisted_dual(fe, alg_a, rho_a, alg_c, rho_c);
  const Channel rhs = compose(twisted_dual(e, alg_a, rho_a, alg_b, rho_b),
                              twisted_dual(f, alg_b, rho_b, alg_c, rho_c));
  return distance(lhs, rhs);
}

}  // namespace fw
