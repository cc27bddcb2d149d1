#include "fermiwasser/car_lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace fw {

namespace {

Mat pauli_z() { return Mat(Eigen::Vector2cd(1.0, -1.0).asDiagonal()); }

// |0⟩⟨1|: empty ← occupied
Mat lowering() {
  Mat s = Mat::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

Mat kron_all(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const Mat& f : factors) out = kron(out, f);
  return out;
}

Mat parity_operator(int modes) { return kron_all(std::vector<Mat>(modes, pauli_z())); }

double anticommutator_defect(const Mat& x, const Mat& y, const Mat& expected) {
  return (x * y + y * x - expected).norm();
}

std::vector<Mat> monomials(const FockFrame& f, int first) {
  std::vector<Mat> out{Mat::Identity(f.dim, f.dim)};
  for (int l = first; l < first + f.k; ++l) {
    const Mat& a = f.a[l];
    const Mat ad = a.adjoint();
    const std::vector<Mat> choices{Mat::Identity(f.dim, f.dim), a, ad, ad * a};
    std::vector<Mat> next;
    for (const Mat& m : out)
      for (const Mat& c : choices) next.push_back(m * c);
    out = std::move(next);
  }
  return out;
}

}  // namespace

void check_lattice_config(const LatticeConfig& cfg) {
  if (cfg.k < 1 || cfg.k > 3) throw Error("lattice: k must be 1, 2 or 3");
  const std::size_t count = std::size_t{1} << cfg.k;
  if (cfg.probabilities.size() != count) throw Error("lattice: need 2^k probabilities");
  double sum = 0.0;
  for (double p : cfg.probabilities) {
    if (!(p > 0.0)) throw Error("lattice: probabilities must be strictly positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error("lattice: probabilities must sum to 1");
}

Vec FockFrame::basis_vector(const std::vector<int>& modes) const {
  Eigen::Index idx = 0;
  for (int m : modes) idx |= Eigen::Index{1} << (2 * k - 1 - m);
  Vec v = Vec::Zero(dim);
  v(idx) = 1.0;
  return v;
}

Mat FockFrame::m_coordinates(const Mat& x) const {
  const int n = 1 << k;
  return partial_trace_second(x, n, n) / static_cast<double>(n);
}

FockFrame build_frame(const LatticeConfig& cfg) {
  check_lattice_config(cfg);
  FockFrame f;
  f.cfg = cfg;
  f.k = cfg.k;
  const int modes = 2 * cfg.k;
  const int n = 1 << cfg.k;
  f.dim = n * n;
  for (int l = 0; l < modes; ++l) {
    std::vector<Mat> factors(modes, Mat::Identity(2, 2));
    for (int j = 0; j < l; ++j) factors[j] = pauli_z();
    factors[l] = lowering();
    f.a.push_back(kron_all(factors));
  }
  f.g = parity_operator(modes);
  f.u = parity_operator(cfg.k);
  f.rho_m = Mat::Zero(n, n);
  f.lambda = Vec::Zero(f.dim);
  for (int s = 0; s < n; ++s) {
    f.rho_m(s, s) = cfg.probabilities[s];
    // sι(s) is already increasing, so f_{sι(s)} = e_s ⊗ e_s
    f.lambda(s * n + s) = std::sqrt(cfg.probabilities[s]);
  }
  f.K = copying_unitary(f);
  return f;
}

Mat copying_unitary(const FockFrame& frame) {
  const int n = 1 << frame.k;
  Mat K = Mat::Zero(frame.dim, frame.dim);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int ls = std::popcount(static_cast<unsigned>(s));
      const int lt = std::popcount(static_cast<unsigned>(t));
      K(t * n + s, s * n + t) = ((ls + 1) * lt) % 2 == 0 ? 1.0 : -1.0;
    }
  return K;
}

std::vector<Mat> m_monomials(const FockFrame& frame) { return monomials(frame, 0); }
std::vector<Mat> complement_monomials(const FockFrame& frame) { return monomials(frame, frame.k); }

bool LatticeReport::passes() const {
  const int dim = 1 << (2 * k);
  return car <= 1e-12 && parity <= 1e-12 && state <= 1e-10 && cyclic_rank == dim && separating_rank == dim &&
         twisted_angle <= 1e-8 && trivial_angle > 1e-3 && k_unitary <= 1e-12 && k_lambda <= 1e-12 &&
         k_squared <= 1e-12 && kg <= 1e-12 && kj_twisted <= 1e-9 && kappa <= 1e-9 && copy_state <= 1e-9 && theta <= 1e-9;
}

LatticeReport verify_lattice_standard_form(const FockFrame& f) {
  LatticeReport r;
  r.k = f.k;
  const Mat id = Mat::Identity(f.dim, f.dim);
  const Mat zero = Mat::Zero(f.dim, f.dim);
  const int modes = 2 * f.k;
  for (int l = 0; l < modes; ++l) {
    for (int m = 0; m < modes; ++m) {
      r.car = std::max(r.car, anticommutator_defect(f.a[l], f.a[m].adjoint(), l == m ? id : zero));
      r.car = std::max(r.car, anticommutator_defect(f.a[l], f.a[m], zero));
    }
    r.parity = std::max(r.parity, (f.g * f.a[l] * f.g + f.a[l]).norm());
  }

  const auto inside = m_monomials(f);
  const auto outside = complement_monomials(f);
  Mat cyc(f.dim, inside.size());
  Mat sep(f.dim, outside.size());
  for (std::size_t i = 0; i < inside.size(); ++i) {
    cyc.col(i) = inside[i] * f.lambda;
    const cplx expect = (f.rho_m * f.m_coordinates(inside[i])).trace();
    r.state = std::max(r.state, std::abs(f.lambda.dot(cyc.col(i)) - expect));
  }
  for (std::size_t i = 0; i < outside.size(); ++i) sep.col(i) = outside[i] * f.lambda;
  r.cyclic_rank = numerical_rank(cyc);
  r.separating_rank = numerical_rank(sep);

  const int n = 1 << f.k;
  const auto alg = canonical_standard_form(n, f.u);
  r.twisted_angle = span_angle(twisted_commutant(alg), outside);
  r.trivial_angle = span_angle(twisted_commutant(canonical_standard_form(n)), outside);

  const Mat& K = f.K;
  r.k_unitary = (K.adjoint() * K - id).norm();
  r.k_lambda = (K * f.lambda - f.lambda).norm();
  r.k_squared = (K * K - f.g).norm();
  r.kg = (K * f.g - f.g * K).norm();
  const Mat jm = modular_data(alg, f.rho_m).J.m;
  r.kj = (K * jm - jm * K.conjugate()).norm();
  r.kj_twisted = (K * jm - f.g * jm * K.conjugate()).norm();
  for (int l = 0; l < f.k; ++l)
    r.kappa = std::max(r.kappa, (K * f.a[l] * K.adjoint() - f.a[f.iota(l)]).norm());

  const CopyingMap cm = make_copying_map(alg, f.rho_m, K);
  r.copy_state = cm.state_residual;
  r.theta = cm.is_mu_copying ? reversing_from_copying(cm, alg, f.rho_m).max_residual() : INFINITY;
  return r;
}

GradedSystem to_graded_system(const FockFrame& frame, std::vector<NamedMap> dynamics, std::vector<Mat> coords) {
  const auto alg = canonical_standard_form(1 << frame.k, frame.u);
  return make_reversible_system(alg, frame.rho_m, std::move(dynamics), std::move(coords), frame.K);
}

Channel amplitude_damping(double p_empty, double gamma) {
  if (!(p_empty > 0.0 && p_empty < 1.0) || gamma < 0.0 || gamma > 1.0)
    throw Error("amplitude_damping: parameters out of range");
  const double q = p_empty;
  Mat e0 = Mat::Zero(2, 2), e1 = Mat::Zero(2, 2), e2 = Mat::Zero(2, 2), e3 = Mat::Zero(2, 2);
  e0(0, 0) = std::sqrt(q);
  e0(1, 1) = std::sqrt(q * (1.0 - gamma));
  e1(0, 1) = std::sqrt(q * gamma);
  e2(0, 0) = std::sqrt((1.0 - q) * (1.0 - gamma));
  e2(1, 1) = std::sqrt(1.0 - q);
  e3(1, 0) = std::sqrt((1.0 - q) * gamma);
  return Channel::from_kraus({e0, e1, e2, e3});
}

}  // namespace fw
