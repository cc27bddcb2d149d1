#include "fermiwasser/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fw {

Vec vec(const Mat& x) {
  Vec v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw Error("unvec: size mismatch");
  Mat x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = v(i * cols + j);
  return x;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat unit(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Mat swap_operator(int n, int m) {
  Mat p = Mat::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) p(j * n + i, i * m + j) = 1.0;
  return p;
}

Mat partial_trace_second(const Mat& x, int n, int m) {
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) out(i, j) += x(i * m + k, j * m + k);
  return out;
}

Mat partial_trace_first(const Mat& x, int n, int m) {
  Mat out = Mat::Zero(m, m);
  for (int k = 0; k < n; ++k) out += x.block(k * m, k * m, m, m);
  return out;
}

double hermiticity_defect(const Mat& h) { return (h - h.adjoint()).norm(); }

Mat hermitian_part(const Mat& h) { return 0.5 * (h + h.adjoint()); }

HermEig herm_eig(const Mat& h, double tol_herm) {
  if (h.rows() != h.cols()) throw Error("herm_eig: matrix not square");
  const double scale = std::max(1.0, h.norm());
  if (hermiticity_defect(h) > tol_herm * scale)
    throw Error("herm_eig: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h));
  if (es.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Mat matrix_function(const Mat& h, const std::function<cplx(double)>& f,
                    double tol_herm) {
  const auto e = herm_eig(h, tol_herm);
  Vec fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(e.values(i));
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

namespace {

void require_pd(const Mat& h, double tol_pd) {
  if (min_eigenvalue(h) <= tol_pd) throw Error("state not faithful");
}

}  // namespace

Mat sqrtm_psd(const Mat& h) {
  return matrix_function(h, [](double x) { return cplx(std::sqrt(std::max(x, 0.0))); });
}

Mat powm_pd(const Mat& h, double p, double tol_pd) {
  require_pd(h, tol_pd);
  return matrix_function(h, [p](double x) { return cplx(std::pow(x, p)); });
}

Mat logm_pd(const Mat& h, double tol_pd) {
  require_pd(h, tol_pd);
  return matrix_function(h, [](double x) { return cplx(std::log(x)); });
}

Mat imag_power(const Mat& h, double t, double tol_pd) {
  require_pd(h, tol_pd);
  return matrix_function(h, [t](double x) { return std::exp(I_unit * t * std::log(x)); });
}

double min_eigenvalue(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

AntilinearPolar antilinear_polar(const AntilinearOperator& s, double tol_pd) {
  const Mat& m = s.m;
  if (m.rows() != m.cols()) throw Error("antilinear_polar: operator not square");
  const Mat delta = hermitian_part(m.transpose() * m.conjugate());
  const auto e = herm_eig(delta);
  if (e.values(0) <= tol_pd * std::max(1.0, e.values(e.values.size() - 1)))
    throw Error("antilinear_polar: operator singular (state not faithful or vector not separating)");
  Vec half(e.values.size()), inv_half(e.values.size());
  for (Eigen::Index i = 0; i < half.size(); ++i) {
    half(i) = std::sqrt(e.values(i));
    inv_half(i) = 1.0 / half(i);
  }
  const Mat dh = e.vectors * half.asDiagonal() * e.vectors.adjoint();
  const Mat dh_inv = e.vectors * inv_half.asDiagonal() * e.vectors.adjoint();
  return {AntilinearOperator{m * dh_inv.conjugate()}, dh};
}

int numerical_rank(const Mat& m, double rank_rel) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_rel * s(0)) ++r;
  return r;
}

Mat nullspace(const Mat& rows, double rank_rel) {
  const Eigen::Index n = rows.cols();
  if (rows.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rank_rel * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat orthonormal_span(const Mat& cols, double rank_rel) {
  if (cols.cols() == 0) return Mat(cols.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rank_rel * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

double max_principal_angle(const Mat& a, const Mat& b, double rank_rel) {
  const Mat qa = orthonormal_span(a, rank_rel);
  const Mat qb = orthonormal_span(b, rank_rel);
  if (qa.cols() != qb.cols()) return std::numbers::pi / 2;
  if (qa.cols() == 0) return 0.0;
  // sin of the largest angle is the norm of the component of span(b)
  // orthogonal to span(a).
  const Mat resid = qb - qa * (qa.adjoint() * qb);
  const double s = std::min(1.0, opnorm(resid));
  return std::asin(s);
}

Mat stack_vecs(const std::vector<Mat>& ops) {
  if (ops.empty()) return Mat(0, 0);
  Mat out(ops.front().size(), static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vec(ops[k]);
  return out;
}

double opnorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace fw
