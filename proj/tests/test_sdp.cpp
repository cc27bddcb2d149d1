#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fwtest;

namespace {

SdpProblem trace_one(int d, const Mat& objective) {
  SdpProblem p;
  p.dim = d;
  p.objective = objective;
  p.add_constraint(Mat::Identity(d, d), 1.0);
  return p;
}

// Random feasible and bounded problem: constraints evaluated at a PD point,
// positive definite objective.
SdpProblem random_problem(int d, int k, Rng& rng) {
  SdpProblem p;
  p.dim = d;
  const Mat g = random_matrix(d, d, rng);
  const Mat x0 = g * g.adjoint() + Mat::Identity(d, d);
  const Mat h = random_matrix(d, d, rng);
  p.objective = h * h.adjoint() / static_cast<double>(d) + 0.1 * Mat::Identity(d, d);
  for (int i = 0; i < k; ++i) {
    const Mat a = random_hermitian(d, rng);
    p.add_constraint(a, (a * x0).trace().real());
  }
  return p;
}

}  // namespace

TEST_CASE("minimising the trace over trace-one matrices") {
  const auto s = solve(trace_one(2, Mat::Identity(2, 2)));
  CHECK(s.status == SdpStatus::optimal);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.min_eigenvalue >= -1e-9);
  CHECK(std::abs(s.X.trace().real() - 1.0) <= 1e-9);
}

TEST_CASE("extreme-point optimum") {
  SdpProblem p = trace_one(2, diag({1.0, 2.0}));
  p.options.tol_gap = 1e-11;
  const auto s = solve(p);
  CHECK(s.status == SdpStatus::optimal);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK((s.X - diag({1.0, 0.0})).norm() <= 1e-5);
}

TEST_CASE("complex objective: the optimum is the lowest eigenvalue") {
  Rng rng(31);
  const Mat h = random_hermitian(3, rng);
  const auto s = solve(trace_one(3, h));
  CHECK(s.status == SdpStatus::optimal);
  CHECK(std::abs(s.value - herm_eig(h).values(0)) <= 1e-7);
}

TEST_CASE("inconsistent constraints are reported infeasible") {
  SdpProblem p = trace_one(2, Mat::Identity(2, 2));
  p.add_constraint(Mat::Identity(2, 2), 2.0);
  CHECK(solve(p).status == SdpStatus::infeasible);
  CHECK_FALSE(feasible_point(p).feasible);
}

TEST_CASE("interior-point values agree with the ADMM oracle") {
  Rng rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const SdpProblem p = random_problem(3, 4, rng);
    const auto s = solve(p);
    REQUIRE(s.status == SdpStatus::optimal);
    const auto o = admm_oracle(p);
    CHECK(o.residual <= 1e-7);
    CHECK(std::abs(s.value - o.value) <= 1e-5 * (1 + std::abs(o.value)));
  }
}

TEST_CASE("weak duality and certified optimality") {
  Rng rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    const SdpProblem p = random_problem(4, 6, rng);
    const auto s = solve(p);
    REQUIRE(s.status == SdpStatus::optimal);
    CHECK(s.dual_value <= s.value + p.options.tol_gap);
    CHECK(s.primal_residual <= 1e-7);
    CHECK(s.dual_gap <= p.options.tol_gap);
  }
}

TEST_CASE("rescaling constraints leaves the optimum unchanged") {
  Rng rng(34);
  SdpProblem p = random_problem(3, 4, rng);
  const auto s1 = solve(p);
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    p.a[k] *= 10.0;
    p.b[k] *= 10.0;
  }
  const auto s2 = solve(p);
  CHECK(std::abs(s1.value - s2.value) <= 1e-6);
}

TEST_CASE("redundant constraints are removed before solving") {
  Rng rng(35);
  SdpProblem p = random_problem(3, 3, rng);
  const auto s1 = solve(p);
  p.add_constraint(p.a[0] + 2.0 * p.a[1], p.b[0] + 2.0 * p.b[1]);
  const auto s2 = solve(p);
  CHECK(s2.reduced_constraints == 3);
  CHECK(std::abs(s1.value - s2.value) <= 1e-7);
}

TEST_CASE("solves are deterministic") {
  Rng rng(36);
  const SdpProblem p = random_problem(3, 4, rng);
  const auto s1 = solve(p);
  const auto s2 = solve(p);
  CHECK(s1.iterations == s2.iterations);
  CHECK(s1.value == s2.value);
}

TEST_CASE("complex constraints constrain both real and imaginary parts") {
  SdpProblem p;
  p.dim = 2;
  p.objective = Mat::Zero(2, 2);
  p.add_constraint(Mat::Identity(2, 2), 1.0);
  Mat w = Mat::Zero(2, 2);
  w(0, 1) = 1.0;  // X_01 = 0.25 i
  p.add_complex_constraint(w, cplx(0.0, 0.25));
  const auto fp = feasible_point(p);
  REQUIRE(fp.feasible);
  CHECK(std::abs(fp.X(0, 1) - cplx(0.0, 0.25)) <= 1e-8);
  CHECK(fp.min_eigenvalue >= 1e-6);
}

TEST_CASE("feasible_point accepts a feasible seed and rejects a bad one") {
  SdpProblem p = trace_one(2, Mat::Identity(2, 2));
  CHECK(feasible_point(p, Mat(Mat::Identity(2, 2) / 2.0)).feasible);
  CHECK_FALSE(feasible_point(p, Mat(Mat::Identity(2, 2))).feasible);
}
