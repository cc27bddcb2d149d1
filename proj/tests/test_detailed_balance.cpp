#include "doctest.h"
#include "fermiwasser/generators.hpp"
#include "helpers.hpp"

using namespace fwtest;

namespace {

// Same algebra, state, copying map and coordinates as sys, with the given
// non-θ dynamics; θ is rebuilt from the copying map.
GradedSystem sibling(const GradedSystem& sys, std::vector<NamedMap> dynamics) {
  return make_reversible_system(sys.alg, sys.rho, std::move(dynamics), sys.coords, sys.copying->K);
}

std::vector<NamedMap> non_theta(const GradedSystem& sys) {
  std::vector<NamedMap> out;
  for (const auto& d : sys.dynamics)
    if (d.name != kThetaName) out.push_back(d);
  return out;
}

// A random reversible system sharing algebra, state and copying map with
// base but with fresh dynamics and coordinates.
GradedSystem partner(const GradedSystem& base, Rng& rng) {
  std::vector<NamedMap> dyn;
  for (const auto& d : non_theta(base)) dyn.push_back({d.name, random_invariant_dynamics(base.alg.u, base.rho, rng)});
  std::vector<Mat> coords;
  for (std::size_t i = 0; i < base.coords.size(); ++i)
    coords.push_back(hermitian_part(random_homogeneous(base.alg.u, i == 0 ? 0 : 1, rng)));
  return make_reversible_system(base.alg, base.rho, std::move(dyn), std::move(coords), base.copying->K);
}

WassersteinOptions no_chain() {
  WassersteinOptions o;
  o.check_chain = false;
  return o;
}

}  // namespace

TEST_CASE("flip copying map on a trivially graded matrix algebra") {
  const int n = 3;
  const auto alg = canonical_standard_form(n);
  const Mat tr = Mat::Identity(n, n) / double(n);
  const Mat K = flip_copying_unitary(alg, Mat::Identity(n, n));
  const auto cm = make_copying_map(alg, tr, K);
  CHECK(cm.is_mu_copying);
  CHECK(cm.homomorphism_residual <= 1e-12);
  Rng rng(1);
  const Mat a = random_matrix(n, n, rng);
  // The image is the right action, i.e. the commutant.
  CHECK((K * alg.left(a) * K.adjoint() - alg.right(cm.kappa.apply(a))).norm() <= 1e-12);
  CHECK((cm.kappa.apply(a) - a).norm() <= 1e-12);
}

TEST_CASE("random flip copying maps are μ-copying with all invariants") {
  Rng rng(2);
  for (int n : {2, 3, 4}) {
    const auto s = random_reversible_system(n, n / 2, rng);
    const auto& cm = *s.copying;
    CHECK(cm.is_mu_copying);
    CHECK(cm.homomorphism_residual <= 1e-9);
    CHECK(cm.evenness_residual <= 1e-9);
    CHECK(cm.kg_residual <= 1e-9);
    CHECK(cm.k_squared_residual <= 1e-9);
    CHECK(cm.state_residual <= 1e-9);
    CHECK(cm.vector_residual <= 1e-9);
  }
}

TEST_CASE("copying map negative cases") {
  SUBCASE("K² ≠ g is reported, not rejected") {
    const Mat u = diagonal_grading(3, 1);
    const auto alg = canonical_standard_form(3, u);
    // Even but not symmetric: K² = g needs w = wᵀ.
    Mat w = Mat::Zero(3, 3);
    w(0, 1) = 1.0;
    w(1, 0) = I_unit;
    w(2, 2) = 1.0;
    const auto cm = make_copying_map(alg, Mat::Identity(3, 3) / 3.0, flip_copying_unitary(alg, w));
    CHECK(cm.k_squared_residual > 1e-3);
    CHECK_FALSE(cm.is_mu_copying);
    CHECK_THROWS_WITH(reversing_from_copying(cm, alg, Mat::Identity(3, 3) / 3.0), doctest::Contains("μ-copying"));
  }
  SUBCASE("image outside the twisted commutant") {
    const auto alg = canonical_standard_form(2, pauli_z());
    CHECK_THROWS_WITH(make_copying_map(alg, Mat::Identity(2, 2) / 2.0, Mat::Identity(4, 4)),
                      doctest::Contains("image not inside twisted commutant"));
  }
  SUBCASE("non-unitary K") {
    const auto alg = canonical_standard_form(2, pauli_z());
    CHECK_THROWS(make_copying_map(alg, Mat::Identity(2, 2) / 2.0, 2.0 * Mat::Identity(4, 4)));
  }
}

TEST_CASE("reversing operation invariants") {
  Rng rng(3);
  for (int n : {2, 3, 4}) {
    const auto s = random_reversible_system(n, 1, rng);
    const auto r = reversing_from_copying(*s.copying, s.alg, s.rho);
    CHECK(r.involution <= 1e-9);
    CHECK(r.antimultiplicativity <= 1e-9);
    CHECK(r.star <= 1e-9);
    CHECK(r.invariance <= 1e-9);
    CHECK(r.evenness <= 1e-10);
    CHECK(r.unitality <= 1e-9);
    CHECK(r.theta.antimultiplicative);
  }
}

TEST_CASE("tracial trivially graded θ is the transpose") {
  const int n = 3;
  const auto alg = canonical_standard_form(n);
  const Mat tr = Mat::Identity(n, n) / double(n);
  const auto cm = make_copying_map(alg, tr, flip_copying_unitary(alg, Mat::Identity(n, n)));
  const auto r = reversing_from_copying(cm, alg, tr);
  Rng rng(4);
  const Mat a = random_matrix(n, n, rng);
  CHECK((r.theta.apply(a) - a.transpose()).norm() <= 1e-12);
  // Diagonal (commutative) elements are fixed.
  const Mat d = diag({0.2, -1.0, 3.0});
  CHECK((r.theta.apply(d) - d).norm() <= 1e-12);
  CHECK(r.involution <= 1e-12);
}

TEST_CASE("reverse channel") {
  Rng rng(5);
  const auto s = random_reversible_system(3, 1, rng);
  const auto& cm = *s.copying;
  const Channel& theta = *s.find(kThetaName);
  SUBCASE("identity") {
    CHECK(distance(reverse_channel(Channel::identity(3), cm, s.alg, s.rho, cm, s.alg, s.rho), Channel::identity(3)) <=
          1e-9);
  }
  SUBCASE("θ is its own reverse") {
    CHECK(distance(reverse_channel(theta, cm, s.alg, s.rho, cm, s.alg, s.rho), theta) <= 1e-9);
  }
  SUBCASE("two formulas agree and reversal is an involution") {
    // A second copying map on the same state, so E^← uses different data on
    // each side.
    RVec phases(3);
    phases << 0.3, -1.1, 2.0;
    const Mat K2 = flip_copying_unitary(s.alg, symmetric_phase_unitary(s.rho, phases));
    const auto cm2 = make_copying_map(s.alg, s.rho, K2);
    const auto theta2 = reversing_from_copying(cm2, s.alg, s.rho).theta;
    for (int trial = 0; trial < 5; ++trial) {
      const Channel e = random_invariant_dynamics(s.alg.u, s.rho, rng);
      const Channel r1 = reverse_channel(e, cm, s.alg, s.rho, cm2, s.alg, s.rho);
      const Channel r2 = reverse_channel_via_theta(e, theta, s.alg, s.rho, theta2, s.alg, s.rho);
      CHECK(distance(r1, r2) <= 1e-9);
      const Channel rr = reverse_channel(r1, cm2, s.alg, s.rho, cm, s.alg, s.rho);
      CHECK(distance(rr, e) <= 1e-9);
      CHECK(is_completely_positive(r1));
      CHECK(unital_residual(r1) <= 1e-10);
    }
  }
}

TEST_CASE("fermionic detailed balance checks") {
  Rng rng(6);
  const auto s = random_reversible_system(3, 1, rng);
  SUBCASE("identity dynamics") {
    const auto t = sibling(s, {{"alpha0", Channel::identity(3)}});
    const auto r = check_fdb(t);
    CHECK(r.holds);
    CHECK(r.copy_residual.at("alpha0") <= 1e-12);
  }
  SUBCASE("symmetrised dynamics") {
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_fdb_system(3, 1, rng, 2);
      const auto r = check_fdb(f);
      CHECK(r.holds);
      CHECK(r.max_residual <= 1e-8);
    }
  }
  SUBCASE("generic dynamics fail, with equal copy and reverse residuals") {
    const auto r = check_fdb(s);
    CHECK_FALSE(r.holds);
    CHECK(r.copy_residual.at("alpha0") > 1e-3);
    for (const auto& [name, v] : r.copy_residual) CHECK(std::abs(v - r.reverse_residual.at(name)) <= 1e-9);
  }
  SUBCASE("non-reversible systems are rejected") {
    const auto plain = random_system(2, 1, rng);
    CHECK_THROWS_WITH(check_fdb(plain), doctest::Contains("not reversible"));
  }
}

TEST_CASE("reverse and copy systems") {
  Rng rng(7);
  SUBCASE("an FDB system is its own reverse") {
    const auto f = random_fdb_system(3, 1, rng);
    const auto r = reverse_system(f);
    for (const auto& d : f.dynamics) CHECK(distance(*r.find(d.name), d.map) <= 1e-9);
  }
  SUBCASE("a generic system is not") {
    const auto s = random_reversible_system(3, 1, rng);
    CHECK(distance(*reverse_system(s).find("alpha0"), *s.find("alpha0")) > 1e-3);
    const auto rr = reverse_system(reverse_system(s));
    for (const auto& d : s.dynamics) CHECK(distance(*rr.find(d.name), d.map) <= 1e-9);
  }
  SUBCASE("double copy returns γ(k)") {
    for (int n : {2, 3}) {
      const auto s = random_reversible_system(n, 1, rng);
      const auto c = copy_system(s);
      CHECK(c.reversible());
      const auto cc = copy_system(c);
      for (std::size_t i = 0; i < s.coords.size(); ++i)
        CHECK((from_double_twisted(s.alg, cc.coords[i]) - s.alg.grade(s.coords[i])).norm() <= 1e-9);
      CHECK((cc.rho - s.rho).norm() <= 1e-9);
      for (const auto& d : s.dynamics) CHECK(distance(*cc.find(d.name), d.map) <= 1e-9);
    }
  }
  SUBCASE("copying commutes with the KMS dual") {
    const auto s = random_reversible_system(3, 1, rng);
    const auto c = copy_system(s);
    const auto sc = kms_dual_system(c);
    const Channel& kappa = s.copying->kappa;
    const Channel kappa_inv{3, 3, kappa.S.inverse()};
    for (const auto& d : s.dynamics) {
      const Channel copied_dual = compose(kappa, compose(kms_dual(d.map, s.alg, s.rho, s.alg, s.rho), kappa_inv));
      CHECK(distance(copied_dual, *sc.find(d.name)) <= 1e-9);
    }
  }
}

TEST_CASE("cost is invariant under copying") {
  Rng rng(8);
  const auto a = random_reversible_system(2, 1, rng);
  const auto b = partner(a, rng);
  const auto r = wasserstein(a, b, WClass::F, no_chain());
  REQUIRE(r.optimal());
  const auto ac = copy_system(a), bc = copy_system(b);
  const auto pc = plan_copy(r.plan, *a.copying, *b.copying);
  CHECK(std::abs(cost(ac, bc, pc).value - cost(a, b, r.plan).value) <= 1e-12);
}

TEST_CASE("symmetries of the distances for reversible systems") {
  Rng rng(9);
  for (int trial = 0; trial < 2; ++trial) {
    const auto a = random_reversible_system(2, 1, rng);
    const auto b = partner(a, rng);
    const auto ac = copy_system(a), bc = copy_system(b);
    for (WClass cls : {WClass::F, WClass::Fsigma, WClass::Fsigmasigma})
      CHECK(std::abs(wasserstein(ac, bc, cls, no_chain()).value - wasserstein(a, b, cls, no_chain()).value) <= 1e-5);
    const auto ar = reverse_system(a), br = reverse_system(b);
    CHECK(std::abs(wasserstein(br, ar, WClass::Fsigma, no_chain()).value -
                   wasserstein(a, b, WClass::Fsigma, no_chain()).value) <= 1e-5);
    CHECK(std::abs(wasserstein(ar, br, WClass::Fsigmasigma, no_chain()).value -
                   wasserstein(a, b, WClass::Fsigmasigma, no_chain()).value) <= 1e-5);
  }
}

TEST_CASE("θ-coordinate systems give the same distances") {
  Rng rng(10);
  const auto a = random_reversible_system(2, 1, rng);
  const auto b = partner(a, rng);
  const auto at = theta_coordinate_system(a), bt = theta_coordinate_system(b);
  for (WClass cls : {WClass::F, WClass::Fsigma, WClass::Fsigmasigma})
    CHECK(std::abs(wasserstein(at, bt, cls, no_chain()).value - wasserstein(a, b, cls, no_chain()).value) <= 1e-6);
}

TEST_CASE("deviation from detailed balance") {
  Rng rng(11);
  const auto a = random_reversible_system(2, 1, rng);
  SUBCASE("an FDB system has zero deviation") {
    const auto f = random_fdb_system(2, 1, rng);
    const auto r = fdb_deviation(f, f, WClass::Fsigma);
    CHECK(r.w_a_rev <= 1e-6);
    CHECK(r.w_rev_a <= 1e-6);
    CHECK(r.holds());
  }
  SUBCASE("identity-dynamics B") {
    const auto b = sibling(a, {{"alpha0", Channel::identity(2)}});
    for (WClass cls : {WClass::Fsigma, WClass::Fsigmasigma}) {
      const auto r = fdb_deviation(a, b, cls);
      CHECK(r.all_optimal);
      CHECK(r.forward_bound);
      CHECK(r.backward_bound);
    }
  }
  SUBCASE("symmetrised-dynamics B") {
    const auto& cm = *a.copying;
    const Channel beta = random_invariant_dynamics(a.alg.u, a.rho, rng);
    const Channel sym = 0.5 * beta + 0.5 * reverse_channel(beta, cm, a.alg, a.rho, cm, a.alg, a.rho);
    const auto b = sibling(a, {{"alpha0", sym}});
    for (WClass cls : {WClass::Fsigma, WClass::Fsigmasigma}) CHECK(fdb_deviation(a, b, cls).holds());
  }
  SUBCASE("B must satisfy FDB") {
    CHECK_THROWS_WITH(fdb_deviation(a, a, WClass::Fsigma), doctest::Contains("detailed balance"));
    CHECK_THROWS(fdb_deviation(a, a, WClass::F));
  }
}
