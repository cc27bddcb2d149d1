#include "doctest.h"
#include "fermiwasser/car_lattice.hpp"
#include "helpers.hpp"

#include <bit>

using namespace fwtest;

namespace {

LatticeConfig half_half() { return {1, {0.5, 0.5}}; }
LatticeConfig k2() { return {2, {0.4, 0.3, 0.2, 0.1}}; }

}  // namespace

TEST_CASE("lattice config validation") {
  CHECK_THROWS_AS(build_frame({0, {1.0}}), Error);
  CHECK_THROWS_AS(build_frame({4, std::vector<double>(16, 1.0 / 16)}), Error);
  CHECK_THROWS_AS(build_frame({1, {0.5, 0.4}}), Error);
  CHECK_THROWS_AS(build_frame({1, {1.0, 0.0}}), Error);
  CHECK_THROWS_AS(build_frame({2, {0.5, 0.5}}), Error);
  CHECK_NOTHROW(build_frame({3, std::vector<double>(8, 0.125)}));
}

TEST_CASE("k=1 entangled vector") {
  const auto f = build_frame(half_half());
  CHECK(f.dim == 4);
  // f_{(1,ι1)} = a†_1 a†_{ι1} f_∅
  const Vec vac = f.basis_vector({});
  const Vec pair = f.a[0].adjoint() * f.a[f.iota(0)].adjoint() * vac;
  CHECK((pair - f.basis_vector({0, 1})).norm() == 0.0);
  const Vec expect = (vac + pair) / std::sqrt(2.0);
  CHECK((f.lambda - expect).norm() <= 1e-15);
}

TEST_CASE("ordered strings are plain occupation vectors") {
  const auto f = build_frame(k2());
  const std::vector<std::vector<int>> strings{{0}, {1, 3}, {0, 2, 3}, {0, 1, 2, 3}};
  for (const auto& s : strings) {
    Vec v = f.basis_vector({});
    for (auto it = s.rbegin(); it != s.rend(); ++it) v = f.a[*it].adjoint() * v;
    CHECK((v - f.basis_vector(s)).norm() == 0.0);
  }
  // out-of-order creation picks up the sign
  const Vec swapped = f.a[1].adjoint() * f.a[0].adjoint() * f.basis_vector({});
  CHECK((swapped + f.basis_vector({0, 1})).norm() == 0.0);
}

TEST_CASE("CAR relations and parity") {
  for (const auto& cfg : {half_half(), k2()}) {
    const auto f = build_frame(cfg);
    const auto r = verify_lattice_standard_form(f);
    CHECK(r.car == 0.0);
    CHECK(r.parity == 0.0);
    for (int s = 0; s < f.dim; ++s) {
      const int len = std::popcount(static_cast<unsigned>(s));
      CHECK(std::real(f.g(s, s)) == (len % 2 == 0 ? 1.0 : -1.0));
    }
  }
}

TEST_CASE("state from the vector matches ρ_M on all monomials") {
  const auto f = build_frame(k2());
  const auto mons = m_monomials(f);
  CHECK(mons.size() == 16);
  for (const Mat& x : mons) {
    // inner-product oracle: expand Λ by hand over the occupation basis
    cplx inner = 0.0;
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 4; ++t)
        inner += std::sqrt(f.cfg.probabilities[s] * f.cfg.probabilities[t]) * x(s * 4 + s, t * 4 + t);
    const Mat a = f.m_coordinates(x);
    CHECK((kron(a, Mat::Identity(4, 4)) - x).norm() <= 1e-14);
    CHECK(std::abs(inner - (f.rho_m * a).trace()) <= 1e-10);
  }
}

TEST_CASE("copying unitary identities") {
  for (const auto& cfg : {half_half(), k2(), LatticeConfig{3, {0.2, 0.1, 0.1, 0.15, 0.05, 0.1, 0.2, 0.1}}}) {
    const auto f = build_frame(cfg);
    const Mat& K = f.K;
    CHECK((K.adjoint() * K - Mat::Identity(f.dim, f.dim)).norm() == 0.0);
    CHECK((K * f.lambda - f.lambda).norm() == 0.0);
    CHECK((K * K - f.g).norm() == 0.0);
    for (int l = 0; l < f.k; ++l) CHECK((K * f.a[l] * K.adjoint() - f.a[f.iota(l)]).norm() == 0.0);
  }
}

TEST_CASE("printed exponent variant breaks K² = g") {
  // (−1)^{(|s|+1)|t|} replaced by (−1)^{|s||t|} (dropping the +1)
  const auto f = build_frame(k2());
  Mat alt = f.K;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) {
      const int ls = std::popcount(static_cast<unsigned>(s)), lt = std::popcount(static_cast<unsigned>(t));
      alt(t * 4 + s, s * 4 + t) = (ls * lt) % 2 == 0 ? 1.0 : -1.0;
    }
  CHECK((alt * alt - f.g).norm() > 1.0);
}

TEST_CASE("standard form report") {
  for (const auto& cfg : {half_half(), k2()}) {
    const auto r = verify_lattice_standard_form(build_frame(cfg));
    CHECK(r.cyclic_rank == 1 << (2 * cfg.k));
    CHECK(r.separating_rank == 1 << (2 * cfg.k));
    CHECK(r.twisted_angle <= 1e-8);
    CHECK(r.trivial_angle > 1e-3);
    CHECK(r.kj_twisted <= 1e-9);
    CHECK(r.copy_state <= 1e-9);
    CHECK(r.theta <= 1e-9);
    CHECK(r.passes());
  }
}

TEST_CASE("non-uniform k=1 state") {
  const auto r = verify_lattice_standard_form(build_frame({1, {0.8, 0.2}}));
  CHECK(r.passes());
}

TEST_CASE("lattice graded systems") {
  const auto f = build_frame({1, {0.7, 0.3}});
  const Mat number = f.m_coordinates(f.a[0].adjoint() * f.a[0]);
  CHECK((number - diag({0.0, 1.0})).norm() <= 1e-15);

  SUBCASE("identity dynamics") {
    const auto sys = to_graded_system(f, {{"alpha", Channel::identity(2)}}, {number});
    CHECK(sys.reversible());
    CHECK(validate_system(sys).ok);
    const auto fdb = check_fdb(sys);
    CHECK(fdb.holds);
    CHECK(fdb.max_residual <= 1e-12);
  }
  SUBCASE("amplitude damping") {
    const Channel ad = amplitude_damping(0.7, 0.4);
    CHECK(invariance_residual(ad, f.rho_m) <= 1e-14);
    CHECK(evenness_residual(ad, f.u, f.u) <= 1e-14);
    const auto sys = to_graded_system(f, {{"damping", ad}}, {number});
    const auto fdb = check_fdb(sys);
    CHECK(std::isfinite(fdb.max_residual));
    CHECK(fdb.copy_residual.count("damping") == 1);
    CHECK(fdb.reverse_residual.count("damping") == 1);
  }
  SUBCASE("non-invariant dynamics rejected") {
    CHECK_THROWS_AS(to_graded_system(f, {{"damping", amplitude_damping(0.5, 0.4)}}, {number}), Error);
  }
}

TEST_CASE("K intertwines J with gJ, not with J") {
  // J vec(X) = vec(X†) is the swap F followed by conjugation. K is a real
  // signed swap, so KJ − JK = (KF − FK)∘conj and on e_s ⊗ e_t the two signs
  // differ exactly when |s| + |t| is odd: half the basis, each contributing 2².
  for (const auto& cfg : {half_half(), k2()}) {
    const auto f = build_frame(cfg);
    const auto r = verify_lattice_standard_form(f);
    CHECK(r.kj_twisted <= 1e-12);
    CHECK(r.kj == doctest::Approx(std::sqrt(2.0 * f.dim)).epsilon(1e-12));
  }
}
