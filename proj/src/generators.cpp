#include "fermiwasser/generators.hpp"

#include <numbers>

namespace fw {

namespace {

std::vector<Mat> random_coords(const Mat& u, int count, Rng& rng) {
  std::vector<Mat> out;
  for (int i = 0; i < count; ++i) {
    const Mat x = random_homogeneous(u, i == 0 ? 0 : 1, rng);
    out.push_back(hermitian_part(x));
  }
  return out;
}

std::vector<NamedMap> random_dynamics(const Mat& u, const Mat& rho, int count, Rng& rng) {
  std::vector<NamedMap> out;
  for (int i = 0; i < count; ++i) out.push_back({"alpha" + std::to_string(i), random_invariant_dynamics(u, rho, rng)});
  return out;
}

GradedSystem reversible(int n, int n_odd, Rng& rng, int n_dynamics, int n_coords, bool symmetrise) {
  const Mat u = diagonal_grading(n, n_odd);
  const auto alg = canonical_standard_form(n, u);
  const Mat rho = random_even_state(u, rng, true);
  RVec phases(n);
  std::uniform_real_distribution<double> ud(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < n; ++i) phases(i) = ud(rng);
  const Mat w = symmetric_phase_unitary(rho, phases);
  const Mat K = flip_copying_unitary(alg, w);
  const CopyingMap cm = make_copying_map(alg, rho, K);
  auto dyn = random_dynamics(u, rho, n_dynamics, rng);
  if (symmetrise)
    for (auto& d : dyn) d.map = 0.5 * d.map + 0.5 * reverse_channel(d.map, cm, alg, rho, cm, alg, rho);
  return make_reversible_system(alg, rho, std::move(dyn), random_coords(u, n_coords, rng), K);
}

}  // namespace

GradedSystem random_system(int n, int n_odd, Rng& rng, int n_dynamics, int n_coords, bool real_state) {
  const Mat u = diagonal_grading(n, n_odd);
  const Mat rho = random_even_state(u, rng, real_state);
  return make_system(canonical_standard_form(n, u), rho, random_dynamics(u, rho, n_dynamics, rng),
                     random_coords(u, n_coords, rng));
}

GradedSystem random_fdb_system(int n, int n_odd, Rng& rng, int n_dynamics, int n_coords) {
  return reversible(n, n_odd, rng, n_dynamics, n_coords, true);
}

GradedSystem random_reversible_system(int n, int n_odd, Rng& rng, int n_dynamics, int n_coords) {
  return reversible(n, n_odd, rng, n_dynamics, n_coords, false);
}

GradedSystem conjugated_system(const GradedSystem& sys, const Mat& U) {
  if ((U * sys.alg.u - sys.alg.u * U).norm() > 1e-10) throw Error("conjugated_system: U is not even");
  const Channel iota = Channel::conjugation(U.adjoint());
  const Channel iota_inv = Channel::conjugation(U);
  std::vector<NamedMap> dyn;
  for (const auto& d : sys.dynamics) {
    Channel m = compose(iota, compose(d.map, iota_inv));
    m.antimultiplicative = d.map.antimultiplicative;
    dyn.push_back({d.name, m});
  }
  std::vector<Mat> coords;
  for (const Mat& k : sys.coords) coords.push_back(U * k * U.adjoint());
  return make_system(sys.alg, U * sys.rho * U.adjoint(), std::move(dyn), std::move(coords));
}

}  // namespace fw
