#include "fermiwasser/system.hpp"

#include <algorithm>
#include <set>

namespace fw {

const Channel* GradedSystem::find(const std::string& name) const {
  for (const auto& d : dynamics)
    if (d.name == name) return &d.map;
  return nullptr;
}

double invariance_residual(const Channel& e, const Mat& rho) {
  return compatibility_residual(e, rho, rho);
}

SystemReport validate_system(const GradedSystem& sys, double tol) {
  SystemReport r;
  const int n = sys.alg.n;
  r.state_evenness = evenness_residual(sys.alg, sys.rho);
  for (const auto& d : sys.dynamics) {
    if (d.map.n_in != n || d.map.n_out != n) throw Error("system: dynamics '" + d.name + "' has the wrong size");
    r.invariance = std::max(r.invariance, invariance_residual(d.map, sys.rho));
    r.dynamics_evenness = std::max(r.dynamics_evenness, evenness_residual(d.map, sys.alg.u, sys.alg.u));
    r.unitality = std::max(r.unitality, unital_residual(d.map));
  }
  if (sys.copying) r.theta_present = sys.find(kThetaName) != nullptr;
  r.ok = r.state_evenness <= tol && r.invariance <= tol && r.dynamics_evenness <= tol && r.unitality <= tol &&
         r.theta_present;
  return r;
}

GradedSystem make_system(const StandardFormAlgebra& alg, const Mat& rho, std::vector<NamedMap> dynamics,
                         std::vector<Mat> coords, std::optional<CopyingMap> copying) {
  check_state(rho);
  std::set<std::string> names;
  for (const auto& d : dynamics)
    if (!names.insert(d.name).second) throw Error("system: duplicate dynamics name '" + d.name + "'");
  for (const Mat& k : coords)
    if (k.rows() != alg.n || k.cols() != alg.n) throw Error("system: coordinate has the wrong size");
  GradedSystem sys{alg, std::move(dynamics), rho, std::move(coords), std::move(copying)};
  const auto r = validate_system(sys);
  if (r.state_evenness > 1e-9) throw Error("system: state is not even");
  if (r.invariance > 1e-9) throw Error("system: state is not invariant under the dynamics");
  if (r.dynamics_evenness > 1e-9) throw Error("system: dynamics are not even");
  if (r.unitality > 1e-9) throw Error("system: dynamics are not unital");
  if (!r.theta_present) throw Error("system: copying map given but no reversing operation among the dynamics");
  return sys;
}

bool is_hermitian(const GradedSystem& sys, double tol) {
  return std::all_of(sys.coords.begin(), sys.coords.end(),
                     [&](const Mat& k) { return hermiticity_defect(k) <= tol; });
}

bool coordinates_generate(const GradedSystem& sys, double rank_rel) {
  const int n = sys.alg.n;
  std::vector<Mat> gens;
  for (const Mat& k : sys.coords) {
    gens.push_back(k);
    gens.push_back(k.adjoint());
  }
  std::vector<Mat> span{Mat::Identity(n, n)};
  int rank = 1;
  // Words of growing length; the span stabilises after at most n² steps.
  for (int len = 0; len < n * n && rank < n * n; ++len) {
    std::vector<Mat> next = span;
    for (const Mat& w : span)
      for (const Mat& g : gens) next.push_back(w * g);
    const Mat basis = orthonormal_span(stack_vecs(next), rank_rel);
    span.clear();
    for (Eigen::Index c = 0; c < basis.cols(); ++c) span.push_back(unvec(basis.col(c), n, n));
    const int new_rank = static_cast<int>(basis.cols());
    if (new_rank == rank && len > 0) break;
    rank = new_rank;
  }
  return rank == n * n;
}

GradedSystem with_grading_as_dynamics(const GradedSystem& sys) {
  GradedSystem out = sys;
  if (!out.find(kGammaName)) out.dynamics.push_back({kGammaName, Channel::conjugation(sys.alg.u.adjoint())});
  return out;
}

GradedSystem kms_dual_system(const GradedSystem& sys) {
  GradedSystem out = sys;
  for (auto& d : out.dynamics) {
    const bool anti = d.map.antimultiplicative;
    d.map = kms_dual(d.map, sys.alg, sys.rho, sys.alg, sys.rho);
    d.map.antimultiplicative = anti;
  }
  out.copying.reset();
  return out;
}

Mat twisted_coordinate(const StandardFormAlgebra& alg, const Mat& k) {
  return alg.from_twisted(alg.klein_map(alg.j(alg.left(k.adjoint())), +1));
}

GradedSystem twisted_dual_system(const GradedSystem& sys) {
  GradedSystem out;
  out.alg = canonical_standard_form(sys.alg.n, sys.alg.commutant_grading());
  out.rho = twisted_density(sys.alg, sys.rho);
  for (const auto& d : sys.dynamics) {
    Channel m = twisted_dual(d.map, sys.alg, sys.rho, sys.alg, sys.rho);
    m.antimultiplicative = d.map.antimultiplicative;
    out.dynamics.push_back({d.name, m});
  }
  for (const Mat& k : sys.coords) out.coords.push_back(twisted_coordinate(sys.alg, k));
  return out;
}

GradedSystem theta_coordinate_system(const GradedSystem& sys) {
  const Channel* theta = sys.find(kThetaName);
  if (!theta) throw Error("theta_coordinate_system: no reversing operation among the dynamics");
  GradedSystem out = sys;
  for (Mat& k : out.coords) k = theta->apply(k.adjoint());
  return out;
}

void require_matching(const GradedSystem& a, const GradedSystem& b) {
  if (a.coords.size() != b.coords.size()) throw Error("systems have different numbers of coordinates");
  std::set<std::string> na, nb;
  for (const auto& d : a.dynamics) na.insert(d.name);
  for (const auto& d : b.dynamics) nb.insert(d.name);
  if (na != nb) throw Error("systems have different dynamics index sets");
}

}  // namespace fw
