#pragma once

#include "fermiwasser/detailed_balance.hpp"
#include "fermiwasser/random.hpp"

namespace fw {

// Hermitian homogeneous coordinates (one even, the rest odd) with μ-invariant
// even dynamics named "alpha0", "alpha1", ... on M_n graded by
// diag(1,…,1,−1,…,−1).
GradedSystem random_system(int n, int n_odd, Rng& rng, int n_dynamics = 1, int n_coords = 2, bool real_state = false);

// A reversible system satisfying FDB: real ρ, flip copying unitary with a
// random symmetric phase w, and dynamics α = (β + β^←)/2.
GradedSystem random_fdb_system(int n, int n_odd, Rng& rng, int n_dynamics = 1, int n_coords = 2);

// Same as above but the dynamics β is left unsymmetrised, so FDB generally
// fails. The copying map and θ are still present.
GradedSystem random_reversible_system(int n, int n_odd, Rng& rng, int n_dynamics = 1, int n_coords = 2);

// The image of sys under a ↦ U a U† for an even unitary U: same grading,
// ρ ↦ UρU†, β = ι∘α∘ι⁻¹ and l = ι(k). The copying map is dropped.
GradedSystem conjugated_system(const GradedSystem& sys, const Mat& U);

}  // namespace fw
