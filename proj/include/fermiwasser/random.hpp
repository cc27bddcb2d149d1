#pragma once

#include "fermiwasser/channel.hpp"

#include <random>

namespace fw {

using Rng = std::mt19937_64;

Mat random_matrix(int rows, int cols, Rng& rng);
Mat random_hermitian(int n, Rng& rng);
Mat random_unitary(int n, Rng& rng);

// diag(+1, …, +1, −1, …, −1) with n_odd trailing −1 entries.
Mat diagonal_grading(int n, int n_odd);

// Random unitary commuting with the grading unitary u.
Mat random_even_unitary(const Mat& u, Rng& rng);

// Faithful state commuting with u. With real = true the density is real
// symmetric in the standard basis (u must then be real diagonal).
Mat random_even_state(const Mat& u, Rng& rng, bool real = false, double min_weight = 0.05);

// Even u.c.p. map with Kraus operators homogeneous for (u_in, u_out).
Channel random_even_channel(const Mat& u_in, const Mat& u_out, Rng& rng, int kraus = 3);

// Even u.c.p. map leaving the state ρ invariant: an even unitary commuting
// with ρ applied after a mixture of the identity and F ∘ F^σ for a random
// even channel F.
Channel random_invariant_dynamics(const Mat& u, const Mat& rho, Rng& rng);

// Homogeneous coordinate element: even (parity 0) or odd (parity 1) for u.
Mat random_homogeneous(const Mat& u, int parity, Rng& rng);

}  // namespace fw
