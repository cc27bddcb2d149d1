#pragma once

#include "fermiwasser/detailed_balance.hpp"

#include <vector>

namespace fw {

// Finite lattice L = M ∪ ι(M) with |M| = k. Subsets s of M are indexed by
// occupation bits with mode 0 as the most significant bit, so probabilities[s]
// is the weight of f_s in ρ_M.
struct LatticeConfig {
  int k = 1;
  std::vector<double> probabilities;
};

// Throws unless 1 ≤ k ≤ 3 and the 2^k probabilities are > 0 and sum to 1.
void check_lattice_config(const LatticeConfig& cfg);

// Fock space over 2k modes, ordered M first (0..k-1) then ι(M) (k..2k-1).
// Jordan-Wigner with mode 0 leftmost: a_l = Z ⊗ … ⊗ Z ⊗ σ⁻ ⊗ 1 ⊗ … ⊗ 1.
// For a strictly increasing string s, f_s = a†_{s1} … a†_{sn} f_∅ is the
// plain occupation vector, so H = C^{2^k} ⊗ C^{2^k} with A(M) = M_{2^k} ⊗ 1.
struct FockFrame {
  LatticeConfig cfg;
  int k = 0;
  int dim = 0;           // 2^{2k}
  std::vector<Mat> a;    // annihilators, 2k of them
  Mat g;                 // parity on H
  Mat u;                 // parity on C^{2^k}
  Mat rho_m;             // diag(p) on C^{2^k}
  Vec lambda;            // Σ p_s^{1/2} f_{sι(s)}
  Mat K;

  int iota(int l) const { return l + k; }
  // Occupation vector of a subset of all 2k modes, bits in mode order.
  Vec basis_vector(const std::vector<int>& modes) const;
  // Coordinates in M_{2^k} of an operator of A(M) given on H.
  Mat m_coordinates(const Mat& x) const;
};

FockFrame build_frame(const LatticeConfig& cfg);

// K f_{sι(t)} = (−1)^{(|s|+1)|t|} f_{tι(s)}.
Mat copying_unitary(const FockFrame& frame);

// Products of one element of {1, a_l, a_l†, a_l†a_l} per mode of M (4^k in
// all), as operators on H. They span A(M).
std::vector<Mat> m_monomials(const FockFrame& frame);
// Same for the modes ι(M); they span A(L∖M).
std::vector<Mat> complement_monomials(const FockFrame& frame);

struct LatticeReport {
  int k = 0;
  double car = 0.0;             // max anticommutator defect over all modes
  double parity = 0.0;          // max ‖γ(a_l) + a_l‖
  double state = 0.0;           // max |⟨Λ, aΛ⟩ − Tr(ρ_M a)| over the monomials
  int cyclic_rank = 0;          // rank of A(M)Λ
  int separating_rank = 0;      // rank of A(L∖M)Λ
  double twisted_angle = 0.0;   // A(M)^≀ vs A(L∖M)
  double trivial_angle = 0.0;   // same with the grading switched off
  double k_unitary = 0.0;
  double k_lambda = 0.0;        // ‖KΛ − Λ‖
  double k_squared = 0.0;       // ‖K² − g‖
  double kg = 0.0;              // ‖Kg − gK‖
  // J from Λ. K carries J to J_{A^≀} = gJ, so the plain commutator is
  // nonzero as soon as odd vectors exist; kj_twisted is the real identity.
  double kj = 0.0;              // ‖KJ − JK‖
  double kj_twisted = 0.0;      // ‖KJ − gJK‖
  double kappa = 0.0;           // max ‖K a_l K† − a_{ι(l)}‖
  double copy_state = 0.0;      // ‖μ^ϰ − μ^≀‖
  double theta = 0.0;           // worst reversing-operation invariant
  bool passes() const;
};

LatticeReport verify_lattice_standard_form(const FockFrame& frame);

// Canonical-form system on M_{2^k} with the grading u, state ρ_M and the
// copying map of K; θ is appended to the dynamics. Dynamics and coordinates
// are given in M_{2^k} coordinates (use m_coordinates). Throws on dynamics
// that are not even or not μ-invariant.
GradedSystem to_graded_system(const FockFrame& frame, std::vector<NamedMap> dynamics, std::vector<Mat> coords);

// Generalised amplitude damping on one mode, Heisenberg picture, with the
// stationary state diag(p_∅, p_1). Its Kraus operators are homogeneous.
Channel amplitude_damping(double p_empty, double gamma);

}  // namespace fw
