#pragma once

// Collective su(n) operators on N particles in the defining irrep and two
// separability criteria built from them:
//
//   Cartan-vs-rest:  (N-1) sum_k Var(E_k) >= sum_m <E_m^2> - 2(n-1)N
//   total variance:  (1/2) sum_a Var(E_a) >= N (n-1)
//
// where E_a = sum_i e_a^(i), k runs over Cartan and m over off-diagonal generators.
// Both hold for every separable state; a violation certifies entanglement.

#include "liesur/algebras.hpp"
#include "liesur/matcore.hpp"
#include "liesur/radical.hpp"

#include <cstdint>
#include <vector>

namespace liesur {

/// Largest n^N accepted by collective_operators.
inline constexpr Index kMaxCollectiveDim = 4096;

struct CollectiveSet {
  int n = 0;
  int particles = 0;
  Index dim = 0;
  std::vector<ComplexMatrix> cartan;
  std::vector<ComplexMatrix> offdiag;
};

/// 1 x ... x e x ... x 1 with e in slot `site` of `particles` factors.
ComplexMatrix lift(const ComplexMatrix& single, int site, int particles);

CollectiveSet collective_operators(int n, int particles);
/// From an arbitrary single-particle basis (e.g. a unitarily conjugated Gell-Mann set).
CollectiveSet collective_operators(const GeneratorSet& single, int particles);

struct WitnessReport {
  int n = 0;
  int particles = 0;
  double lhs = 0.0;  // (N-1) sum_k Var(E_k)
  double rhs = 0.0;  // sum_m <E_m^2> - 2(n-1)N
  double margin = 0.0;
  bool violated = false;  // lhs < rhs - 1e-9
  double total_variance = 0.0;
  double total_variance_bound = 0.0;
  Rational total_variance_bound_exact{0};
  double total_margin = 0.0;
  bool total_violated = false;  // total_variance < bound - 1e-9
};

WitnessReport witness(const StateVector& s, int n, int particles);
WitnessReport witness(const StateVector& s, const CollectiveSet& ops);
/// Mixed-state version; rho must be a density matrix on n^N.
WitnessReport witness(const ComplexMatrix& rho, const CollectiveSet& ops);

/// Fully antisymmetrized |0>|1>...|n-1> on n particles, normalized.
StateVector slater_state(int n);

/// Kronecker product of independent Haar single-particle states.
StateVector random_product_state(int n, int particles, std::uint64_t seed);

struct IdentityReport {
  int n = 0;
  Rational cartan_square{0};    // sum_k e_k^2 = q I, exact
  Rational offdiag_square{0};   // sum_m e_m^2 = q I, exact
  Rational bloch_expected{0};   // 2(n-1)/n
  Rational constant_per_particle{0};  // 2(n-1), the coefficient of N in the witness
  double bloch_max_deviation = 0.0;   // over random pure states
  int bloch_trials = 0;
  double numeric_deviation = 0.0;     // floating-point cross-check of the two operator sums
};

/// Throws std::logic_error if either operator sum fails to be a rational multiple of I.
IdentityReport identity_checks(int n, int bloch_trials = 1000, std::uint64_t seed = 0);

struct ConvexityReport {
  bool passed = true;
  int trials = 0;
  double min_variance_gap = 0.0;  // Var_rho(E_1) - sum_i p_i Var_psi_i(E_1)
  double min_witness_margin = 0.0;
  double min_total_margin = 0.0;
};

/// Random separable mixtures of up to four product states (Dirichlet-uniform weights).
ConvexityReport mixed_state_convexity_check(int n, int particles, int trials, std::uint64_t seed);

} // namespace liesur
