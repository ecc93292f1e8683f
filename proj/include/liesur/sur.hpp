#pragma once

// Sum-of-variances checks against the representation-only lower bounds,
// the Robertson product for contrast, saturating states, random states,
// and Born-rule measurement sampling.

#include "liesur/algebras.hpp"
#include "liesur/matcore.hpp"
#include "liesur/weights.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liesur {

/// Raised when a state on a truncated algebra puts too much weight near the cutoff.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability in the top decile of levels (at least one level) must stay below this.
inline constexpr double kTailMassLimit = 1e-8;

/// Number of levels counted as "tail" for a truncated space of dimension `dim`.
Index tail_levels(Index dim);
double tail_mass(const StateVector& s);
/// Throws TruncationError when gs is truncated and s violates the tail guard.
void require_tail_safe(const StateVector& s, const GeneratorSet& gs);

/// Per-generator weights w_a so that the variance sum is sum_a w_a Var(e_a):
/// WH 1, SU2 1/4 (stored 2J), SU11 the signature (+1, +1, -1), SUN 1/2.
std::vector<double> objective_weights(const GeneratorSet& gs);

/// Bound in the same convention as variance_sum: WH 1, SU2 j, SU11 kappa, SUN 2<Lambda|delta>.
Rational sur_bound_exact(const AlgebraSpec& spec);

struct SurReport {
  std::string relation;  // "variance_sum" or "su11_strong"
  AlgebraSpec spec;
  double lhs = 0.0;
  double bound = 0.0;
  Rational bound_exact{0};
  double margin = 0.0;
  bool satisfied = false;  // margin >= -1e-9
  std::optional<double> tail_mass;
  std::optional<std::uint64_t> seed;
};

/// WH: dx^2 + dp^2. SU2: dJx^2 + dJy^2 + dJz^2. SU11: dKx^2 + dKy^2 - dKz^2.
/// SUN: (1/2) sum_a de_a^2. Tail guard enforced on truncated algebras.
double variance_sum(const StateVector& s, const GeneratorSet& gs);

SurReport check_sur(const StateVector& s, const GeneratorSet& gs, std::optional<std::uint64_t> seed = {});

/// <Kz>^2 - <Kx>^2 - <Ky>^2 >= kappa^2. SU11 only.
SurReport check_su11_strong(const StateVector& s, const GeneratorSet& gs, std::optional<std::uint64_t> seed = {});

struct RobertsonResult {
  double product;  // Var(A) Var(B)
  double bound;    // |<[A,B]>|^2 / 4
};
RobertsonResult robertson_product(const StateVector& s, const ComplexMatrix& a, const ComplexMatrix& b);

/// A state attaining the bound: |0> for WH and SU11, |2j> for SU2, index 0 for SUN.
StateVector saturating_state(const GeneratorSet& gs);

/// Normalized vector of i.i.d. standard complex Gaussians; deterministic per seed.
StateVector haar_random_state(Index dim, std::uint64_t seed);
/// Haar state for compact kinds; for truncated kinds a Haar state on the lower half
/// of the levels, zero-padded (tail safe by construction).
StateVector random_state(const GeneratorSet& gs, std::uint64_t seed);

struct SampleResult {
  std::vector<double> samples;
  std::vector<double> eigenvalues;    // ascending
  std::vector<double> probabilities;  // Born weights per eigenvalue
  double mean = 0.0;
  double variance = 0.0;        // unbiased sample variance
  // Standard deviation of the variance estimate under the Born distribution. The plug-in
  // value estimated from the record alone can collapse for two-outcome observables.
  double standard_error = 0.0;
  double sample_standard_error = 0.0;
};

/// Simulates `shots` projective measurements of m on s. Needs shots >= 2.
SampleResult sample_observable(const StateVector& s, const ComplexMatrix& m, std::int64_t shots, std::uint64_t seed);

} // namespace liesur
