#pragma once

// Projected-gradient minimization of the (signature-weighted) variance sum
// over unit vectors of the representation space. The minimum certifies that
// the representation-only bound is attained.

#include "liesur/algebras.hpp"
#include "liesur/matcore.hpp"

#include <cstdint>
#include <vector>

namespace liesur {

/// f(psi) = <psi|Q|psi> - sum_a w_a <psi|e_a|psi>^2 with Q = sum_a w_a e_a^2.
/// On unit vectors this is variance_sum; off the sphere it is the plain
/// polynomial, which is what the gradient differentiates.
class VarianceSumObjective {
 public:
  explicit VarianceSumObjective(const GeneratorSet& gs);

  double value(const ComplexVector& psi) const;
  /// Gradient w.r.t. the real coordinates (Re psi, Im psi), packed as a complex vector:
  /// 2 Q psi - 4 sum_a w_a <e_a> e_a psi.
  ComplexVector gradient(const ComplexVector& psi) const;
  /// Gradient projected on the tangent space of the unit sphere at psi.
  ComplexVector tangent_gradient(const ComplexVector& psi) const;

 private:
  std::vector<ComplexMatrix> generators_;
  std::vector<double> weights_;
  ComplexMatrix quadratic_;
};

struct MinimizeResult {
  double best_value = 0.0;
  StateVector best_state = StateVector::basis(1, 0);
  double bound = 0.0;
  double gap = 0.0;  // best_value - bound
  int restarts_used = 0;
  int best_restart = 0;
  long iterations = 0;        // of the winning restart
  long total_iterations = 0;  // over all restarts
  bool converged = false;     // winning restart reached the gradient tolerance
  std::vector<double> restart_values;
};

struct MinimizeOptions {
  int restarts = 8;
  long max_iters = 20000;
  double tol = tol::kOptimizer;  // on the tangent-gradient norm
  std::uint64_t seed = 0;
  double initial_step = 0.1;
  double min_step = 1e-12;
};

/// For truncated algebras (wh, su11) the search is confined to states whose top
/// ceil(dim/10) levels vanish, so best_state always passes the tail guard.
MinimizeResult minimize_variance_sum(const GeneratorSet& gs, const MinimizeOptions& options);
MinimizeResult minimize_variance_sum(const GeneratorSet& gs, int restarts, long max_iters, double tol,
                                     std::uint64_t seed);

/// Central finite differences of f along 2*dim random directions of R^{2 dim}
/// against the analytic gradient. Returns max |fd - analytic| / max(|grad|, 1).
double gradient_check(const GeneratorSet& gs, const StateVector& s, double h, std::uint64_t seed = 0);

double tangent_gradient_norm(const GeneratorSet& gs, const StateVector& s);

} // namespace liesur
