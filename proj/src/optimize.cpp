#include "liesur/optimize.hpp"

#include "liesur/sur.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace liesur {

VarianceSumObjective::VarianceSumObjective(const GeneratorSet& gs)
    : generators_(gs.all()), weights_(objective_weights(gs)), quadratic_(ComplexMatrix::Zero(gs.rep_dim, gs.rep_dim)) {
  for (std::size_t a = 0; a < generators_.size(); ++a) quadratic_ += weights_[a] * generators_[a] * generators_[a];
}

double VarianceSumObjective::value(const ComplexVector& psi) const {
  double f = psi.dot(quadratic_ * psi).real();
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    const double mean = psi.dot(generators_[a] * psi).real();
    f -= weights_[a] * mean * mean;
  }
  return f;
}

ComplexVector VarianceSumObjective::gradient(const ComplexVector& psi) const {
  ComplexVector g = 2.0 * (quadratic_ * psi);
  for (std::size_t a = 0; a < generators_.size(); ++a) {
    const ComplexVector ep = generators_[a] * psi;
    const double mean = psi.dot(ep).real();
    g -= (4.0 * weights_[a] * mean) * ep;
  }
  return g;
}

ComplexVector VarianceSumObjective::tangent_gradient(const ComplexVector& psi) const {
  const ComplexVector g = gradient(psi);
  return g - psi.dot(g).real() * psi;
}

namespace {

constexpr double kTieTolerance = 1e-12;

// Truncated algebras are searched inside the span of the lower levels only. With the top
// decile pinned to zero, products like K_x^2 never touch the cut and the objective is exact;
// merely bounding the tail mass is not enough because the top matrix elements grow with the cutoff.
void project_tail(ComplexVector& v, bool truncated) {
  if (truncated) v.tail(tail_levels(v.size())).setZero();
}

ComplexVector initial_point(const GeneratorSet& gs, int restart, std::uint64_t seed) {
  const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(restart));
  if (restart % 2 == 0) return random_state(gs, s).amplitudes();
  // perturbed weight-basis state
  const Index usable = gs.spec.truncated() ? gs.rep_dim / 2 : gs.rep_dim;
  const Index index = (restart / 2) % usable;
  Rng rng(s);
  ComplexVector v = ComplexVector::Zero(gs.rep_dim);
  v.head(usable) = 0.1 * complex_gaussian(usable, rng);
  v[index] += 1.0;
  return v.normalized();
}

struct RestartOutcome {
  ComplexVector psi;
  double value;
  long iterations;
  bool converged;
};

RestartOutcome descend(const VarianceSumObjective& f, ComplexVector psi, bool truncated, const MinimizeOptions& opt) {
  project_tail(psi, truncated);
  psi.normalize();
  double value = f.value(psi);
  double step = opt.initial_step;
  long it = 0;
  for (; it < opt.max_iters; ++it) {
    ComplexVector rg = f.tangent_gradient(psi);
    project_tail(rg, truncated);
    if (rg.norm() < opt.tol) return {psi, value, it, true};
    bool accepted = false;
    for (double t = step; t >= opt.min_step; t *= 0.5) {
      ComplexVector cand = (psi - t * rg).normalized();
      const double cv = f.value(cand);
      if (cv < value) {
        psi = std::move(cand);
        value = cv;
        step = std::min(2.0 * t, 1e3);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // step fell below min_step: give up on this restart
  }
  ComplexVector rg = f.tangent_gradient(psi);
  project_tail(rg, truncated);
  return {psi, value, it, rg.norm() < opt.tol};
}

} // namespace

MinimizeResult minimize_variance_sum(const GeneratorSet& gs, const MinimizeOptions& opt) {
  if (opt.restarts < 1) throw std::invalid_argument("minimize_variance_sum: restarts must be >= 1");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("minimize_variance_sum: tol must be positive");
  const VarianceSumObjective f(gs);
  const bool truncated = gs.spec.truncated();

  MinimizeResult result;
  result.bound = boost::rational_cast<double>(sur_bound_exact(gs.spec));
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opt.restarts; ++r) {
    RestartOutcome out = descend(f, initial_point(gs, r, opt.seed), truncated, opt);
    result.total_iterations += out.iterations;
    result.restart_values.push_back(out.value);
    // values within rounding of the incumbent count as ties and keep the lower restart index
    if (out.value < best - kTieTolerance) {
      best = out.value;
      result.best_state = StateVector::normalized(std::move(out.psi));
      result.best_restart = r;
      result.iterations = out.iterations;
      result.converged = out.converged;
    }
  }
  result.restarts_used = opt.restarts;
  result.best_value = variance_sum(result.best_state, gs);
  result.gap = result.best_value - result.bound;
  return result;
}

MinimizeResult minimize_variance_sum(const GeneratorSet& gs, int restarts, long max_iters, double tol,
                                     std::uint64_t seed) {
  MinimizeOptions opt;
  opt.restarts = restarts;
  opt.max_iters = max_iters;
  opt.tol = tol;
  opt.seed = seed;
  return minimize_variance_sum(gs, opt);
}

double gradient_check(const GeneratorSet& gs, const StateVector& s, double h, std::uint64_t seed) {
  if (h < 1e-7 || h > 1e-3) throw std::invalid_argument("gradient_check: h must lie in [1e-7, 1e-3]");
  if (s.dim() != gs.rep_dim) throw DimensionError("gradient_check: dimension mismatch");
  const VarianceSumObjective f(gs);
  const ComplexVector& psi = s.amplitudes();
  const ComplexVector g = f.gradient(psi);
  const double scale = std::max(g.norm(), 1.0);
  Rng rng(seed);
  double worst = 0.0;
  for (Index k = 0; k < 2 * psi.size(); ++k) {
    const ComplexVector d = complex_gaussian(psi.size(), rng).normalized();
    const double fd = (f.value(psi + h * d) - f.value(psi - h * d)) / (2.0 * h);
    const double analytic = g.dot(d).real();  // real inner product in R^{2 dim}
    worst = std::max(worst, std::abs(fd - analytic) / scale);
  }
  return worst;
}

double tangent_gradient_norm(const GeneratorSet& gs, const StateVector& s) {
  return VarianceSumObjective(gs).tangent_gradient(s.amplitudes()).norm();
}

} // namespace liesur
