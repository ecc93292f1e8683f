#include "liesur/optimize.hpp"
#include "liesur/sur.hpp"

#include <doctest.h>

#include <cmath>

using namespace liesur;

namespace {

// Truncated Glauber coherent state |alpha> on `dim` Fock levels.
ComplexVector coherent(Complex alpha, Index dim) {
  ComplexVector v(dim);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (Index m = 0; m < dim; ++m) {
    v[m] = term;
    term *= alpha / std::sqrt(double(m + 1));
  }
  return v;
}

} // namespace

TEST_CASE("objective equals the variance sum on unit vectors") {
  for (const char* text : {"wh:cutoff=32", "su2:j=2", "su11:kappa=3/4,cutoff=40", "su:4"}) {
    CAPTURE(text);
    const GeneratorSet gs = build(AlgebraSpec::parse(text));
    const VarianceSumObjective f(gs);
    for (int t = 0; t < 10; ++t) {
      const StateVector s = random_state(gs, derive_seed(2, t));
      CHECK(f.value(s.amplitudes()) == doctest::Approx(variance_sum(s, gs)).epsilon(1e-12));
    }
  }
}

TEST_CASE("analytic gradient matches finite differences") {
  for (const char* text : {"su2:j=2", "wh:cutoff=32", "su11:kappa=1/2,cutoff=32", "su:3", "su:5"}) {
    CAPTURE(text);
    const GeneratorSet gs = build(AlgebraSpec::parse(text));
    for (int t = 0; t < 5; ++t) CHECK(gradient_check(gs, random_state(gs, derive_seed(4, t)), 1e-5, t) < 1e-5);
  }
  const GeneratorSet s = build_su2(4);
  CHECK_THROWS_AS(gradient_check(s, saturating_state(s), 1e-2), std::invalid_argument);
  CHECK_THROWS_AS(gradient_check(s, saturating_state(s), 1e-8), std::invalid_argument);
}

TEST_CASE("highest-weight states are stationary") {
  for (const char* text : {"su2:j=2", "wh:cutoff=32", "su11:kappa=3/2,cutoff=32", "su:4"}) {
    const GeneratorSet gs = build(AlgebraSpec::parse(text));
    CHECK(tangent_gradient_norm(gs, saturating_state(gs)) < 1e-8);
  }
}

TEST_CASE("minimization reaches the bound") {
  SUBCASE("spin 1") {
    const MinimizeResult r = minimize_variance_sum(build_su2(2), 8, 20000, 1e-6, 0);
    CHECK(std::abs(r.best_value - 1.0) < 1e-6);
    CHECK(r.converged);
    CHECK(r.restarts_used == 8);
    CHECK(r.restart_values.size() == 8);
  }
  SUBCASE("su(1,1), kappa 1/2") {
    const GeneratorSet k = build_su11(Rational(1, 2), 64);
    const MinimizeResult r = minimize_variance_sum(k, 8, 20000, 1e-6, 0);
    CHECK(std::abs(r.best_value - 0.5) < 1e-6);
    CHECK(r.gap >= -1e-9);
    CHECK(tail_mass(r.best_state) < kTailMassLimit);
  }
  SUBCASE("su(3) objective is constant") {
    const MinimizeResult r = minimize_variance_sum(build_gellmann(3), 4, 20000, 1e-6, 0);
    CHECK(std::abs(r.best_value - 2.0) < 1e-9);
    CHECK(r.iterations == 0);
  }
}

TEST_CASE("Weyl-Heisenberg minimizer is a coherent state") {
  // every displaced vacuum attains dx^2 + dp^2 = 1, so the minimizer is only fixed up to displacement
  const GeneratorSet wh = build_wh(64);
  const MinimizeResult r = minimize_variance_sum(wh, 8, 20000, 1e-6, 0);
  CHECK(std::abs(r.best_value - 1.0) < 1e-6);
  const Complex alpha = r.best_state.amplitudes().dot(wh.lowering() * r.best_state.amplitudes());
  const double fidelity = std::norm(coherent(alpha, 64).dot(r.best_state.amplitudes()));
  CHECK(fidelity > 1.0 - 1e-6);
}

TEST_CASE("minimizer never undercuts the bound") {
  for (const char* text : {"su2:j=1/2", "su2:j=3/2", "su2:j=3", "wh:cutoff=48", "su11:kappa=1/4,cutoff=48",
                           "su11:kappa=1,cutoff=48", "su:4"}) {
    CAPTURE(text);
    const GeneratorSet gs = build(AlgebraSpec::parse(text));
    MinimizeOptions opt;
    opt.restarts = 4;
    opt.seed = 31;
    const MinimizeResult r = minimize_variance_sum(gs, opt);
    CHECK(r.gap >= -1e-9);
    CHECK(r.gap <= 1e-6);
    for (double v : r.restart_values) CHECK(v >= r.best_value - 1e-12);
  }
}

TEST_CASE("restarts are deterministic and ties keep the first index") {
  const GeneratorSet gs = build_su2(3);
  const MinimizeResult a = minimize_variance_sum(gs, 6, 5000, 1e-6, 99);
  const MinimizeResult b = minimize_variance_sum(gs, 6, 5000, 1e-6, 99);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_restart == b.best_restart);
  CHECK((a.best_state.amplitudes() - b.best_state.amplitudes()).norm() == 0.0);
  const MinimizeResult flat = minimize_variance_sum(build_gellmann(3), 5, 100, 1e-6, 0);
  CHECK(flat.best_restart == 0);
}

TEST_CASE("descent is monotone and respects the iteration cap") {
  const GeneratorSet gs = build_su2(6);
  MinimizeOptions opt;
  opt.restarts = 1;
  opt.max_iters = 3;
  const MinimizeResult r = minimize_variance_sum(gs, opt);
  CHECK(r.total_iterations <= 3);
  // the start of restart 0 is a random state; three accepted steps must not increase f
  CHECK(r.best_value <= variance_sum(random_state(gs, derive_seed(0, 0)), gs) + 1e-15);
}

TEST_CASE("invalid options") {
  const GeneratorSet gs = build_su2(1);
  CHECK_THROWS_AS(minimize_variance_sum(gs, 0, 10, 1e-6, 0), std::invalid_argument);
  CHECK_THROWS_AS(minimize_variance_sum(gs, 1, 10, 0.0, 0), std::invalid_argument);
}
