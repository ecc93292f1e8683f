#include "liesur/sur.hpp"
#include "liesur/weights.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>

using namespace liesur;

namespace {

// exp(-i theta H) |psi> through the spectral decomposition of Hermitian H.
StateVector rotate(const StateVector& s, const ComplexMatrix& h, double theta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const ComplexVector phases = (es.eigenvalues().cast<Complex>() * Complex(0, -theta)).array().exp();
  return StateVector::normalized(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * s.amplitudes());
}

} // namespace

TEST_CASE("saturating states meet the bound") {
  for (const char* text : {"wh:cutoff=64", "su2:j=1/2", "su2:j=3/2", "su2:j=4", "su11:kappa=1/4,cutoff=64",
                           "su11:kappa=3/2,cutoff=64", "su:3", "su:4", "su:5"}) {
    CAPTURE(text);
    const AlgebraSpec spec = AlgebraSpec::parse(text);
    const GeneratorSet gs = build(spec);
    const SurReport r = check_sur(saturating_state(gs), gs);
    CHECK(std::abs(r.margin) < 1e-9);
    CHECK(r.satisfied);
    CHECK(r.bound_exact == sur_bound_exact(spec));
  }
  CHECK(saturating_state(build_su2(3)).amplitudes()[3] == Complex(1.0));
}

TEST_CASE("reported bounds use the printed conventions") {
  CHECK(sur_bound_exact(AlgebraSpec::wh(64)) == Rational(1));
  CHECK(sur_bound_exact(AlgebraSpec::su2(3)) == Rational(3, 2));
  CHECK(sur_bound_exact(AlgebraSpec::su11(Rational(3, 4), 64)) == Rational(3, 4));
  CHECK(sur_bound_exact(AlgebraSpec::sun(4)) == Rational(3));
  CHECK(sur_bound_exact(AlgebraSpec::sun(3, {1, 1})) == Rational(4));
}

TEST_CASE("variance sum examples") {
  const GeneratorSet wh = build_wh(64);
  CHECK(variance_sum(weight_basis_state(wh, 0), wh) == doctest::Approx(1.0).epsilon(1e-14));
  const GeneratorSet spin1 = build_su2(2);
  // |m=1> has Jz = 0: dJz^2 = 0 and <Jx^2> + <Jy^2> = j(j+1) = 2
  CHECK(variance_sum(weight_basis_state(spin1, 1), spin1) == doctest::Approx(2.0).epsilon(1e-14));
  const GeneratorSet k = build_su11(Rational(3, 2), 64);
  const SurReport r = check_sur(weight_basis_state(k, 0), k);
  CHECK(r.lhs == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(r.bound == 1.5);
  REQUIRE(r.tail_mass.has_value());
  CHECK(*r.tail_mass == 0.0);
}

TEST_CASE("every pure state of a defining representation saturates") {
  for (int n = 2; n <= 5; ++n) {
    const GeneratorSet g = build_gellmann(n);
    const double bound = boost::rational_cast<double>(sur_bound_exact(g.spec));
    CHECK(bound == double(n - 1));
    for (int t = 0; t < 200; ++t) {
      const SurReport r = check_sur(haar_random_state(n, derive_seed(n, t)), g);
      CHECK(std::abs(r.lhs - bound) < 1e-9);
    }
  }
}

TEST_CASE("spin-coherent states saturate") {
  const GeneratorSet s = build_su2(4);
  const ComplexMatrix axis = 0.3 * s.generator(0) - 0.8 * s.generator(1) + 0.52 * s.generator(2);
  for (double theta : {0.3, 1.1, 2.7}) {
    const StateVector c = rotate(saturating_state(s), axis / 2.0, theta);
    const SurReport r = check_sur(c, s);
    CHECK(r.bound == 2.0);
    CHECK(std::abs(r.margin) < 1e-9);
  }
}

TEST_CASE("random states satisfy every relation") {
  for (const char* text : {"wh:cutoff=64", "su2:j=1", "su2:j=7/2", "su11:kappa=1/4,cutoff=200", "su11:kappa=1,cutoff=200",
                           "su:3", "su:5"}) {
    CAPTURE(text);
    const GeneratorSet gs = build(AlgebraSpec::parse(text));
    for (int t = 0; t < 300; ++t) {
      const SurReport r = check_sur(random_state(gs, derive_seed(11, t)), gs);
      CHECK(r.margin >= -1e-9);
      CHECK(r.satisfied == (r.margin >= -1e-9));
    }
  }
}

TEST_CASE("strong su(1,1) relation") {
  const GeneratorSet half = build_su11(Rational(1, 2), 64);
  const SurReport r0 = check_su11_strong(weight_basis_state(half, 0), half);
  CHECK(r0.lhs == doctest::Approx(0.25));
  CHECK(r0.bound == 0.25);
  CHECK(r0.relation == "su11_strong");
  const GeneratorSet one = build_su11(Rational(1), 64);
  const SurReport r3 = check_su11_strong(weight_basis_state(one, 3), one);
  CHECK(r3.lhs == doctest::Approx(16.0));
  CHECK(r3.bound == 1.0);
  const GeneratorSet big = build_su11(Rational(1, 2), 200);
  double lowest = INFINITY;
  for (int t = 0; t < 1000; ++t) lowest = std::min(lowest, check_su11_strong(random_state(big, derive_seed(5, t)), big).lhs);
  CHECK(lowest >= 0.25 - 1e-9);
  CHECK_THROWS_AS(check_su11_strong(StateVector::basis(2, 0), build_su2(1)), std::invalid_argument);
}

TEST_CASE("Weyl-Heisenberg identities on random states") {
  const GeneratorSet wh = build_wh(64);
  const ComplexMatrix& x = wh.offdiag[0];
  const ComplexMatrix& p = wh.offdiag[1];
  for (int t = 0; t < 200; ++t) {
    const StateVector s = random_state(wh, derive_seed(21, t));
    const double n = expectation(s, wh.weight_operator);
    const double mx = expectation(s, x), mp = expectation(s, p);
    CHECK(std::abs(variance_sum(s, wh) - (2 * n + 1 - mx * mx - mp * mp)) < 1e-9);
    CHECK(mx * mx + mp * mp <= 2 * n + 1e-9);
  }
}

TEST_CASE("variance sum is invariant under global conjugation") {
  for (int n = 3; n <= 5; ++n) {
    const GeneratorSet g = build_gellmann(n);
    const ComplexMatrix u = haar_random_unitary(n, 100 + n);
    const GeneratorSet c = conjugate(g, u);
    for (int t = 0; t < 20; ++t) {
      const StateVector s = haar_random_state(n, derive_seed(n, t));
      const StateVector us = StateVector::normalized(u * s.amplitudes());
      CHECK(std::abs(variance_sum(us, c) - variance_sum(s, g)) < 1e-9);
    }
  }
}

TEST_CASE("tail guard") {
  const GeneratorSet wh = build_wh(20);
  CHECK(tail_levels(20) == 2);
  CHECK(tail_levels(64) == 7);
  CHECK(tail_levels(5) == 1);
  ComplexVector v = ComplexVector::Zero(20);
  v[0] = 1.0;
  v[19] = 1e-3;
  const StateVector leaky = StateVector::normalized(v);
  CHECK(tail_mass(leaky) > 1e-8);
  CHECK_THROWS_AS(variance_sum(leaky, wh), TruncationError);
  CHECK_THROWS_AS(check_sur(leaky, wh), TruncationError);
  CHECK_NOTHROW(variance_sum(leaky, build_su2(19)));  // compact: no guard
  CHECK_THROWS_AS(variance_sum(StateVector::basis(3, 0), wh), DimensionError);
}

TEST_CASE("Robertson contrast") {
  const GeneratorSet s = build_su2(2);
  const ComplexMatrix jx = s.generator(0) / 2.0, jy = s.generator(1) / 2.0;
  const RobertsonResult top = robertson_product(weight_basis_state(s, 2), jx, jy);
  CHECK(top.product == doctest::Approx(0.25));
  CHECK(top.bound == doctest::Approx(0.25));
  // equal weights on m = 0 and m = 2 with a relative phase i: <Jz> = 0 yet both variances are 1/2
  ComplexVector v = ComplexVector::Zero(3);
  v[0] = 1.0;
  v[2] = Complex(0.0, 1.0);
  const RobertsonResult flat = robertson_product(StateVector::normalized(v), jx, jy);
  CHECK(flat.bound < 1e-15);
  CHECK(flat.product == doctest::Approx(0.25));
  // with a real relative phase one of the two variances vanishes and the product collapses too
  v[2] = 1.0;
  CHECK(robertson_product(StateVector::normalized(v), jx, jy).product < 1e-15);
  const RobertsonResult same = robertson_product(haar_random_state(3, 1), jx, jx);
  CHECK(same.bound == 0.0);
  CHECK(same.product >= 0.0);
  ComplexMatrix bad = ComplexMatrix::Zero(3, 3);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(robertson_product(weight_basis_state(s, 0), bad, jx), NotHermitianError);
}

TEST_CASE("random states are reproducible and tail safe") {
  const GeneratorSet k = build_su11(Rational(1, 2), 40);
  const StateVector a = random_state(k, 77), b = random_state(k, 77);
  CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  CHECK(a.amplitudes().tail(20).norm() == 0.0);
  CHECK((random_state(k, 78).amplitudes() - a.amplitudes()).norm() > 0.1);
}

TEST_CASE("measurement sampling") {
  SUBCASE("eigenstate gives a constant record") {
    const GeneratorSet s = build_su2(2);
    const SampleResult r = sample_observable(weight_basis_state(s, 2), s.generator(2), 1000, 3);
    for (double x : r.samples) CHECK(x == doctest::Approx(2.0));
    CHECK(r.variance == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("vacuum quadrature") {
    const GeneratorSet wh = build_wh(64);
    const SampleResult r = sample_observable(weight_basis_state(wh, 0), wh.offdiag[0], 100000, 4);
    CHECK(std::abs(r.variance - 0.5) < 5 * r.standard_error);
    CHECK(r.standard_error > 0.0);
    // Gaussian quadrature: Var(s^2) ~ 2 sigma^4 / n, and the plug-in estimate agrees
    CHECK(r.standard_error == doctest::Approx(0.5 * std::sqrt(2.0 / 1e5)).epsilon(0.05));
    CHECK(r.sample_standard_error == doctest::Approx(r.standard_error).epsilon(0.05));
  }
  SUBCASE("spin-1/2 Jx outcomes split evenly") {
    const GeneratorSet s = build_su2(1);
    const SampleResult r = sample_observable(weight_basis_state(s, 1), s.generator(0) / 2.0, 100000, 5);
    long plus = 0;
    for (double x : r.samples) {
      CHECK(std::abs(std::abs(x) - 0.5) < 1e-12);
      plus += x > 0;
    }
    CHECK(std::abs(plus / 1e5 - 0.5) < 0.01);
    // two equally likely outcomes +-1/2: Var(s^2) = 2 sigma^4 / (n (n-1)) with sigma^2 = 1/4
    CHECK(r.standard_error == doctest::Approx(0.25 * std::sqrt(2.0 / (1e5 * (1e5 - 1)))).epsilon(1e-9));
    REQUIRE(r.probabilities.size() == 2);
    CHECK(r.probabilities[0] == doctest::Approx(0.5));
  }
  SUBCASE("input validation") {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(sample_observable(StateVector::basis(2, 0), bad, 10, 0), NotHermitianError);
    CHECK_THROWS_AS(sample_observable(StateVector::basis(2, 0), ComplexMatrix::Identity(2, 2), 1, 0), std::invalid_argument);
  }
  SUBCASE("same seed, same record") {
    const GeneratorSet wh = build_wh(32);
    const StateVector s = random_state(wh, 8);
    CHECK(sample_observable(s, wh.offdiag[1], 500, 9).samples == sample_observable(s, wh.offdiag[1], 500, 9).samples);
  }
}
