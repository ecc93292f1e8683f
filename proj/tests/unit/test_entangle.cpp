#include "liesur/entangle.hpp"
#include "liesur/sur.hpp"

#include <doctest.h>

#include <cmath>

using namespace liesur;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("lifted operators act on the right tensor factor") {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  const ComplexMatrix z0 = lift(z, 0, 2), z1 = lift(z, 1, 2);
  CHECK(z0(2, 2) == Complex(-1));  // |10>: first particle is the most significant index
  CHECK(z1(2, 2) == Complex(1));
  CHECK_THROWS_AS(lift(z, 2, 2), std::out_of_range);
}

TEST_CASE("collective operators") {
  const CollectiveSet spin = collective_operators(2, 2);
  // Jz = Sigma_z / 2 on |up up>; |up> is index 0 in the Gell-Mann basis for n = 2
  CHECK(expectation(StateVector::basis(4, 0), spin.cartan[0] / 2.0) == doctest::Approx(1.0));
  const CollectiveSet su3 = collective_operators(3, 2);
  CHECK(expectation(StateVector::basis(9, 0), su3.cartan[0]) == doctest::Approx(2.0));  // h1 on |100>|100>
  CHECK(su3.dim == 9);
  CHECK(su3.offdiag.size() == 6);
  CHECK_THROWS_AS(collective_operators(4, 7), std::invalid_argument);
  CHECK_THROWS_AS(collective_operators(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(collective_operators(build_su2(2), 2), std::invalid_argument);
}

TEST_CASE("collective generators close like the single-particle ones") {
  const GeneratorSet single = build_gellmann(3);
  const CollectiveSet c = collective_operators(3, 2);
  const auto all_single = single.all();
  std::vector<ComplexMatrix> all_c = c.offdiag;
  all_c.insert(all_c.end(), c.cartan.begin(), c.cartan.end());
  // [e_a, e_b] = sum_c f_abc e_c with f read off by the trace form
  for (std::size_t a = 0; a < all_single.size(); ++a)
    for (std::size_t b = a + 1; b < all_single.size(); ++b) {
      const ComplexMatrix s = commutator(all_single[a], all_single[b]);
      ComplexMatrix expected = ComplexMatrix::Zero(c.dim, c.dim);
      for (std::size_t k = 0; k < all_single.size(); ++k) expected += (s * all_single[k]).trace() / 2.0 * all_c[k];
      CHECK(max_abs(commutator(all_c[a], all_c[b]) - expected) < 1e-10);
    }
}

TEST_CASE("Slater states") {
  const StateVector s2 = slater_state(2);
  CHECK(s2[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s2[2].real() == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(std::abs(s2[0]) == 0.0);
  const StateVector s3 = slater_state(3);
  int nonzero = 0;
  for (Index i = 0; i < 27; ++i)
    if (std::abs(s3[i]) > 0) {
      ++nonzero;
      CHECK(std::abs(s3[i]) == doctest::Approx(1 / std::sqrt(6.0)));
    }
  CHECK(nonzero == 6);
  CHECK(s3[5].real() > 0);  // |012>
  CHECK(s3[7].real() < 0);  // |021>
  for (int n = 2; n <= 4; ++n) {
    const StateVector s = slater_state(n);
    const CollectiveSet ops = collective_operators(n, n);
    for (const auto& e : ops.cartan) CHECK((e * s.amplitudes()).norm() < 1e-10);
    for (const auto& e : ops.offdiag) CHECK((e * s.amplitudes()).norm() < 1e-10);
  }
}

TEST_CASE("worked witness examples") {
  SUBCASE("su(3) Slater, N = 3") {
    const WitnessReport w = witness(slater_state(3), 3, 3);
    CHECK(std::abs(w.lhs) < 1e-12);
    CHECK(w.rhs == doctest::Approx(-12.0));
    CHECK_FALSE(w.violated);
    CHECK(std::abs(w.total_variance) < 1e-12);
    CHECK(w.total_variance_bound_exact == Rational(6));
    CHECK(w.total_violated);
  }
  SUBCASE("su(3) product, N = 2 sits on the boundary") {
    const WitnessReport w = witness(StateVector::basis(9, 0), 3, 2);
    CHECK(std::abs(w.lhs) < 1e-12);
    CHECK(std::abs(w.rhs) < 1e-12);
    CHECK_FALSE(w.violated);
  }
  SUBCASE("spin singlet") {
    const WitnessReport w = witness(slater_state(2), 2, 2);
    CHECK(std::abs(w.total_variance) < 1e-12);
    CHECK(w.total_variance_bound == 2.0);
    CHECK(w.total_violated);
  }
  CHECK_THROWS_AS(witness(StateVector::basis(8, 0), 3, 2), DimensionError);
}

TEST_CASE("random product states are never flagged") {
  for (int particles : {2, 3}) {
    const CollectiveSet ops = collective_operators(3, particles);
    double worst = INFINITY, worst_total = INFINITY;
    for (int t = 0; t < 1000; ++t) {
      const WitnessReport w = witness(random_product_state(3, particles, derive_seed(particles, t)), ops);
      worst = std::min(worst, w.margin);
      worst_total = std::min(worst_total, w.total_margin);
    }
    CHECK(worst >= -1e-9);
    CHECK(worst_total >= -1e-9);
  }
}

TEST_CASE("witness verdicts under a global unitary") {
  const GeneratorSet single = build_gellmann(3);
  const CollectiveSet plain = collective_operators(3, 3);
  const CollectiveSet rotated = collective_operators(conjugate(single, haar_random_unitary(3, 4)), 3);
  // the total variance is a Casimir-type quantity and does not see the basis at all
  for (int t = 0; t < 20; ++t) {
    const StateVector s = haar_random_state(27, derive_seed(9, t));
    const WitnessReport a = witness(s, plain), b = witness(s, rotated);
    CHECK(std::abs(a.total_variance - b.total_variance) < 1e-9);
    CHECK(a.total_violated == b.total_violated);
  }
  // the Cartan/off-diagonal split does, but separable states stay unflagged in every rotated basis
  for (int t = 0; t < 100; ++t) {
    const StateVector s = random_product_state(3, 3, derive_seed(8, t));
    const WitnessReport a = witness(s, plain), b = witness(s, rotated);
    CHECK(a.margin >= -1e-9);
    CHECK(b.margin >= -1e-9);
    CHECK(a.violated == b.violated);
  }
  // the Slater state is invariant under U x U x U, so even its margin is unchanged
  const WitnessReport a = witness(slater_state(3), plain), b = witness(slater_state(3), rotated);
  CHECK(std::abs(a.margin - b.margin) < 1e-9);
  CHECK(a.violated == b.violated);
}

TEST_CASE("operator identities") {
  const IdentityReport r3 = identity_checks(3, 1000, 0);
  CHECK(r3.cartan_square == Rational(4, 3));
  CHECK(r3.offdiag_square == Rational(4));
  CHECK(r3.bloch_expected == Rational(4, 3));
  CHECK(r3.constant_per_particle == Rational(4));
  CHECK(r3.bloch_max_deviation < 1e-9);
  const IdentityReport r4 = identity_checks(4, 1000, 1);
  CHECK(r4.cartan_square == Rational(3, 2));
  CHECK(r4.bloch_expected == Rational(3, 2));
  CHECK(r4.constant_per_particle == Rational(6));
  CHECK(r4.bloch_max_deviation < 1e-9);
  const IdentityReport r5 = identity_checks(5, 1000, 2);
  CHECK(r5.cartan_square == Rational(8, 5));
  CHECK(r5.constant_per_particle == Rational(8));
  CHECK(r5.bloch_max_deviation < 1e-9);
  for (int n = 2; n <= 6; ++n) {
    const IdentityReport r = identity_checks(n, 10, 0);
    CHECK(r.offdiag_square == Rational(2 * (n - 1)));
    CHECK(r.numeric_deviation < 1e-10);
  }
}

TEST_CASE("separable mixtures") {
  const ConvexityReport r = mixed_state_convexity_check(3, 2, 100, 0);
  CHECK(r.passed);
  CHECK(r.min_variance_gap >= -1e-9);
  CHECK(r.min_witness_margin >= -1e-9);
  CHECK(r.min_total_margin >= -1e-9);
  const CollectiveSet ops = collective_operators(2, 2);
  const WitnessReport mixed = witness(ComplexMatrix(ComplexMatrix::Identity(4, 4) / 4.0), ops);
  CHECK_FALSE(mixed.violated);
  CHECK_FALSE(mixed.total_violated);
  // a mixture of a state with itself is the state
  const StateVector s = random_product_state(3, 2, 5);
  const CollectiveSet ops3 = collective_operators(3, 2);
  const ComplexMatrix rho = 0.3 * density_matrix(s) + 0.7 * density_matrix(s);
  CHECK(std::abs(variance(rho, ops3.cartan[0]) - variance(s, ops3.cartan[0])) < 1e-12);
  CHECK(std::abs(witness(rho, ops3).margin - witness(s, ops3).margin) < 1e-10);
}
