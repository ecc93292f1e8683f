#include "liesur/entangle.hpp"

#include "liesur/sur.hpp"
#include "liesur/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace liesur {

namespace {

Index checked_power(int n, int particles) {
  if (n < 2) throw std::invalid_argument("collective operators: n must be at least 2");
  if (particles < 1) throw std::invalid_argument("collective operators: need at least one particle");
  Index dim = 1;
  for (int i = 0; i < particles; ++i) {
    dim *= n;
    if (dim > kMaxCollectiveDim) {
      std::ostringstream msg;
      msg << "collective operators: n^N = " << n << "^" << particles << " exceeds the cap of " << kMaxCollectiveDim;
      throw std::invalid_argument(msg.str());
    }
  }
  return dim;
}

ComplexMatrix collective(const ComplexMatrix& single, int particles) {
  ComplexMatrix sum = lift(single, 0, particles);
  for (int i = 1; i < particles; ++i) sum += lift(single, i, particles);
  return sum;
}

template <typename Moments>
WitnessReport assemble(const CollectiveSet& ops, Moments&& moments) {
  WitnessReport r;
  r.n = ops.n;
  r.particles = ops.particles;
  const int n = ops.n, big_n = ops.particles;
  double cartan_var = 0.0, offdiag_second = 0.0, total = 0.0;
  for (const auto& e : ops.cartan) {
    const auto [mean, second] = moments(e);
    const double v = detail::clip_variance(second - mean * mean);
    cartan_var += v;
    total += v;
  }
  for (const auto& e : ops.offdiag) {
    const auto [mean, second] = moments(e);
    offdiag_second += second;
    total += detail::clip_variance(second - mean * mean);
  }
  r.lhs = (big_n - 1) * cartan_var;
  r.rhs = offdiag_second - 2.0 * (n - 1) * big_n;
  r.margin = r.lhs - r.rhs;
  r.violated = r.margin < -tol::kMargin;
  r.total_variance = 0.5 * total;
  r.total_variance_bound_exact = Rational(big_n) * sur_bound(n, DynkinLabel::fundamental(n));
  r.total_variance_bound = boost::rational_cast<double>(r.total_variance_bound_exact);
  r.total_margin = r.total_variance - r.total_variance_bound;
  r.total_violated = r.total_margin < -tol::kMargin;
  return r;
}

} // namespace

ComplexMatrix lift(const ComplexMatrix& single, int site, int particles) {
  require_square(single, "lift");
  if (site < 0 || site >= particles) throw std::out_of_range("lift: site out of range");
  const Index d = single.rows();
  Index left = 1, right = 1;
  for (int i = 0; i < site; ++i) left *= d;
  for (int i = site + 1; i < particles; ++i) right *= d;
  return kron(kron(ComplexMatrix::Identity(left, left), single), ComplexMatrix::Identity(right, right));
}

CollectiveSet collective_operators(const GeneratorSet& single, int particles) {
  if (single.spec.kind != AlgebraKind::SUN) throw std::invalid_argument("collective operators: need an su(n) basis");
  CollectiveSet out;
  out.n = single.spec.n;
  out.particles = particles;
  out.dim = checked_power(out.n, particles);
  for (const auto& e : single.cartan) out.cartan.push_back(collective(e, particles));
  for (const auto& e : single.offdiag) out.offdiag.push_back(collective(e, particles));
  return out;
}

CollectiveSet collective_operators(int n, int particles) {
  checked_power(n, particles);
  return collective_operators(build_gellmann(n), particles);
}

WitnessReport witness(const StateVector& s, const CollectiveSet& ops) {
  if (s.dim() != ops.dim) throw DimensionError("witness: state dimension does not match n^N");
  return assemble(ops, [&](const ComplexMatrix& e) {
    const auto m = detail::moments_unchecked(s.amplitudes(), e);
    return std::pair{m.mean, m.second};
  });
}

WitnessReport witness(const StateVector& s, int n, int particles) {
  if (s.dim() != checked_power(n, particles)) throw DimensionError("witness: state dimension does not match n^N");
  return witness(s, collective_operators(n, particles));
}

WitnessReport witness(const ComplexMatrix& rho, const CollectiveSet& ops) {
  require_hermitian(rho, "witness(rho)");
  if (rho.rows() != ops.dim) throw DimensionError("witness: density matrix dimension does not match n^N");
  if (std::abs(rho.trace().real() - 1.0) > tol::kStructural) throw NumericalError("witness: density matrix trace is not 1");
  return assemble(ops, [&](const ComplexMatrix& e) {
    const ComplexMatrix re = rho * e;
    return std::pair{re.trace().real(), (re * e).trace().real()};
  });
}

StateVector slater_state(int n) {
  if (n < 2) throw std::invalid_argument("slater_state: n must be at least 2");
  Index dim = 1;
  for (int i = 0; i < n; ++i) dim *= n;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double count = 1.0;
  for (int i = 2; i <= n; ++i) count *= i;
  const double amp = 1.0 / std::sqrt(count);
  ComplexVector v = ComplexVector::Zero(dim);
  do {
    // parity by counting inversions
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    Index index = 0;
    for (int p : perm) index = index * n + p;  // particle 1 is the most significant factor
    v[index] = inversions % 2 ? -amp : amp;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return StateVector::normalized(std::move(v));
}

StateVector random_product_state(int n, int particles, std::uint64_t seed) {
  if (particles < 1) throw std::invalid_argument("random_product_state: need at least one particle");
  ComplexVector v = haar_random_state(n, derive_seed(seed, 0)).amplitudes();
  for (int i = 1; i < particles; ++i)
    v = kron(v, haar_random_state(n, derive_seed(seed, static_cast<std::uint64_t>(i))).amplitudes());
  return StateVector::normalized(std::move(v));
}

IdentityReport identity_checks(int n, int bloch_trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("identity_checks: n must be at least 2");
  IdentityReport r;
  r.n = n;
  const auto exact = exact_gellmann(n);
  const std::size_t num_offdiag = static_cast<std::size_t>(n) * (n - 1);
  ExactMatrix cartan_sum(n), offdiag_sum(n);
  for (std::size_t a = 0; a < exact.size(); ++a) {
    ExactMatrix& target = a < num_offdiag ? offdiag_sum : cartan_sum;
    target = target + exact[a] * exact[a];
  }
  if (!cartan_sum.is_rational_identity_multiple(r.cartan_square))
    throw std::logic_error("identity_checks: Cartan square sum is not a multiple of the identity");
  if (!offdiag_sum.is_rational_identity_multiple(r.offdiag_square))
    throw std::logic_error("identity_checks: off-diagonal square sum is not a multiple of the identity");
  r.bloch_expected = Rational(2 * (n - 1), n);
  r.constant_per_particle = Rational(2 * (n - 1));

  const GeneratorSet gs = build_gellmann(n);
  ComplexMatrix cs = ComplexMatrix::Zero(n, n), os = ComplexMatrix::Zero(n, n);
  for (const auto& e : gs.cartan) cs += e * e;
  for (const auto& e : gs.offdiag) os += e * e;
  const auto ident = ComplexMatrix::Identity(n, n);
  r.numeric_deviation =
      std::max((cs - boost::rational_cast<double>(r.cartan_square) * ident).cwiseAbs().maxCoeff(),
               (os - boost::rational_cast<double>(r.offdiag_square) * ident).cwiseAbs().maxCoeff());

  const double expected = boost::rational_cast<double>(r.bloch_expected);
  r.bloch_trials = bloch_trials;
  for (int t = 0; t < bloch_trials; ++t) {
    const StateVector s = haar_random_state(n, derive_seed(seed, static_cast<std::uint64_t>(t)));
    double sum = 0.0;
    for (std::size_t a = 0; a < gs.size(); ++a) {
      const double mean = detail::moments_unchecked(s.amplitudes(), gs.generator(a)).mean;
      sum += mean * mean;
    }
    r.bloch_max_deviation = std::max(r.bloch_max_deviation, std::abs(sum - expected));
  }
  return r;
}

ConvexityReport mixed_state_convexity_check(int n, int particles, int trials, std::uint64_t seed) {
  const CollectiveSet ops = collective_operators(n, particles);
  ConvexityReport r;
  r.trials = trials;
  r.min_variance_gap = r.min_witness_margin = r.min_total_margin = INFINITY;
  const ComplexMatrix& probe = ops.cartan.front();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int components = 2 + static_cast<int>(rng() % 3);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(static_cast<std::size_t>(components));
    for (auto& w : weights) w = expo(rng);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    ComplexMatrix rho = ComplexMatrix::Zero(ops.dim, ops.dim);
    double weighted_var = 0.0;
    for (int c = 0; c < components; ++c) {
      const double p = weights[static_cast<std::size_t>(c)] / total;
      const StateVector psi = random_product_state(n, particles, rng());
      rho += p * density_matrix(psi);
      const auto m = detail::moments_unchecked(psi.amplitudes(), probe);
      weighted_var += p * detail::clip_variance(m.second - m.mean * m.mean);
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double mixed_var = variance(rho, probe);
    const WitnessReport w = witness(rho, ops);
    r.min_variance_gap = std::min(r.min_variance_gap, mixed_var - weighted_var);
    r.min_witness_margin = std::min(r.min_witness_margin, w.margin);
    r.min_total_margin = std::min(r.min_total_margin, w.total_margin);
    if (mixed_var - weighted_var < -tol::kMargin || w.violated || w.total_violated) r.passed = false;
  }
  return r;
}

} // namespace liesur
