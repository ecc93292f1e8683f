#include "liesur/sur.hpp"

#include <cmath>
#include <sstream>

namespace liesur {

namespace {

void require_dim(const StateVector& s, const GeneratorSet& gs, const char* op) {
  if (s.dim() != gs.rep_dim) {
    std::ostringstream msg;
    msg << op << ": state dimension " << s.dim() << " does not match representation dimension " << gs.rep_dim;
    throw DimensionError(msg.str());
  }
}

SurReport make_report(std::string relation, const GeneratorSet& gs, const StateVector& s, double lhs,
                      const Rational& bound, std::optional<std::uint64_t> seed) {
  SurReport r;
  r.relation = std::move(relation);
  r.spec = gs.spec;
  r.lhs = lhs;
  r.bound_exact = bound;
  r.bound = boost::rational_cast<double>(bound);
  r.margin = lhs - r.bound;
  r.satisfied = r.margin >= -tol::kMargin;
  if (gs.spec.truncated()) r.tail_mass = tail_mass(s);
  r.seed = seed;
  return r;
}

} // namespace

Index tail_levels(Index dim) { return std::max<Index>(1, (dim + 9) / 10); }

double tail_mass(const StateVector& s) {
  const Index k = tail_levels(s.dim());
  return s.amplitudes().tail(k).squaredNorm();
}

void require_tail_safe(const StateVector& s, const GeneratorSet& gs) {
  if (!gs.spec.truncated()) return;
  const double mass = tail_mass(s);
  if (mass >= kTailMassLimit) {
    std::ostringstream msg;
    msg << "truncation guard: probability " << mass << " in the top " << tail_levels(s.dim()) << " of "
        << s.dim() << " levels of " << gs.spec.to_string() << " exceeds " << kTailMassLimit
        << "; raise the cutoff or use a state supported on lower levels";
    throw TruncationError(msg.str());
  }
}

std::vector<double> objective_weights(const GeneratorSet& gs) {
  switch (gs.spec.kind) {
    case AlgebraKind::WH: return std::vector<double>(gs.size(), 1.0);
    case AlgebraKind::SU2: return std::vector<double>(gs.size(), 0.25);
    case AlgebraKind::SU11: return {gs.signature.begin(), gs.signature.end()};
    case AlgebraKind::SUN: return std::vector<double>(gs.size(), 0.5);
  }
  throw std::logic_error("unreachable");
}

Rational sur_bound_exact(const AlgebraSpec& spec) {
  switch (spec.kind) {
    case AlgebraKind::WH: return Rational(1);
    case AlgebraKind::SU2: return Rational(spec.two_j, 2);
    case AlgebraKind::SU11: return spec.kappa;
    case AlgebraKind::SUN: return sur_bound(spec.n, DynkinLabel(spec.dynkin_label()));
  }
  throw std::logic_error("unreachable");
}

double variance_sum(const StateVector& s, const GeneratorSet& gs) {
  require_dim(s, gs, "variance_sum");
  require_tail_safe(s, gs);
  const auto w = objective_weights(gs);
  double total = 0.0;
  for (std::size_t a = 0; a < gs.size(); ++a) {
    const auto mom = detail::moments_unchecked(s.amplitudes(), gs.generator(a));
    total += w[a] * detail::clip_variance(mom.second - mom.mean * mom.mean);
  }
  return total;
}

SurReport check_sur(const StateVector& s, const GeneratorSet& gs, std::optional<std::uint64_t> seed) {
  const double lhs = variance_sum(s, gs);
  return make_report("variance_sum", gs, s, lhs, sur_bound_exact(gs.spec), seed);
}

SurReport check_su11_strong(const StateVector& s, const GeneratorSet& gs, std::optional<std::uint64_t> seed) {
  if (gs.spec.kind != AlgebraKind::SU11) throw std::invalid_argument("check_su11_strong: requires an su(1,1) algebra");
  require_dim(s, gs, "check_su11_strong");
  require_tail_safe(s, gs);
  const double kx = detail::moments_unchecked(s.amplitudes(), gs.offdiag[0]).mean;
  const double ky = detail::moments_unchecked(s.amplitudes(), gs.offdiag[1]).mean;
  const double kz = detail::moments_unchecked(s.amplitudes(), gs.cartan[0]).mean;
  const Rational kappa = gs.spec.kappa;
  return make_report("su11_strong", gs, s, kz * kz - kx * kx - ky * ky, kappa * kappa, seed);
}

RobertsonResult robertson_product(const StateVector& s, const ComplexMatrix& a, const ComplexMatrix& b) {
  require_hermitian(a, "robertson_product(A)");
  require_hermitian(b, "robertson_product(B)");
  const Complex comm = s.amplitudes().dot(commutator(a, b) * s.amplitudes());
  return {variance(s, a) * variance(s, b), std::norm(comm) / 4.0};
}

StateVector saturating_state(const GeneratorSet& gs) {
  switch (gs.spec.kind) {
    case AlgebraKind::WH:
    case AlgebraKind::SU11:
    case AlgebraKind::SUN: return weight_basis_state(gs, 0);
    case AlgebraKind::SU2: return weight_basis_state(gs, gs.spec.two_j);
  }
  throw std::logic_error("unreachable");
}

StateVector haar_random_state(Index dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("haar_random_state: dim must be positive");
  if (dim == 1) return StateVector::basis(1, 0);
  Rng rng(seed);
  while (true) {
    ComplexVector v = complex_gaussian(dim, rng);
    if (v.norm() > 0.0) return StateVector::normalized(std::move(v));
  }
}

StateVector random_state(const GeneratorSet& gs, std::uint64_t seed) {
  if (!gs.spec.truncated()) return haar_random_state(gs.rep_dim, seed);
  const Index support = gs.rep_dim / 2;
  ComplexVector v = ComplexVector::Zero(gs.rep_dim);
  v.head(support) = haar_random_state(support, seed).amplitudes();
  return StateVector(std::move(v));
}

SampleResult sample_observable(const StateVector& s, const ComplexMatrix& m, std::int64_t shots, std::uint64_t seed) {
  require_hermitian(m, "sample_observable");
  if (m.rows() != s.dim()) throw DimensionError("sample_observable: dimension mismatch");
  if (shots < 2) throw std::invalid_argument("sample_observable: need at least 2 shots");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m);
  if (eig.info() != Eigen::Success) throw NumericalError("sample_observable: eigensolver failed");
  const auto& vals = eig.eigenvalues();
  const auto& vecs = eig.eigenvectors();
  const double residual = (m * vecs - vecs * vals.cast<Complex>().asDiagonal()).colwise().norm().maxCoeff();
  if (residual >= 1e-8) throw NumericalError("sample_observable: eigen-decomposition residual too large");

  SampleResult out;
  out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  const ComplexVector overlaps = vecs.adjoint() * s.amplitudes();
  out.probabilities.resize(static_cast<std::size_t>(overlaps.size()));
  for (Index k = 0; k < overlaps.size(); ++k) out.probabilities[static_cast<std::size_t>(k)] = std::norm(overlaps[k]);

  Rng rng(seed);
  std::discrete_distribution<std::size_t> born(out.probabilities.begin(), out.probabilities.end());
  out.samples.resize(static_cast<std::size_t>(shots));
  double sum = 0.0;
  for (auto& x : out.samples) {
    x = out.eigenvalues[born(rng)];
    sum += x;
  }
  const double n = static_cast<double>(shots);
  out.mean = sum / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : out.samples) {
    const double d = (x - out.mean) * (x - out.mean);
    m2 += d;
    m4 += d * d;
  }
  out.variance = m2 / (n - 1.0);
  m4 /= n;

  // Var(s^2) = (mu4 - sigma^4 (n-3)/(n-1)) / n, once with the Born moments and once plug-in.
  auto var_of_var = [n](double mu4, double sigma2) { return (mu4 - sigma2 * sigma2 * (n - 3.0) / (n - 1.0)) / n; };
  double mu = 0.0;
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) mu += out.probabilities[k] * out.eigenvalues[k];
  double sigma2 = 0.0, mu4 = 0.0;
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
    const double d = (out.eigenvalues[k] - mu) * (out.eigenvalues[k] - mu);
    sigma2 += out.probabilities[k] * d;
    mu4 += out.probabilities[k] * d * d;
  }
  out.standard_error = std::sqrt(std::max(0.0, var_of_var(mu4, sigma2)));
  out.sample_standard_error = std::sqrt(std::max(0.0, var_of_var(m4, out.variance)));
  return out;
}

} // namespace liesur
