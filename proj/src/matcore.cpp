#include "liesur/matcore.hpp"

#include <cmath>
#include <sstream>

namespace liesur {

namespace {

void require_same_dim(Index a, Index b, const char* op) {
  if (a != b) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

} // namespace

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("StateVector: empty amplitude vector");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kNorm) {
    std::ostringstream msg;
    msg << "StateVector: squared norm " << norm2 << " is not 1";
    throw NumericalError(msg.str());
  }
}

StateVector StateVector::normalized(ComplexVector raw) {
  if (raw.size() == 0) throw DimensionError("StateVector: empty amplitude vector");
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("StateVector: cannot normalize a zero vector");
  raw /= norm;
  return StateVector(std::move(raw), Trusted{});
}

StateVector StateVector::basis(Index dim, Index index) {
  if (dim < 1) throw DimensionError("StateVector::basis: dim must be positive");
  if (index < 0 || index >= dim) {
    std::ostringstream msg;
    msg << "StateVector::basis: index " << index << " out of range for dim " << dim;
    throw std::out_of_range(msg.str());
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v[index] = 1.0;
  return StateVector(std::move(v), Trusted{});
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  double worst = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i <= j; ++i) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) { return hermiticity_defect(m) <= tolerance; }

void require_square(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
}

void require_hermitian(const ComplexMatrix& m, const std::string& what) {
  require_square(m, what);
  const double defect = hermiticity_defect(m);
  if (defect > tol::kStructural) {
    std::ostringstream msg;
    msg << what << ": operator is not Hermitian (max |M - M^dagger| = " << defect << ")";
    throw NotHermitianError(msg.str());
  }
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  require_same_dim(a.rows(), b.rows(), "commutator");
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

namespace detail {

Moments moments_unchecked(const ComplexVector& s, const ComplexMatrix& m) {
  const ComplexVector ms = m * s;
  return {s.dot(ms).real(), ms.squaredNorm()};
}

double clip_variance(double raw) {
  if (raw >= 0.0) return raw;
  if (raw >= -tol::kVarianceClip) return 0.0;
  std::ostringstream msg;
  msg << "variance: negative value " << raw << " beyond round-off allowance";
  throw NumericalError(msg.str());
}

} // namespace detail

double expectation(const StateVector& s, const ComplexMatrix& m) {
  require_hermitian(m, "expectation");
  require_same_dim(s.dim(), m.rows(), "expectation");
  const Complex value = s.amplitudes().dot(m * s.amplitudes());
  if (std::abs(value.imag()) >= tol::kStructural)
    throw NumericalError("expectation: imaginary part exceeds 1e-10");
  return value.real();
}

double variance(const StateVector& s, const ComplexMatrix& m) {
  require_hermitian(m, "variance");
  require_same_dim(s.dim(), m.rows(), "variance");
  const auto mom = detail::moments_unchecked(s.amplitudes(), m);
  return detail::clip_variance(mom.second - mom.mean * mom.mean);
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& m) {
  require_hermitian(rho, "expectation(rho)");
  require_hermitian(m, "expectation");
  require_same_dim(rho.rows(), m.rows(), "expectation");
  const Complex value = (rho * m).trace();
  if (std::abs(value.imag()) >= tol::kStructural)
    throw NumericalError("expectation: imaginary part exceeds 1e-10");
  return value.real();
}

double variance(const ComplexMatrix& rho, const ComplexMatrix& m) {
  const double mean = expectation(rho, m);
  const double second = (rho * m * m).trace().real();
  return detail::clip_variance(second - mean * mean);
}

ComplexMatrix density_matrix(const StateVector& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ComplexVector complex_gaussian(Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

ComplexMatrix haar_random_unitary(Index dim, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) g.col(j) = complex_gaussian(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

} // namespace liesur
