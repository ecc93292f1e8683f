#pragma once

// Dense complex operator and state arithmetic shared by every other module.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace liesur {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Square dense complex matrix. Square-ness is checked by the operations that
/// consume it, not by the type.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kStructural = 1e-10;   // operator identities
inline constexpr double kMargin = 1e-9;        // inequality margins
inline constexpr double kOptimizer = 1e-6;     // optimizer convergence
inline constexpr double kNorm = 1e-12;         // state normalization
inline constexpr double kVarianceClip = 1e-12; // round-off allowance for variances
} // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit-norm vector of probability amplitudes.
class StateVector {
 public:
  /// Takes amplitudes that are already normalized; throws if |psi|^2 deviates
  /// from 1 by more than tol::kNorm.
  explicit StateVector(ComplexVector amplitudes);

  /// Rescales `raw` to unit norm. Throws NumericalError on a zero vector.
  static StateVector normalized(ComplexVector raw);
  static StateVector basis(Index dim, Index index);

  Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Index i) const { return amplitudes_[i]; }

 private:
  struct Trusted {};
  StateVector(ComplexVector amplitudes, Trusted) : amplitudes_(std::move(amplitudes)) {}
  ComplexVector amplitudes_;
};

/// max_ij |M - M^dagger|_ij
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kStructural);

/// Throws NotHermitianError / DimensionError with `what` naming the operand.
void require_square(const ComplexMatrix& m, const std::string& what);
void require_hermitian(const ComplexMatrix& m, const std::string& what);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// <s|m|s> for Hermitian m; the imaginary part must vanish within 1e-10.
double expectation(const StateVector& s, const ComplexMatrix& m);
/// <m^2> - <m>^2, clipped to zero inside [-1e-12, 0); NumericalError below that.
double variance(const StateVector& s, const ComplexMatrix& m);

/// Tr(rho m) and Tr(rho m^2) - Tr(rho m)^2 for a density matrix rho.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& m);
double variance(const ComplexMatrix& rho, const ComplexMatrix& m);

/// |s><s|
ComplexMatrix density_matrix(const StateVector& s);

namespace detail {
// Unchecked kernels for callers whose operands are Hermitian by construction.
// For Hermitian m: <m> = Re<s|m s>, <m^2> = |m s|^2.
struct Moments {
  double mean;
  double second;
};
Moments moments_unchecked(const ComplexVector& s, const ComplexMatrix& m);
double clip_variance(double raw);
} // namespace detail

// Random numbers. All randomness is driven by explicit 64-bit seeds.
using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a batch seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Vector of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
ComplexVector complex_gaussian(Index dim, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
ComplexMatrix haar_random_unitary(Index dim, std::uint64_t seed);

} // namespace liesur
