#pragma once

// Weight-space arithmetic for su(n): metric (Gram) matrix of the fundamental
// weights, Weyl vector, scalar products, the sum-of-variances lower bound
// 2<Lambda|delta> and the quadratic Casimir eigenvalue. Everything here is exact.

#include "liesur/algebras.hpp"
#include "liesur/radical.hpp"

#include <span>
#include <vector>

namespace liesur {

/// Non-negative integer coordinates of a highest weight in the fundamental-weight basis.
class DynkinLabel {
 public:
  /// Throws std::invalid_argument on a negative entry or an empty label.
  explicit DynkinLabel(std::vector<int> labels);
  static DynkinLabel fundamental(int n);

  std::size_t rank() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  DynkinLabel reversed() const;
  std::vector<Rational> as_rationals() const;
  std::string to_string() const;

 private:
  std::vector<int> labels_;
};

/// G_ij = min(i,j) (n - max(i,j)) / n, 1-based, for su(n).
class MetricMatrix {
 public:
  explicit MetricMatrix(int n);
  int n() const { return n_; }
  int rank() const { return n_ - 1; }
  const Rational& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * rank() + j]; }

 private:
  int n_;
  std::vector<Rational> entries_;
};

MetricMatrix metric(int n);

/// mu . G . tau
Rational inner(std::span<const Rational> mu, std::span<const Rational> tau, const MetricMatrix& g);

/// delta = (1, ..., 1)
DynkinLabel weyl_root(int n);

/// 2 <Lambda|delta>
Rational sur_bound(int n, const DynkinLabel& lambda);

/// c2 = 2 <Lambda|delta> + <Lambda|Lambda>, normalized so that C2 = (1/2) sum_a e_a^2
/// with Tr(e_a e_b) = 2 delta_ab in the defining irrep.
Rational casimir_eigenvalue(int n, const DynkinLabel& lambda);

/// Compact kinds: (1/2) sum_a e_a^2, except SU2 which reports Jx^2 + Jy^2 + Jz^2
/// (eigenvalue j(j+1)). SU11: Kz^2 - Kx^2 - Ky^2. WH: identity.
ComplexMatrix casimir_matrix(const GeneratorSet& gs);

/// The scalar the Casimir matrix is expected to equal on an exact (untruncated) irrep,
/// in the same convention as casimir_matrix: WH 1, SU2 j(j+1), SU11 kappa(kappa-1),
/// SUN casimir_eigenvalue(n, label).
Rational expected_casimir(const AlgebraSpec& spec);

} // namespace liesur
