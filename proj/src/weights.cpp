#include "liesur/weights.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace liesur {

namespace {

void require_rank(int n, const DynkinLabel& lambda) {
  if (n < 2) throw std::invalid_argument("su(n): n must be at least 2");
  if (lambda.rank() != static_cast<std::size_t>(n - 1)) {
    std::ostringstream msg;
    msg << "Dynkin label " << lambda.to_string() << " has rank " << lambda.rank() << ", su(" << n << ") needs "
        << n - 1;
    throw std::invalid_argument(msg.str());
  }
}

} // namespace

DynkinLabel::DynkinLabel(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("Dynkin label must be non-empty");
  for (int l : labels_)
    if (l < 0) throw std::invalid_argument("Dynkin label entries must be non-negative");
}

DynkinLabel DynkinLabel::fundamental(int n) {
  if (n < 2) throw std::invalid_argument("su(n): n must be at least 2");
  std::vector<int> l(static_cast<std::size_t>(n - 1), 0);
  l[0] = 1;
  return DynkinLabel(std::move(l));
}

DynkinLabel DynkinLabel::reversed() const { return DynkinLabel({labels_.rbegin(), labels_.rend()}); }

std::vector<Rational> DynkinLabel::as_rationals() const { return {labels_.begin(), labels_.end()}; }

std::string DynkinLabel::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < labels_.size(); ++i) os << (i ? "," : "") << labels_[i];
  os << ')';
  return os.str();
}

MetricMatrix::MetricMatrix(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("metric: n must be at least 2");
  const int r = n - 1;
  entries_.resize(static_cast<std::size_t>(r) * r);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j)
      entries_[static_cast<std::size_t>(i - 1) * r + (j - 1)] = Rational(std::min(i, j) * (n - std::max(i, j)), n);
}

MetricMatrix metric(int n) { return MetricMatrix(n); }

Rational inner(std::span<const Rational> mu, std::span<const Rational> tau, const MetricMatrix& g) {
  const auto r = static_cast<std::size_t>(g.rank());
  if (mu.size() != r || tau.size() != r) throw std::invalid_argument("inner: weight length does not match the metric");
  Rational sum(0);
  for (std::size_t i = 0; i < r; ++i) {
    if (mu[i].numerator() == 0) continue;
    for (std::size_t j = 0; j < r; ++j) sum += mu[i] * g(static_cast<int>(i), static_cast<int>(j)) * tau[j];
  }
  return sum;
}

DynkinLabel weyl_root(int n) {
  if (n < 2) throw std::invalid_argument("weyl_root: n must be at least 2");
  return DynkinLabel(std::vector<int>(static_cast<std::size_t>(n - 1), 1));
}

Rational sur_bound(int n, const DynkinLabel& lambda) {
  require_rank(n, lambda);
  const auto l = lambda.as_rationals();
  const auto d = weyl_root(n).as_rationals();
  return 2 * inner(l, d, metric(n));
}

Rational casimir_eigenvalue(int n, const DynkinLabel& lambda) {
  require_rank(n, lambda);
  const MetricMatrix g = metric(n);
  const auto l = lambda.as_rationals();
  const auto d = weyl_root(n).as_rationals();
  return 2 * inner(l, d, g) + inner(l, l, g);
}

ComplexMatrix casimir_matrix(const GeneratorSet& gs) {
  const Index dim = gs.rep_dim;
  switch (gs.spec.kind) {
    case AlgebraKind::WH: return ComplexMatrix::Identity(dim, dim);
    case AlgebraKind::SU11: {
      const auto& kx = gs.offdiag.at(0);
      const auto& ky = gs.offdiag.at(1);
      const auto& kz = gs.cartan.at(0);
      return kz * kz - kx * kx - ky * ky;
    }
    case AlgebraKind::SU2:
    case AlgebraKind::SUN: {
      ComplexMatrix c = ComplexMatrix::Zero(dim, dim);
      for (std::size_t a = 0; a < gs.size(); ++a) c += gs.generator(a) * gs.generator(a);
      // stored su(2) generators are 2J: sum (2J)^2 / 4 = J^2
      return gs.spec.kind == AlgebraKind::SU2 ? ComplexMatrix(c / 4.0) : ComplexMatrix(c / 2.0);
    }
  }
  throw std::logic_error("unreachable");
}

Rational expected_casimir(const AlgebraSpec& spec) {
  switch (spec.kind) {
    case AlgebraKind::WH: return Rational(1);
    case AlgebraKind::SU2: {
      const Rational j(spec.two_j, 2);
      return j * (j + 1);
    }
    case AlgebraKind::SU11: return spec.kappa * (spec.kappa - 1);
    case AlgebraKind::SUN: return casimir_eigenvalue(spec.n, DynkinLabel(spec.dynkin_label()));
  }
  throw std::logic_error("unreachable");
}

} // namespace liesur
