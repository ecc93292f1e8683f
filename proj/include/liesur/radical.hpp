#pragma once

// Exact arithmetic on Q-linear combinations of square roots of square-free
// integers, with a complex extension. Enough to represent generalized
// Gell-Mann matrices (entries such as -sqrt(3/2) or -i) and to evaluate their
// traces and products without rounding.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace liesur {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);
/// Parses "p" or "p/q".
Rational parse_rational(std::string_view text);

/// sum_k c_k sqrt(m_k) with m_k square-free, c_k nonzero rationals.
/// Distinct square-free radicals are linearly independent over Q, so equality
/// of canonical forms is exact equality of real numbers.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(Rational q); // NOLINT(google-explicit-constructor)
  RadicalSum(std::int64_t k) : RadicalSum(Rational(k)) {} // NOLINT(google-explicit-constructor)

  /// sign * sqrt(r) for rational r >= 0.
  static RadicalSum sqrt_of(const Rational& r);

  bool is_zero() const { return terms_.empty(); }
  /// True if the value is rational; writes it to `out`.
  bool as_rational(Rational& out) const;
  double to_double() const;

  RadicalSum operator-() const;
  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator-=(const RadicalSum& o);
  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);
  friend bool operator==(const RadicalSum& a, const RadicalSum& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(std::int64_t radicand, const Rational& coeff);
  std::map<std::int64_t, Rational> terms_; // square-free radicand -> coefficient
};

/// re + i*im with exact radical parts.
struct ExactComplex {
  RadicalSum re;
  RadicalSum im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ExactComplex conj() const { return {re, -im}; }
  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
  std::string to_string() const;
};

/// Parses entries like "0", "-i", "1/sqrt(3)", "-2*sqrt(2/5)", "-sqrt(3/2)".
/// Grammar: [sign] factor (('*' | '/') factor)*, factor = integer | i | sqrt(p[/q]).
/// Division by i is rejected.
ExactComplex parse_exact(std::string_view text);

/// Dense square matrix of exact entries, row-major.
class ExactMatrix {
 public:
  explicit ExactMatrix(int dim = 0) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}
  int dim() const { return dim_; }
  ExactComplex& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const ExactComplex& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactComplex trace() const;
  bool is_hermitian() const;
  /// If this is q * I with q rational, writes q and returns true.
  bool is_rational_identity_multiple(Rational& q) const;

 private:
  int dim_;
  std::vector<ExactComplex> entries_;
};

} // namespace liesur
