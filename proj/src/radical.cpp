#include "liesur/radical.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace liesur {

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << '/' << q.denominator();
  return os.str();
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view context) {
  std::int64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw std::invalid_argument("cannot parse integer '" + std::string(text) + "' in '" + std::string(context) + "'");
  return v;
}

// Splits n = k^2 * m with m square-free; returns {k, m}.
std::pair<std::int64_t, std::int64_t> square_free_split(std::int64_t n) {
  std::int64_t k = 1, m = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) m *= p;
  }
  m *= n;
  return {k, m};
}

} // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const auto den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash), text), den);
}

RadicalSum::RadicalSum(Rational q) {
  if (q.numerator() != 0) terms_.emplace(1, q);
}

RadicalSum RadicalSum::sqrt_of(const Rational& r) {
  if (r < 0) throw std::domain_error("sqrt_of: negative radicand");
  RadicalSum out;
  if (r.numerator() == 0) return out;
  // sqrt(p/q) = sqrt(p*q)/q
  const auto [k, m] = square_free_split(r.numerator() * r.denominator());
  out.terms_.emplace(m, Rational(k, r.denominator()));
  return out;
}

void RadicalSum::add_term(std::int64_t radicand, const Rational& coeff) {
  if (coeff.numerator() == 0) return;
  auto [it, inserted] = terms_.emplace(radicand, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.numerator() == 0) terms_.erase(it);
  }
}

bool RadicalSum::as_rational(Rational& out) const {
  if (terms_.empty()) {
    out = 0;
    return true;
  }
  if (terms_.size() == 1 && terms_.begin()->first == 1) {
    out = terms_.begin()->second;
    return true;
  }
  return false;
}

double RadicalSum::to_double() const {
  double v = 0.0;
  for (const auto& [m, c] : terms_)
    v += boost::rational_cast<double>(c) * std::sqrt(static_cast<double>(m));
  return v;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum out = *this;
  for (auto& kv : out.terms_) kv.second = -kv.second;
  return out;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
  RadicalSum out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      // sqrt(ma) sqrt(mb) = g sqrt(ma mb / g^2), g = gcd
      const std::int64_t g = std::gcd(ma, mb);
      out.add_term((ma / g) * (mb / g), ca * cb * g);
    }
  }
  return out;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const Rational mag = c < 0 ? -c : c;
    if (m == 1) {
      os << liesur::to_string(mag);
    } else {
      if (mag != Rational(1)) os << liesur::to_string(mag) << '*';
      os << "sqrt(" << m << ')';
    }
  }
  return os.str();
}

std::string ExactComplex::to_string() const {
  if (im.is_zero()) return re.to_string();
  const std::string imag = "(" + im.to_string() + ")*i";
  if (re.is_zero()) return imag;
  return re.to_string() + " + " + imag;
}

ExactComplex parse_exact(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("parse_exact: empty entry");

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';

  ExactComplex value{RadicalSum(Rational(negative ? -1 : 1)), RadicalSum()};
  bool divide = false;
  while (true) {
    if (pos >= s.size()) throw std::invalid_argument("parse_exact: dangling operator in '" + s + "'");
    ExactComplex factor;
    if (s[pos] == 'i') {
      if (divide) throw std::invalid_argument("parse_exact: division by i in '" + s + "'");
      factor = {RadicalSum(), RadicalSum(Rational(1))};
      ++pos;
    } else if (s.compare(pos, 5, "sqrt(") == 0) {
      const auto close = s.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("parse_exact: unclosed sqrt in '" + s + "'");
      Rational r = parse_rational(std::string_view(s).substr(pos + 5, close - pos - 5));
      if (r.numerator() == 0 && divide) throw std::invalid_argument("parse_exact: division by zero in '" + s + "'");
      if (divide) r = 1 / r;
      factor = {RadicalSum::sqrt_of(r), RadicalSum()};
      pos = close + 1;
    } else {
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end == pos) throw std::invalid_argument("parse_exact: unexpected token in '" + s + "'");
      Rational k(parse_int(std::string_view(s).substr(pos, end - pos), s));
      if (divide) {
        if (k.numerator() == 0) throw std::invalid_argument("parse_exact: division by zero in '" + s + "'");
        k = 1 / k;
      }
      factor = {RadicalSum(k), RadicalSum()};
      pos = end;
    }
    value = value * factor;
    if (pos == s.size()) break;
    if (s[pos] != '*' && s[pos] != '/') throw std::invalid_argument("parse_exact: unexpected character in '" + s + "'");
    divide = s[pos] == '/';
    ++pos;
  }
  return value;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("ExactMatrix: dimension mismatch");
  ExactMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int k = 0; k < dim_; ++k) {
      const auto& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (int c = 0; c < dim_; ++c) {
        const auto& b = o(k, c);
        if (!b.is_zero()) out(r, c) = out(r, c) + a * b;
      }
    }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("ExactMatrix: dimension mismatch");
  ExactMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + o.entries_[i];
  return out;
}

ExactComplex ExactMatrix::trace() const {
  ExactComplex t;
  for (int i = 0; i < dim_; ++i) t = t + (*this)(i, i);
  return t;
}

bool ExactMatrix::is_hermitian() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (!((*this)(r, c) == (*this)(c, r).conj())) return false;
  return true;
}

bool ExactMatrix::is_rational_identity_multiple(Rational& q) const {
  if (dim_ == 0) return false;
  const ExactComplex& d = (*this)(0, 0);
  if (!d.im.is_zero() || !d.re.as_rational(q)) return false;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) {
      const auto& e = (*this)(r, c);
      if (r == c ? !(e == d) : !e.is_zero()) return false;
    }
  return true;
}

} // namespace liesur
