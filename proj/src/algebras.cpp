#include "liesur/algebras.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace liesur {

namespace {

const Complex kI(0.0, 1.0);

// "3/2", "1.5", "2" -> exact rational.
Rational parse_label(std::string_view text, std::string_view what) {
  const auto dot = text.find('.');
  try {
    if (dot == std::string_view::npos) return parse_rational(text);
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12) throw std::invalid_argument("bad decimal");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Rational w = whole.empty() ? Rational(0) : parse_rational(whole);
    const Rational f = parse_rational(frac) / scale;
    return whole.starts_with('-') ? w - f : w + f;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
}

int parse_positive_int(std::string_view text, std::string_view what) {
  const Rational q = parse_label(text, what);
  if (q.denominator() != 1) throw std::invalid_argument(std::string(what) + " must be an integer");
  return static_cast<int>(q.numerator());
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void require_cutoff(int cutoff) {
  if (cutoff < AlgebraSpec::kMinCutoff) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " is below the minimum of " << AlgebraSpec::kMinCutoff;
    throw std::invalid_argument(msg.str());
  }
}

} // namespace

std::string_view kind_name(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::WH: return "wh";
    case AlgebraKind::SU2: return "su2";
    case AlgebraKind::SU11: return "su11";
    case AlgebraKind::SUN: return "su";
  }
  return "?";
}

bool is_valid_kappa(const Rational& kappa) {
  if (kappa <= 0) return false;
  if (kappa == Rational(1, 4) || kappa == Rational(3, 4)) return true;
  return (kappa * 2).denominator() == 1;
}

Rational parse_kappa(std::string_view text) { return parse_label(text, "kappa"); }

int parse_two_j(std::string_view text) {
  const Rational twice = parse_label(text, "j") * 2;
  if (twice.denominator() != 1 || twice < 0) throw std::invalid_argument("j must be a non-negative half-integer");
  return static_cast<int>(twice.numerator());
}

AlgebraSpec AlgebraSpec::wh(int cutoff) {
  AlgebraSpec s;
  s.kind = AlgebraKind::WH;
  s.cutoff = cutoff;
  return s;
}

AlgebraSpec AlgebraSpec::su2(int two_j) {
  AlgebraSpec s;
  s.kind = AlgebraKind::SU2;
  s.two_j = two_j;
  return s;
}

AlgebraSpec AlgebraSpec::su11(Rational kappa, int cutoff) {
  AlgebraSpec s;
  s.kind = AlgebraKind::SU11;
  s.kappa = kappa;
  s.cutoff = cutoff;
  return s;
}

AlgebraSpec AlgebraSpec::sun(int n, std::vector<int> irrep) {
  AlgebraSpec s;
  s.kind = AlgebraKind::SUN;
  s.n = n;
  s.irrep = std::move(irrep);
  return s;
}

std::vector<int> AlgebraSpec::dynkin_label() const {
  switch (kind) {
    case AlgebraKind::SU2: return {two_j};
    case AlgebraKind::SUN: {
      if (!irrep.empty()) return irrep;
      std::vector<int> fund(static_cast<std::size_t>(std::max(n - 1, 0)), 0);
      if (!fund.empty()) fund[0] = 1;
      return fund;
    }
    default: return {};
  }
}

bool AlgebraSpec::is_fundamental() const {
  if (kind != AlgebraKind::SUN) return false;
  const auto label = dynkin_label();
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] != (i == 0 ? 1 : 0)) return false;
  return true;
}

void AlgebraSpec::validate() const {
  switch (kind) {
    case AlgebraKind::WH: require_cutoff(cutoff); break;
    case AlgebraKind::SU2:
      if (two_j < 0) throw std::invalid_argument("su2: 2j must be non-negative");
      break;
    case AlgebraKind::SU11:
      if (!is_valid_kappa(kappa))
        throw std::invalid_argument("su11: kappa " + liesur::to_string(kappa) +
                                    " is not a discrete-series label (1/4, 3/4 or a positive half-integer)");
      require_cutoff(cutoff);
      break;
    case AlgebraKind::SUN:
      if (n < 2) throw std::invalid_argument("su(n): n must be at least 2");
      if (!irrep.empty()) {
        if (irrep.size() != static_cast<std::size_t>(n - 1))
          throw std::invalid_argument("su(n): Dynkin label must have n-1 entries");
        for (int l : irrep)
          if (l < 0) throw std::invalid_argument("su(n): Dynkin label entries must be non-negative");
      }
      break;
  }
}

std::string AlgebraSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case AlgebraKind::WH: os << "wh:cutoff=" << cutoff; break;
    case AlgebraKind::SU2: os << "su2:j=" << liesur::to_string(Rational(two_j, 2)); break;
    case AlgebraKind::SU11: os << "su11:kappa=" << liesur::to_string(kappa) << ",cutoff=" << cutoff; break;
    case AlgebraKind::SUN: {
      os << "su:" << n;
      if (!irrep.empty()) {
        os << ":irrep=";
        for (std::size_t i = 0; i < irrep.size(); ++i) os << (i ? "," : "") << irrep[i];
      }
      break;
    }
  }
  return os.str();
}

AlgebraSpec AlgebraSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  // key=value pairs separated by ',' (the su:N form handles its own irrep list)
  auto for_each_param = [](std::string_view params, auto&& fn) {
    if (params.empty()) return;
    for (auto item : split(params, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value in '" + std::string(item) + "'");
      fn(item.substr(0, eq), item.substr(eq + 1));
    }
  };

  if (head == "wh") {
    AlgebraSpec s = wh(kDefaultCutoff);
    for_each_param(rest, [&](std::string_view k, std::string_view v) {
      if (k != "cutoff") throw std::invalid_argument("wh: unknown parameter '" + std::string(k) + "'");
      s.cutoff = parse_positive_int(v, "cutoff");
    });
    return s;
  }
  if (head == "su2") {
    AlgebraSpec s = su2(0);
    for_each_param(rest, [&](std::string_view k, std::string_view v) {
      if (k != "j") throw std::invalid_argument("su2: unknown parameter '" + std::string(k) + "'");
      s.two_j = parse_two_j(v);
    });
    return s;
  }
  if (head == "su11") {
    AlgebraSpec s = su11(Rational(0), kDefaultCutoff);
    for_each_param(rest, [&](std::string_view k, std::string_view v) {
      if (k == "kappa") s.kappa = parse_kappa(v);
      else if (k == "cutoff") s.cutoff = parse_positive_int(v, "cutoff");
      else throw std::invalid_argument("su11: unknown parameter '" + std::string(k) + "'");
    });
    return s;
  }
  if (head == "su") {
    if (rest.empty()) throw std::invalid_argument("su: expected su:<n>");
    const auto colon2 = rest.find(':');
    AlgebraSpec s = sun(parse_positive_int(rest.substr(0, colon2), "n"));
    if (colon2 != std::string_view::npos) {
      const std::string_view tail = rest.substr(colon2 + 1);
      if (!tail.starts_with("irrep=")) throw std::invalid_argument("su: expected irrep=a,b,...");
      for (auto v : split(tail.substr(6), ',')) s.irrep.push_back(parse_positive_int(v, "Dynkin label"));
    }
    return s;
  }
  throw std::invalid_argument("unknown algebra '" + std::string(text) + "'");
}

std::vector<ComplexMatrix> GeneratorSet::all() const {
  std::vector<ComplexMatrix> out = offdiag;
  out.insert(out.end(), cartan.begin(), cartan.end());
  return out;
}

GeneratorSet build_wh(int cutoff) {
  require_cutoff(cutoff);
  GeneratorSet gs;
  gs.spec = AlgebraSpec::wh(cutoff);
  gs.rep_dim = cutoff;
  ComplexMatrix create = ComplexMatrix::Zero(cutoff, cutoff);
  for (int m = 0; m + 1 < cutoff; ++m) create(m + 1, m) = std::sqrt(static_cast<double>(m + 1));
  const ComplexMatrix annihilate = create.adjoint();
  const double r2 = std::sqrt(2.0);
  gs.offdiag = {(annihilate + create) / r2, (annihilate - create) / (kI * r2)};
  gs.signature = {1, 1};
  gs.names = {"x", "p"};
  gs.raising = create;
  gs.weight_operator = create * annihilate;
  return gs;
}

GeneratorSet build_su2(int two_j) {
  if (two_j < 0) throw std::invalid_argument("su2: 2j must be non-negative");
  GeneratorSet gs;
  gs.spec = AlgebraSpec::su2(two_j);
  const int dim = two_j + 1;
  gs.rep_dim = dim;
  ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  for (int m = 0; m < dim; ++m) {
    jz(m, m) = m - two_j / 2.0;
    if (m + 1 < dim) raise(m + 1, m) = std::sqrt(static_cast<double>((m + 1) * (two_j - m)));
  }
  const ComplexMatrix lower = raise.adjoint();
  // Stored generators are 2J so that the j = 1/2 case has Tr(e_a e_b) = 2 delta_ab.
  gs.offdiag = {raise + lower, (raise - lower) / kI};
  gs.cartan = {2.0 * jz};
  gs.signature = {1, 1, 1};
  gs.names = {"2Jx", "2Jy", "2Jz"};
  gs.raising = raise;
  gs.weight_operator = jz;
  return gs;
}

GeneratorSet build_su11(Rational kappa, int cutoff) {
  if (!is_valid_kappa(kappa))
    throw std::invalid_argument("su11: kappa " + liesur::to_string(kappa) + " is not a discrete-series label");
  require_cutoff(cutoff);
  GeneratorSet gs;
  gs.spec = AlgebraSpec::su11(kappa, cutoff);
  gs.rep_dim = cutoff;
  const double k = boost::rational_cast<double>(kappa);
  ComplexMatrix raise = ComplexMatrix::Zero(cutoff, cutoff);
  ComplexMatrix kz = ComplexMatrix::Zero(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) {
    kz(m, m) = m + k;
    if (m + 1 < cutoff) raise(m + 1, m) = std::sqrt((m + 1) * (2.0 * k + m));
  }
  const ComplexMatrix lower = raise.adjoint();
  gs.offdiag = {(raise + lower) / 2.0, (raise - lower) / (2.0 * kI)};
  gs.cartan = {kz};
  gs.signature = {1, 1, -1};
  gs.names = {"Kx", "Ky", "Kz"};
  gs.raising = raise;
  gs.weight_operator = kz;
  return gs;
}

std::vector<ExactMatrix> exact_gellmann(int n) {
  if (n < 2) throw std::invalid_argument("gellmann: n must be at least 2");
  std::vector<ExactMatrix> out;
  out.reserve(static_cast<std::size_t>(n) * n - 1);
  const RadicalSum one(Rational(1));
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c) {
      ExactMatrix m(n);
      m(r, c) = {one, {}};
      m(c, r) = {one, {}};
      out.push_back(std::move(m));
    }
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c) {
      ExactMatrix m(n);
      m(r, c) = {{}, -one};
      m(c, r) = {{}, one};
      out.push_back(std::move(m));
    }
  // diag(1,...,1,-k,0,...,0) * sqrt(2/(k(k+1)))
  for (int k = 1; k < n; ++k) {
    ExactMatrix m(n);
    const RadicalSum scale = RadicalSum::sqrt_of(Rational(2, static_cast<std::int64_t>(k) * (k + 1)));
    for (int i = 0; i < k; ++i) m(i, i) = {scale, {}};
    m(k, k) = {RadicalSum(Rational(-k)) * scale, {}};
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::string> gellmann_names(int n) {
  std::vector<std::string> names;
  if (n == 2) return {"sigma_x", "sigma_y", "sigma_z"};
  if (n == 3) return {"A+", "C+", "B+", "A-", "C-", "B-", "h1", "h2"};
  for (int a = 1; a < n * n; ++a) names.push_back("Lambda" + std::to_string(a));
  return names;
}

ComplexMatrix to_numeric(const ExactMatrix& m) {
  ComplexMatrix out(m.dim(), m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = Complex(m(r, c).re.to_double(), m(r, c).im.to_double());
  return out;
}

GeneratorSet build_gellmann(int n) {
  if (n < 2) throw std::invalid_argument("gellmann: n must be at least 2");
  GeneratorSet gs;
  gs.spec = AlgebraSpec::sun(n);
  gs.rep_dim = n;
  const auto exact = exact_gellmann(n);
  const std::size_t num_offdiag = static_cast<std::size_t>(n) * (n - 1);
  for (std::size_t a = 0; a < exact.size(); ++a)
    (a < num_offdiag ? gs.offdiag : gs.cartan).push_back(to_numeric(exact[a]));
  gs.signature.assign(exact.size(), 1);
  gs.names = gellmann_names(n);
  return gs;
}

GeneratorSet build(const AlgebraSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case AlgebraKind::WH: return build_wh(spec.cutoff);
    case AlgebraKind::SU2: return build_su2(spec.two_j);
    case AlgebraKind::SU11: return build_su11(spec.kappa, spec.cutoff);
    case AlgebraKind::SUN: {
      if (!spec.is_fundamental())
        throw std::invalid_argument("su(n): matrices are only constructed for the defining irrep (1,0,...,0)");
      GeneratorSet gs = build_gellmann(spec.n);
      gs.spec = spec;
      return gs;
    }
  }
  throw std::logic_error("unreachable");
}

StateVector weight_basis_state(const GeneratorSet& gs, Index m) {
  if (m < 0 || m >= gs.rep_dim) {
    std::ostringstream msg;
    msg << "weight_basis_state: index " << m << " out of range [0, " << gs.rep_dim << ")";
    throw std::out_of_range(msg.str());
  }
  return StateVector::basis(gs.rep_dim, m);
}

GeneratorSet conjugate(const GeneratorSet& gs, const ComplexMatrix& unitary) {
  require_square(unitary, "conjugate");
  if (unitary.rows() != gs.rep_dim) throw DimensionError("conjugate: unitary dimension mismatch");
  const ComplexMatrix dag = unitary.adjoint();
  GeneratorSet out = gs;
  for (auto& e : out.offdiag) e = unitary * e * dag;
  for (auto& e : out.cartan) e = unitary * e * dag;
  if (out.raising.size()) out.raising = unitary * out.raising * dag;
  if (out.weight_operator.size()) out.weight_operator = unitary * out.weight_operator * dag;
  return out;
}

} // namespace liesur
