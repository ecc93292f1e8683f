#pragma once

// Matrix representations: truncated Weyl-Heisenberg (Fock space), su(2) spin-j,
// truncated su(1,1) positive discrete series, and generalized Gell-Mann bases
// of su(n) in the defining representation.
//
// Generator ordering contract (all kinds): symmetric off-diagonal generators,
// then antisymmetric off-diagonal generators, then the diagonal Cartan
// generators. Inside each off-diagonal block the order is lexicographic in
// the (row, column) position of the upper-triangular entry.

#include "liesur/matcore.hpp"
#include "liesur/radical.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace liesur {

enum class AlgebraKind { WH, SU2, SU11, SUN };

std::string_view kind_name(AlgebraKind kind);

/// Which algebra and which (possibly truncated) representation of it.
struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::SUN;
  int cutoff = 0;          // WH, SU11: number of retained levels
  int two_j = 0;           // SU2: 2j
  Rational kappa{0};       // SU11: Bargmann index
  int n = 0;               // SUN
  std::vector<int> irrep;  // SUN: Dynkin label; empty means the defining irrep (1,0,...,0)

  static constexpr int kMinCutoff = 8;
  static constexpr int kDefaultCutoff = 64;

  static AlgebraSpec wh(int cutoff);
  static AlgebraSpec su2(int two_j);
  static AlgebraSpec su11(Rational kappa, int cutoff);
  static AlgebraSpec sun(int n, std::vector<int> irrep = {});

  bool truncated() const { return kind == AlgebraKind::WH || kind == AlgebraKind::SU11; }
  /// Dynkin label of the represented irrep (SUN: `irrep` or the fundamental; SU2: (2j)).
  std::vector<int> dynkin_label() const;
  bool is_fundamental() const;

  /// Canonical grammar string: wh:cutoff=K | su2:j=J | su11:kappa=P/Q,cutoff=K | su:N[:irrep=a,b,...]
  std::string to_string() const;
  /// Parses the grammar above. Bare "wh", "su2", "su11" are accepted; omitted cutoffs
  /// default to kDefaultCutoff, omitted j / kappa stay unset (0) and fail validate().
  static AlgebraSpec parse(std::string_view text);

  /// Validates invariants; throws std::invalid_argument.
  void validate() const;
};

/// True for kappa in {1/4, 3/4} or any positive half-integer.
bool is_valid_kappa(const Rational& kappa);
/// Parses "1/2", "3/2", "0.5" style Bargmann labels.
Rational parse_kappa(std::string_view text);
/// Parses "1", "1/2", "3/2", "0.5" style spin labels into 2j.
int parse_two_j(std::string_view text);

/// An ordered Hermitian operator basis of a represented algebra.
struct GeneratorSet {
  AlgebraSpec spec;
  std::vector<ComplexMatrix> offdiag;  // symmetric block, then antisymmetric block
  std::vector<ComplexMatrix> cartan;   // diagonal generators
  std::vector<int> signature;          // +-1 per generator, in all() order
  std::vector<std::string> names;      // per generator, in all() order
  Index rep_dim = 0;

  // Ladder data where the algebra has it (WH: a^dagger, n; SU2: J+, Jz; SU11: K+, Kz).
  ComplexMatrix raising;
  ComplexMatrix weight_operator;

  std::size_t size() const { return offdiag.size() + cartan.size(); }
  /// offdiag followed by cartan.
  std::vector<ComplexMatrix> all() const;
  const ComplexMatrix& generator(std::size_t i) const {
    return i < offdiag.size() ? offdiag[i] : cartan[i - offdiag.size()];
  }
  ComplexMatrix lowering() const { return raising.adjoint(); }
};

GeneratorSet build_wh(int cutoff);
GeneratorSet build_su2(int two_j);
GeneratorSet build_su11(Rational kappa, int cutoff);
GeneratorSet build_gellmann(int n);
GeneratorSet build(const AlgebraSpec& spec);

/// Exact generalized Gell-Mann basis in contract order (n^2-1 matrices).
std::vector<ExactMatrix> exact_gellmann(int n);
std::vector<std::string> gellmann_names(int n);
ComplexMatrix to_numeric(const ExactMatrix& m);

/// Computational basis vector |m>. For SUN the highest weight of the defining
/// irrep is index 0; for SU2 index m carries Jz = m - j.
StateVector weight_basis_state(const GeneratorSet& gs, Index m);

/// Every generator replaced by U e U^dagger.
GeneratorSet conjugate(const GeneratorSet& gs, const ComplexMatrix& unitary);

} // namespace liesur
