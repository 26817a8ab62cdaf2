#pragma once

// Exact normal-ordering engine for the two-mode deformed oscillator acting on
// the vacuum. States are rational combinations of the canonical monomials
// (a1dag)^n (a2dag)^nu |0,0>, nu in {0,1}.
//
// Rewrite rules:
//   R1  a_i a_j^dag    -> delta_ij + sum_kl c[i][j][k][l] a_k^dag a_l
//   R2  a_i |0,0>      -> 0
//   R3  a2dag a2dag    -> r a1dag a1dag,   a2 a2 -> r a1 a1
//   R4  a2dag a1dag    -> eps'' a1dag a2dag,  a2 a1 -> eps'' a1 a2
// with r = (1 - eps q)/(eps'(1 + eps q)).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsusy/params.hpp"
#include "qsusy/rational.hpp"

namespace qsusy {

enum class Letter : std::uint8_t { A1, A2, A1Dag, A2Dag };

constexpr bool is_dagger(Letter l) noexcept { return l == Letter::A1Dag || l == Letter::A2Dag; }
constexpr std::size_t mode_of(Letter l) noexcept {
  return (l == Letter::A1 || l == Letter::A1Dag) ? kMode1 : kMode2;
}
constexpr Letter annihilator(std::size_t mode) noexcept { return mode == kMode1 ? Letter::A1 : Letter::A2; }
constexpr Letter creator(std::size_t mode) noexcept { return mode == kMode1 ? Letter::A1Dag : Letter::A2Dag; }

/// Operator word, read left to right as an operator product. Empty is identity.
using Word = std::vector<Letter>;

/// Parses tokens a1, a2, A1, A2 (capital = dagger), optionally space separated.
/// Throws OracleError(Parse).
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
/// Reversed word with every letter daggered.
Word adjoint(const Word& w);

struct MonomialLabel {
  long n = 0;
  int nu = 0;

  friend auto operator<=>(const MonomialLabel&, const MonomialLabel&) = default;
};

/// (a1dag)^n (a2dag)^nu
Word word_of(MonomialLabel m);

/// Finite rational combination of canonical monomials; zero coefficients are never stored.
class ExactStateVector {
 public:
  using Map = std::map<MonomialLabel, Rational>;

  ExactStateVector() = default;
  static ExactStateVector vacuum();
  static ExactStateVector monomial(MonomialLabel m, Rational coeff = Rational(1));

  void add(MonomialLabel m, const Rational& coeff);
  ExactStateVector& operator+=(const ExactStateVector& other);
  ExactStateVector scaled(const Rational& s) const;

  Rational coefficient(MonomialLabel m) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Map& terms() const noexcept { return terms_; }
  std::size_t max_digits() const;

  friend bool operator==(const ExactStateVector&, const ExactStateVector&) = default;

 private:
  Map terms_;
};

struct OracleOptions {
  /// Hard limit on decimal digits of any numerator or denominator.
  std::size_t max_digits = 4096;
};

/// Exact image of v under w. Letters act right to left; each annihilator is
/// commuted to the vacuum through R1 before the next letter is applied.
/// Throws OracleError(NonRationalQ) for float q and OracleError(Overflow) past the digit bound.
ExactStateVector apply_word(const Word& w, const ExactStateVector& v, const DeformationParams& params,
                            const OracleOptions& opts = {});

/// <0,0| w |0,0>
Rational vacuum_expectation(const Word& w, const DeformationParams& params, const OracleOptions& opts = {});

/// Canonical form of (a1dag)^n1 (a2dag)^n2 |0,0>.
ExactStateVector monomial_state(long n1, long n2, const DeformationParams& params, const OracleOptions& opts = {});

/// <s|t> for canonical monomials, computed as <0| adjoint(word s) word t |0>.
Rational inner_product(MonomialLabel s, MonomialLabel t, const DeformationParams& params,
                       const OracleOptions& opts = {});

/// Reduces w |0,0> by rewriting words and firing a uniformly random redex at
/// every step. Independent of apply_word; agreement of the two is the
/// confluence check.
ExactStateVector reduce_randomized(const Word& w, const DeformationParams& params, std::uint64_t seed,
                                   const OracleOptions& opts = {});

struct Collinearity {
  bool collinear = false;
  /// s1 = ratio * s2. Absent when either vector is zero.
  std::optional<Rational> ratio;
};

Collinearity check_collinearity(const ExactStateVector& s1, const ExactStateVector& s2);

/// Rank of the coefficient vectors, by exact Gaussian elimination.
std::size_t exact_rank(const std::vector<ExactStateVector>& states);

}  // namespace qsusy
