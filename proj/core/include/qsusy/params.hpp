#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "qsusy/rational.hpp"

namespace qsusy {

enum class Sign : int { Minus = -1, Plus = 1 };

constexpr int value(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign operator-(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// Picture A: a1dag builds the two towers. Picture B: roles of modes 1 and 2
/// are exchanged and eps is negated.
enum class Picture { A, B };

constexpr Picture other(Picture p) noexcept { return p == Picture::A ? Picture::B : Picture::A; }
const char* to_string(Picture p) noexcept;

/// Operator modes are written 1 and 2 in formulas and stored 0 and 1.
inline constexpr std::size_t kMode1 = 0;
inline constexpr std::size_t kMode2 = 1;
constexpr std::size_t mode_index(int one_based) noexcept { return static_cast<std::size_t>(one_based - 1); }

/// Validated deformation data (q, eps, eps', eps'', picture). Immutable.
///
/// The stored eps is the one entering the ladder formulas. In picture B the
/// operators built from these formulas carry swapped mode labels relative to
/// the algebra they represent, see `LadderMatrices::relabeled()`.
class DeformationParams {
 public:
  double q() const noexcept { return q_; }
  Sign eps() const noexcept { return eps_; }
  Sign eps_prime() const noexcept { return eps_prime_; }
  Sign eps_dprime() const noexcept { return eps_dprime_; }
  Picture picture() const noexcept { return picture_; }

  double eps_q() const noexcept { return value(eps_) * q_; }

  /// Exact q, present only when the parameters were built from a rational.
  const std::optional<Rational>& q_exact() const noexcept { return q_exact_; }
  bool is_exact() const noexcept { return q_exact_.has_value(); }

  friend bool operator==(const DeformationParams&, const DeformationParams&) = default;

 private:
  DeformationParams() = default;

  double q_ = 1.0;
  Sign eps_ = Sign::Plus;
  Sign eps_prime_ = Sign::Plus;
  Sign eps_dprime_ = Sign::Plus;
  Picture picture_ = Picture::A;
  std::optional<Rational> q_exact_;

  friend DeformationParams validate_params(double, int, int, int, Picture);
  friend DeformationParams validate_params(const Rational&, int, int, int, Picture);
  friend DeformationParams swap_picture(const DeformationParams&);
};

/// Throws ParamError: ZeroQ, NonFiniteQ, BadSign, or SingularPrefactor (eps*q == -1,
/// with hint "swap_picture").
DeformationParams validate_params(double q, int eps, int eps_prime, int eps_dprime,
                                  Picture picture = Picture::A);
DeformationParams validate_params(const Rational& q, int eps, int eps_prime, int eps_dprime,
                                  Picture picture = Picture::A);

/// Negates eps and toggles the picture. Consumers relabel modes 1 <-> 2.
DeformationParams swap_picture(const DeformationParams& p);

/// Decimal syntax ("0.5", "1e-2") gives a double; "p/q" or a bare integer gives a rational.
using QLiteral = std::variant<double, Rational>;
QLiteral parse_q(std::string_view text);

DeformationParams validate_params(const QLiteral& q, int eps, int eps_prime, int eps_dprime,
                                  Picture picture = Picture::A);

/// [n]_x = (x^n - 1)/(x - 1), evaluated without cancellation. Returns n at x == 1.
double q_number(long n, double x);
Rational q_number_exact(long n, const Rational& x);

template <class T>
using Tensor4 = std::array<std::array<std::array<std::array<T, 2>, 2>, 2>, 2>;

/// Normal-ordering data of the algebra:
///
///   a_i a_j^dag = delta_ij + sum_kl c[i][j][k][l] a_k^dag a_l
///   a_1 a_2 = exchange_sign a_2 a_1
///   quad_a1 a_1^2 = quad_a2 a_2^2,  i.e.  a_2^2 = quad_ratio a_1^2
///
/// Indices are 0-based (kMode1, kMode2).
template <class T>
struct BasicCoefficientTensor {
  Tensor4<T> c{};
  T exchange_sign{};
  T quad_a1{};
  T quad_a2{};
  /// Engaged whenever quad_a2 != 0, which validated parameters guarantee.
  std::optional<T> quad_ratio;

  const T& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const { return c[i][j][k][l]; }
};

using CoefficientTensor = BasicCoefficientTensor<double>;
using ExactCoefficientTensor = BasicCoefficientTensor<Rational>;

/// Coefficients of the algebra at (q, eps, eps', eps'') without any validity
/// check besides q != 0. Used for relabeled-picture checks where the algebra
/// itself is fine but its picture-A representation is singular.
template <class T>
BasicCoefficientTensor<T> algebra_coefficients(const T& q, int eps, int eps_prime, int eps_dprime) {
  const T one(1);
  const T two(2);
  const T qi = one / q;
  const T qi2 = qi * qi;
  const T half_diff = (qi2 - one) / two;
  const T half_sum = (qi2 + one) / two;
  const T e(eps);
  const T ep(eps_prime);
  const T edp(eps_dprime);

  BasicCoefficientTensor<T> t;
  for (auto& a : t.c)
    for (auto& b : a)
      for (auto& cc : b)
        for (auto& d : cc) d = T(0);

  t.c[kMode1][kMode1][kMode1][kMode1] = e * qi + half_diff;
  t.c[kMode1][kMode1][kMode2][kMode2] = half_diff;
  t.c[kMode2][kMode2][kMode2][kMode2] = -e * qi + half_diff;
  t.c[kMode2][kMode2][kMode1][kMode1] = half_diff;
  t.c[kMode1][kMode2][kMode2][kMode1] = edp * half_sum;
  t.c[kMode2][kMode1][kMode1][kMode2] = edp * half_sum;
  t.c[kMode1][kMode2][kMode1][kMode2] = ep * half_diff;
  t.c[kMode2][kMode1][kMode2][kMode1] = ep * half_diff;

  t.exchange_sign = edp;
  t.quad_a1 = one - e * q;
  t.quad_a2 = ep * (one + e * q);
  if (t.quad_a2 != T(0)) t.quad_ratio = T(t.quad_a1 / t.quad_a2);
  return t;
}

/// Coefficients in the labeling of the ladder formulas (stored eps).
CoefficientTensor coefficient_tensor(const DeformationParams& p);
/// Throws OracleError(NonRationalQ) unless `p.is_exact()`.
ExactCoefficientTensor exact_coefficient_tensor(const DeformationParams& p);

/// (1 - eps q) / (eps' (1 + eps q)), the factor in a_2^2 = r a_1^2.
double quad_ratio(const DeformationParams& p);

}  // namespace qsusy
