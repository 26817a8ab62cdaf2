#include "qsusy/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qsusy/errors.hpp"
#include "qsusy/oracle.hpp"

namespace qsusy {

std::vector<Index> TruncatedBasis::interior(long buffer) const {
  std::vector<Index> out;
  for (int nu = 0; nu < 2; ++nu)
    for (long n = 0; n <= n_max_ - buffer; ++n) out.push_back(index(n, nu));
  return out;
}

TruncatedBasis build_basis(long n_max) {
  if (n_max < kMinCutoff)
    throw CutoffTooSmall("n_max must be at least " + std::to_string(kMinCutoff) + ", got " +
                         std::to_string(n_max));
  return TruncatedBasis(n_max);
}

namespace {

double log_abs_expm1(double t) {
  if (t > 0) return t + std::log(-std::expm1(-t));
  return std::log(-std::expm1(t));
}

// log(1 + e^t)
double log1p_exp(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// 1 + x^m for integer m >= 0.
double one_plus_power(double x, long m) {
  if (m == 0) return 2.0;
  if (x == 0.0) return 1.0;
  const double mL = static_cast<double>(m) * std::log(std::abs(x));
  if (x > 0 || m % 2 == 0) return 1.0 + std::exp(mL);
  return -std::expm1(mL);
}

}  // namespace

double phi1(long n, int nu, const DeformationParams& p) {
  if (n <= 0) return 0.0;
  const double y = p.eps_q();
  if (y == 1.0) return static_cast<double>(n);
  const double x = 1.0 / y;
  return 0.5 * q_number(n, x) * one_plus_power(x, n - 1 + 2 * nu);
}

SignedLog log_phi1(long n, int nu, const DeformationParams& p) {
  if (n <= 0) return {0, -std::numeric_limits<double>::infinity()};
  const double y = p.eps_q();
  if (y == 1.0) return {1, std::log(static_cast<double>(n))};
  const double x = 1.0 / y;
  const double L = std::log(std::abs(x));
  const double nL = static_cast<double>(n) * L;
  const long m = n - 1 + 2 * nu;
  const double mL = static_cast<double>(m) * L;

  int sign = 1;
  double log_abs = -std::log(2.0);

  // [n]_x
  if (x > 0) {
    sign *= sign_of(std::expm1(nL)) * sign_of(std::expm1(L));
    log_abs += log_abs_expm1(nL) - log_abs_expm1(L);
  } else if (n % 2 == 0) {
    sign *= sign_of(std::expm1(nL)) * sign_of(x - 1.0);
    log_abs += log_abs_expm1(nL) - std::log1p(-x);
  } else {
    log_abs += log1p_exp(nL) - std::log1p(-x);
  }

  // 1 + x^m
  if (m == 0) {
    log_abs += std::log(2.0);
  } else if (x > 0 || m % 2 == 0) {
    log_abs += log1p_exp(mL);
  } else {
    sign *= -sign_of(std::expm1(mL));
    log_abs += log_abs_expm1(mL);
  }
  return {sign, log_abs};
}

double phi1_factorial(long n, int nu, const DeformationParams& p) {
  double prod = 1.0;
  for (long k = 1; k <= n; ++k) prod *= phi1(k, nu, p);
  if (!std::isfinite(prod))
    throw OverflowDetected("[phi1(" + std::to_string(n) + "," + std::to_string(nu) +
                           ")]! exceeds the double range; use log_phi1_factorial");
  return prod;
}

double log_phi1_factorial(long n, int nu, const DeformationParams& p) {
  double sum = 0.0;
  for (long k = 1; k <= n; ++k) {
    const SignedLog s = log_phi1(k, nu, p);
    if (s.sign <= 0)
      throw DomainError("phi1(" + std::to_string(k) + "," + std::to_string(nu) + ") is not positive");
    sum += s.log_abs;
  }
  return sum;
}

double phi1_factorial_ratio(long a, int alpha, long b, int beta, const DeformationParams& p) {
  const auto factor = [&](long k, int nu) {
    const double v = phi1(k, nu, p);
    if (!(v > 0))
      throw DomainError("phi1(" + std::to_string(k) + "," + std::to_string(nu) +
                        ") is not positive; parameters outside the representable domain");
    return v;
  };

  double prod = 1.0;
  const long common = std::min(a, b);
  for (long k = 1; k <= common; ++k) prod *= factor(k, alpha) / factor(k, beta);
  for (long k = common + 1; k <= a; ++k) prod *= factor(k, alpha);
  for (long k = common + 1; k <= b; ++k) prod /= factor(k, beta);
  if (std::isfinite(prod) && prod > 0 && std::isnormal(prod)) return prod;

  const double lr = log_phi1_factorial(a, alpha, p) - log_phi1_factorial(b, beta, p);
  const double r = std::exp(lr);
  if (!std::isfinite(r))
    throw OverflowDetected("factorial ratio exceeds the double range (log = " + std::to_string(lr) + ")");
  return r;
}

Rational phi1_exact(long n, int nu, const DeformationParams& p) {
  if (n <= 0) return Rational(0);
  if (!p.is_exact())
    throw OracleError(OracleError::Code::NonRationalQ, "exact phi1 needs a rational q");
  const Rational y = value(p.eps()) * *p.q_exact();
  const Rational x = 1 / y;
  Rational xm(1);
  for (long k = 0; k < n - 1 + 2 * nu; ++k) xm *= x;
  return q_number_exact(n, x) * (1 + xm) / 2;
}

Rational phi1_factorial_exact(long n, int nu, const DeformationParams& p) {
  Rational prod(1);
  for (long k = 1; k <= n; ++k) prod *= phi1_exact(k, nu, p);
  return prod;
}

namespace {

double checked_sqrt(double radicand, const char* what) {
  if (radicand < 0) throw DomainError(std::string("negative radicand in ") + what);
  const double s = std::sqrt(radicand);
  if (!std::isfinite(s)) throw OverflowDetected(std::string("non-finite amplitude in ") + what);
  return s;
}

}  // namespace

LadderMatrices build_ladder_matrices(const DeformationParams& p, const TruncatedBasis& basis) {
  const Index dim = basis.dim();
  Matrix a1 = Matrix::Zero(dim, dim);
  Matrix a2 = Matrix::Zero(dim, dim);
  const double r = quad_ratio(p);
  const double edp = value(p.eps_dprime());

  for (int nu = 0; nu < 2; ++nu) {
    for (long n = 0; n <= basis.n_max(); ++n) {
      const Index col = basis.index(n, nu);
      if (n >= 1) a1(basis.index(n - 1, nu), col) = checked_sqrt(phi1(n, nu, p), "a1");

      const long target = n - 2 + 2 * nu;
      if (basis.contains(target)) {
        const double ratio = phi1_factorial_ratio(n, nu, target, 1 - nu, p);
        const double prefactor = (nu == 0 ? r : 1.0) * (n % 2 == 0 ? 1.0 : edp);
        a2(basis.index(target, 1 - nu), col) = checked_sqrt(ratio, "a2") * prefactor;
      }
    }
  }

  OperatorSet ops;
  ops.a1dag = a1.transpose();
  ops.a2dag = a2.transpose();
  ops.a1 = std::move(a1);
  ops.a2 = std::move(a2);
  return LadderMatrices(p, basis, std::move(ops));
}

NormCheck norm_check(long n, int nu, const DeformationParams& p) {
  NormCheck out;
  out.formula = phi1_factorial(n, nu, p);
  out.formula_exact = phi1_factorial_exact(n, nu, p);
  out.oracle = inner_product({n, nu}, {n, nu}, p);
  return out;
}

}  // namespace qsusy
