#include "qsusy/params.hpp"

#include <cmath>
#include <string>

#include "qsusy/errors.hpp"

namespace qsusy {

const char* to_string(ParamError::Code code) noexcept {
  switch (code) {
    case ParamError::Code::ZeroQ: return "ZeroQ";
    case ParamError::Code::NonFiniteQ: return "NonFiniteQ";
    case ParamError::Code::SingularPrefactor: return "SingularPrefactor";
    case ParamError::Code::BadSign: return "BadSign";
    case ParamError::Code::Parse: return "Parse";
  }
  return "Unknown";
}

const char* to_string(Picture p) noexcept { return p == Picture::A ? "A" : "B"; }

namespace {

Sign checked_sign(int s, const char* name) {
  if (s == 1) return Sign::Plus;
  if (s == -1) return Sign::Minus;
  throw ParamError(ParamError::Code::BadSign,
                   std::string(name) + " must be +1 or -1, got " + std::to_string(s));
}

[[noreturn]] void throw_singular(Picture picture) {
  throw ParamError(ParamError::Code::SingularPrefactor,
                   std::string("eps*q = -1 makes the ladder prefactor (1-eps q)/(eps'(1+eps q)) singular in picture ") +
                       to_string(picture) + "; use the swapped picture (modes 1<->2, eps -> -eps)",
                   "swap_picture");
}

}  // namespace

DeformationParams validate_params(double q, int eps, int eps_prime, int eps_dprime, Picture picture) {
  if (!std::isfinite(q)) throw ParamError(ParamError::Code::NonFiniteQ, "q must be finite");
  if (q == 0.0) throw ParamError(ParamError::Code::ZeroQ, "q must be nonzero (q^-1 enters the algebra)");
  DeformationParams p;
  p.q_ = q;
  p.eps_ = checked_sign(eps, "eps");
  p.eps_prime_ = checked_sign(eps_prime, "eps_prime");
  p.eps_dprime_ = checked_sign(eps_dprime, "eps_dprime");
  p.picture_ = picture;
  if (p.eps_q() == -1.0) throw_singular(picture);
  return p;
}

DeformationParams validate_params(const Rational& q, int eps, int eps_prime, int eps_dprime, Picture picture) {
  if (q == 0) throw ParamError(ParamError::Code::ZeroQ, "q must be nonzero (q^-1 enters the algebra)");
  DeformationParams p;
  p.q_ = q.get_d();
  p.q_exact_ = q;
  p.eps_ = checked_sign(eps, "eps");
  p.eps_prime_ = checked_sign(eps_prime, "eps_prime");
  p.eps_dprime_ = checked_sign(eps_dprime, "eps_dprime");
  p.picture_ = picture;
  if (Rational(value(p.eps_) * q) == -1) throw_singular(picture);
  return p;
}

DeformationParams validate_params(const QLiteral& q, int eps, int eps_prime, int eps_dprime, Picture picture) {
  return std::visit([&](const auto& v) { return validate_params(v, eps, eps_prime, eps_dprime, picture); }, q);
}

DeformationParams swap_picture(const DeformationParams& p) {
  DeformationParams s = p;
  s.eps_ = -p.eps_;
  s.picture_ = other(p.picture_);
  return s;
}

QLiteral parse_q(std::string_view text) {
  const bool decimal = text.find_first_of(".eEnN") != std::string_view::npos;
  if (!decimal) return parse_rational(text);
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ParamError(ParamError::Code::Parse, "q is neither a decimal nor a p/q literal: '" + s + "'");
  return v;
}

namespace {

// log|e^t - 1| without overflow or cancellation.
double log_abs_expm1(double t) {
  if (t > 0) return t + std::log(-std::expm1(-t));
  return std::log(-std::expm1(t));
}

}  // namespace

double q_number(long n, double x) {
  if (n <= 0) return 0.0;
  if (x == 1.0) return static_cast<double>(n);
  if (x == 0.0) return 1.0;
  const double L = std::log(std::abs(x));
  const double nL = static_cast<double>(n) * L;
  if (x > 0) {
    // expm1(nL)/expm1(L); routed through logs when the numerator would overflow.
    if (nL < 700.0) return std::expm1(nL) / std::expm1(L);
    return std::exp(log_abs_expm1(nL) - log_abs_expm1(L));
  }
  if (n % 2 == 0) {
    // (|x|^n - 1)/(x - 1), the denominator is below -1.
    if (nL < 700.0) return std::expm1(nL) / (x - 1.0);
    return -std::exp(log_abs_expm1(nL) - std::log1p(-x));
  }
  // (-|x|^n - 1)/(x - 1) = (|x|^n + 1)/(1 - x)
  if (nL < 700.0) return (std::exp(nL) + 1.0) / (1.0 - x);
  return std::exp(nL + std::log1p(std::exp(-nL)) - std::log1p(-x));
}

Rational q_number_exact(long n, const Rational& x) {
  Rational sum(0);
  Rational power(1);
  for (long k = 0; k < n; ++k) {
    sum += power;
    power *= x;
  }
  return sum;
}

CoefficientTensor coefficient_tensor(const DeformationParams& p) {
  return algebra_coefficients<double>(p.q(), value(p.eps()), value(p.eps_prime()), value(p.eps_dprime()));
}

ExactCoefficientTensor exact_coefficient_tensor(const DeformationParams& p) {
  if (!p.is_exact())
    throw OracleError(OracleError::Code::NonRationalQ, "exact coefficients need a rational q (\"p/q\" syntax)");
  return algebra_coefficients<Rational>(*p.q_exact(), value(p.eps()), value(p.eps_prime()),
                                        value(p.eps_dprime()));
}

double quad_ratio(const DeformationParams& p) {
  const double y = p.eps_q();
  return (1.0 - y) / (value(p.eps_prime()) * (1.0 + y));
}

}  // namespace qsusy
