#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace qsusy {

using Rational = mpq_class;

/// Parses "p/q" or an integer literal. Throws ParamError(Parse) otherwise.
Rational parse_rational(std::string_view text);

/// Always "p/q", including integers ("3/1").
std::string to_fraction_string(const Rational& r);

/// Larger of the decimal digit counts of numerator and denominator.
std::size_t decimal_digits(const Rational& r);

}  // namespace qsusy
