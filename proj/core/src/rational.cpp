#include "qsusy/rational.hpp"

#include <cctype>

#include "qsusy/errors.hpp"

namespace qsusy {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);

  const auto valid_int = [](std::string_view part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };

  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.find('-') != std::string::npos)
    throw ParamError(ParamError::Code::Parse, "not a rational literal: '" + std::string(text) + "'");

  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
  if (d == 0) throw ParamError(ParamError::Code::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::size_t decimal_digits(const Rational& r) {
  const std::size_t a = mpz_sizeinbase(r.get_num_mpz_t(), 10);
  const std::size_t b = mpz_sizeinbase(r.get_den_mpz_t(), 10);
  return a > b ? a : b;
}

}  // namespace qsusy
