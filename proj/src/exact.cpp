#include "regfree/exact.hpp"

#include <cctype>
#include <cmath>

#include "regfree/error.hpp"

namespace regfree {

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty number", 0);
  std::string s(text);
  auto check_digits = [&](std::size_t from, std::size_t to, bool allow_sign) {
    std::size_t i = from;
    if (allow_sign && i < to && (s[i] == '-' || s[i] == '+')) ++i;
    if (i >= to) throw ParseError("expected digits in '" + s + "'", i);
    for (; i < to; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("unexpected character in number '" + s + "'", i);
      }
    }
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    check_digits(0, slash, true);
    check_digits(slash + 1, s.size(), false);
    std::string numerator = s.substr(0, slash);
    if (numerator[0] == '+') numerator.erase(0, 1);
    Integer num(numerator, 10);
    Integer den(s.substr(slash + 1), 10);
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    check_digits(0, dot, true);
    check_digits(dot + 1, s.size(), false);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits[0] == '+') digits.erase(0, 1);
    Integer num(digits, 10);
    Integer den = pow(Integer(10), s.size() - dot - 1);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  check_digits(0, s.size(), true);
  return Rational(Integer(s[0] == '+' ? s.substr(1) : s, 10));
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational result(pow(Integer(base.get_num()), exponent), pow(Integer(base.get_den()), exponent));
  result.canonicalize();
  return result;
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

}  // namespace regfree
