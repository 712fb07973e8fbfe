#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace regfree {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

// Accepts "3", "-2/7" and finite decimals such as "0.125"; the result is exact.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned long exponent);
Integer pow(const Integer& base, unsigned long exponent);

// Exact rational value of a finite double.
Rational from_double(double value);

}  // namespace regfree
