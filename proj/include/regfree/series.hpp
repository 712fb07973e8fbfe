#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "regfree/exact.hpp"

namespace regfree {

// Univariate polynomial with rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  // a + b·x
  static Polynomial linear(const Rational& a, const Rational& b) { return Polynomial({a, b}); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  Rational coefficient(std::size_t i) const;
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  Rational leading() const { return coefficients_.back(); }

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  Polynomial derivative() const;
  // p(a + b·x)
  Polynomial compose_linear(const Rational& a, const Rational& b) const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string(const std::string& variable) const;

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

struct PolynomialDivision {
  Polynomial quotient;
  Polynomial remainder;
};
PolynomialDivision divide(const Polynomial& p, const Polynomial& q);
// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(Polynomial p, Polynomial q);

// P(t)/Q(t) with Q(0) = 1 after normalization; the power series of a sequence
// satisfying a linear recurrence.
class RationalSeries {
 public:
  RationalSeries(Polynomial numerator, Polynomial denominator);

  // Minimal rational series whose expansion starts with `terms`. Uses
  // Berlekamp-Massey; the recurrence order is at most terms.size() / 2.
  static RationalSeries from_terms(const std::vector<Rational>& terms);

  const Polynomial& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }

  // First `count` power-series coefficients.
  std::vector<Rational> expand(std::size_t count) const;
  // Throws DomainError at a pole.
  Rational evaluate(const Rational& t) const;

 private:
  Polynomial numerator_;
  Polynomial denominator_;
};

// A reduced quotient of polynomials (no common factor, monic denominator
// unless it is a constant).
struct RationalFunction {
  Polynomial numerator;
  Polynomial denominator;

  static RationalFunction reduced(Polynomial numerator, Polynomial denominator);
  bool is_pole(const Rational& x) const { return denominator.evaluate(x) == 0; }
  Rational evaluate(const Rational& x) const;
  RationalFunction derivative() const;
};

// Number of distinct real roots strictly greater than `bound` (Sturm sequence).
int count_real_roots_above(const Polynomial& p, const Rational& bound);

}  // namespace regfree
