#include "regfree/series.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "regfree/error.hpp"

namespace regfree {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  for (auto& c : coefficients_) c.canonicalize();
  trim();
}

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Rational Polynomial::coefficient(std::size_t i) const {
  return i < coefficients_.size() ? coefficients_[i] : Rational(0);
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::evaluate(double x) const {
  double acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coefficients_.size(); ++i) d.push_back(coefficients_[i] * static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_linear(const Rational& a, const Rational& b) const {
  Polynomial result;
  Polynomial inner = Polynomial::linear(a, b);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    result = result * inner + Polynomial::constant(*it);
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return (1 / leading()) * *this;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<Rational> c(std::max(p.coefficients_.size(), q.coefficients_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coefficient(i) + q.coefficient(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
  std::vector<Rational> c(std::max(p.coefficients_.size(), q.coefficients_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coefficient(i) - q.coefficient(i);
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Rational> c(p.coefficients_.size() + q.coefficients_.size() - 1);
  for (std::size_t i = 0; i < p.coefficients_.size(); ++i) {
    if (p.coefficients_[i] == 0) continue;
    for (std::size_t j = 0; j < q.coefficients_.size(); ++j) c[i + j] += p.coefficients_[i] * q.coefficients_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  std::vector<Rational> out = p.coefficients_;
  for (auto& x : out) x *= c;
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string(const std::string& variable) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const Rational& c = coefficients_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational magnitude = abs(c);
    if (i == 0 || magnitude != 1) os << regfree::to_string(magnitude);
    if (i > 0) {
      if (magnitude != 1) os << "*";
      os << variable;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

PolynomialDivision divide(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = p.coefficients();
  int dq = q.degree();
  std::vector<Rational> quo(rem.size() > static_cast<std::size_t>(dq) ? rem.size() - dq : 0);
  Rational lead_inv = 1 / q.leading();
  for (int i = static_cast<int>(rem.size()) - 1; i >= dq; --i) {
    Rational factor = rem[i] * lead_inv;
    if (factor == 0) continue;
    quo[i - dq] = factor;
    for (int j = 0; j <= dq; ++j) rem[i - dq + j] -= factor * q.coefficient(j);
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial p, Polynomial q) {
  while (!q.is_zero()) {
    Polynomial r = divide(p, q).remainder;
    p = std::move(q);
    q = std::move(r);
  }
  return p.monic();
}

RationalSeries::RationalSeries(Polynomial numerator, Polynomial denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (denominator_.is_zero() || denominator_.coefficient(0) == 0) {
    throw DomainError("rational series denominator must be nonzero at t = 0");
  }
  Rational q0 = denominator_.coefficient(0);
  if (q0 != 1) {
    numerator_ = (1 / q0) * numerator_;
    denominator_ = (1 / q0) * denominator_;
  }
}

RationalSeries RationalSeries::from_terms(const std::vector<Rational>& s) {
  // Berlekamp-Massey over Q.
  std::vector<Rational> c{1}, b{1};
  std::size_t length = 0;
  std::size_t shift = 1;
  Rational last_discrepancy = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (std::size_t i = 1; i <= length && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    std::vector<Rational> previous = c;
    Rational coef = d / last_discrepancy;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= coef * b[i];
    if (2 * length <= n) {
      length = n + 1 - length;
      b = std::move(previous);
      last_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  Polynomial denominator(c);
  std::vector<Rational> num(length);
  for (std::size_t n = 0; n < length && n < s.size(); ++n) {
    for (std::size_t i = 0; i <= n; ++i) num[n] += denominator.coefficient(i) * s[n - i];
  }
  return RationalSeries(Polynomial(std::move(num)), std::move(denominator));
}

std::vector<Rational> RationalSeries::expand(std::size_t count) const {
  std::vector<Rational> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    Rational v = numerator_.coefficient(n);
    int dq = denominator_.degree();
    for (std::size_t i = 1; i <= n && static_cast<int>(i) <= dq; ++i) v -= denominator_.coefficient(i) * out[n - i];
    out[n] = v;
  }
  return out;
}

Rational RationalSeries::evaluate(const Rational& t) const {
  Rational d = denominator_.evaluate(t);
  if (d == 0) throw DomainError("rational series evaluated at a pole t = " + to_string(t));
  return numerator_.evaluate(t) / d;
}

RationalFunction RationalFunction::reduced(Polynomial numerator, Polynomial denominator) {
  if (denominator.is_zero()) throw DomainError("rational function with zero denominator");
  if (numerator.is_zero()) return {Polynomial{}, Polynomial::constant(1)};
  Polynomial g = gcd(numerator, denominator);
  numerator = divide(numerator, g).quotient;
  denominator = divide(denominator, g).quotient;
  Rational lead = denominator.leading();
  return {(1 / lead) * numerator, (1 / lead) * denominator};
}

Rational RationalFunction::evaluate(const Rational& x) const {
  Rational d = denominator.evaluate(x);
  if (d == 0) throw DomainError("rational function evaluated at a pole x = " + to_string(x));
  return numerator.evaluate(x) / d;
}

RationalFunction RationalFunction::derivative() const {
  return reduced(numerator.derivative() * denominator - numerator * denominator.derivative(),
                 denominator * denominator);
}

namespace {

int sign_changes(const std::vector<Rational>& values) {
  int changes = 0;
  int previous = 0;
  for (const auto& v : values) {
    int s = sgn(v);
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

}  // namespace

int count_real_roots_above(const Polynomial& p, const Rational& bound) {
  if (p.degree() <= 0) return 0;
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = divide(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    chain.push_back(Rational(-1) * r);
  }
  std::vector<Rational> at_bound, at_infinity;
  for (const auto& q : chain) {
    at_bound.push_back(q.evaluate(bound));
    at_infinity.push_back(q.leading());
  }
  // Distinct roots in (bound, ∞); a root at the bound itself is excluded.
  return sign_changes(at_bound) - sign_changes(at_infinity);
}

}  // namespace regfree
