#include "regfree/linalg.hpp"

#include <utility>

#include "regfree/error.hpp"

namespace regfree {

Integer determinant(IntegerMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer value = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        m(i, j) = value;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.rows();
  if (n != a.cols() || b.size() != n) throw InputError("solve: dimension mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      std::swap(b[k], b[pivot]);
    }
    Rational inv = 1 / a(k, k);
    for (std::size_t c = k; c < n; ++c) a(k, c) *= inv;
    b[k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational factor = a(i, k);
      for (std::size_t c = k; c < n; ++c) {
        if (a(k, c) != 0) a(i, c) -= factor * a(k, c);
      }
      b[i] -= factor * b[k];
    }
  }
  return b;
}

std::vector<Rational> multiply(const std::vector<Rational>& row, const RationalMatrix& m) {
  if (row.size() != m.rows()) throw InputError("multiply: dimension mismatch");
  std::vector<Rational> out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (row[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) out[c] += row[r] * m(r, c);
    }
  }
  return out;
}

}  // namespace regfree
