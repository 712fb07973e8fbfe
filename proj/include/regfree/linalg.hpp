#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "regfree/exact.hpp"

namespace regfree {

// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

// Fraction-free (Bareiss) determinant.
Integer determinant(IntegerMatrix m);

// Solves A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b);

// Row vector times matrix.
std::vector<Rational> multiply(const std::vector<Rational>& row, const RationalMatrix& m);

}  // namespace regfree
