#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unifree {

using Rational = boost::multiprecision::cpp_rational;
using Vector = std::vector<Rational>;

/// Parses "p/q", "p" or a decimal-free integer literal; q must be nonzero.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form with q >= 1, e.g. "0/1", "-1/2".
std::string format_rational(const Rational& r);

Rational norm1(const Vector& v);
Vector unit_vector(std::size_t dim, std::size_t i);
std::string format_vector(const Vector& v);

// Dense row-major rational matrix; maps column vectors of length cols() to
// vectors of length rows().
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector apply(const Vector& v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Operator norm for l1 -> l1: the largest column l1 norm. Exact.
Rational operator_norm1(const Matrix& m);

std::size_t rank(Matrix m);

}  // namespace unifree
