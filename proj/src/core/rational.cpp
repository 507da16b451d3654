#include "unifree/rational.hpp"

#include <algorithm>
#include <cctype>

#include "unifree/error.hpp"

namespace unifree {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) fail(ErrorCode::MalformedInput, "bad rational '" + std::string(whole) + "'");
  boost::multiprecision::cpp_int value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(ErrorCode::MalformedInput, "bad rational '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? -value : value;
}

bool zero(const Rational& r) { return r.is_zero(); }

}  // namespace

Rational parse_rational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  auto slash = trimmed.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(trimmed, text));
  auto num = parse_integer(trimmed.substr(0, slash), text);
  auto den = parse_integer(trimmed.substr(slash + 1), text);
  if (den == 0) fail(ErrorCode::MalformedInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational norm1(const Vector& v) {
  Rational total = 0;
  for (const auto& x : v) total += abs(x);
  return total;
}

Vector unit_vector(std::size_t dim, std::size_t i) {
  Vector v(dim, Rational(0));
  v.at(i) = 1;
  return v;
}

std::string format_vector(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(v[i]);
  }
  return out + ")";
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) fail(ErrorCode::MalformedInput, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) fail(ErrorCode::MalformedInput, "vector length does not match matrix");
  Vector out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!zero(v[c]) && !zero(at(r, c))) out[r] += at(r, c) * v[c];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::MalformedInput, "matrix dimensions do not compose");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a.at(i, k);
      if (zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!zero(b.at(k, j))) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

Rational operator_norm1(const Matrix& m) {
  Rational best = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, norm1(m.column(c)));
  return best;
}

std::size_t rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && zero(m.at(pivot, c))) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pivot, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (zero(m.at(i, c))) continue;
      Rational factor = m.at(i, c) / m.at(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace unifree
