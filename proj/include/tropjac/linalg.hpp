#pragma once

#include "tropjac/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tropjac {

/// Dense row-major matrix over an exact ring.
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

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

RationalMatrix to_rational(const IntegerMatrix& m);

/// Unique solution of a square nonsingular system; nullopt when singular.
std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b);

std::optional<RationalMatrix> inverse(const RationalMatrix& a);

std::size_t rank(const RationalMatrix& a);

/// Columns form a basis of { x : a x = 0 }. Pivoting is deterministic
/// (first nonzero entry in row order).
RationalMatrix nullspace(const RationalMatrix& a);

/// Scales every row by the least common multiple of its denominators.
IntegerMatrix clear_row_denominators(const RationalMatrix& a);

/// Column-style Hermite normal form: the returned columns are a basis of
/// the lattice spanned by the columns of `generators`, in echelon form
/// (column k has zeros above its pivot row, pivots positive and
/// increasing in row index, entries left of a pivot reduced modulo it).
IntegerMatrix hermite_normal_form(const IntegerMatrix& generators);

/// Whether v lies in the Z-span of the columns of `generators`.
bool in_integer_span(const IntegerMatrix& generators, const std::vector<Integer>& v);

/// Index of the column lattice in Z^rows; 0 if it is not of full rank.
Integer lattice_index(const IntegerMatrix& generators);

}  // namespace tropjac
