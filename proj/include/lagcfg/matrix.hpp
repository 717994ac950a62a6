#pragma once

#include <cstddef>
#include <vector>

#include "lagcfg/scalar.hpp"

namespace lagcfg {

// Dense row-major matrix of scalars of a single field kind.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, FieldKind kind);

  static Matrix identity(std::size_t n, FieldKind kind);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldKind kind() const { return kind_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix to_kind(FieldKind kind) const;
  double max_abs() const;

  bool operator==(const Matrix& o) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  FieldKind kind_ = FieldKind::Rational;
  std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Scalar& s, const Matrix& a);

bool approx_equal(const Matrix& a, const Matrix& b, const FieldContext& ctx = {});

// Rational: Bareiss elimination on the integer-scaled matrix. Complex: partial pivoting.
Scalar determinant(const Matrix& m);
std::size_t rank(const Matrix& m, const FieldContext& ctx = {});
// Solves a * x = b for square nonsingular a; throws RankDeficient.
Matrix solve(const Matrix& a, const Matrix& b, const FieldContext& ctx = {});
Matrix inverse(const Matrix& a, const FieldContext& ctx = {});
// Basis of {x : m x = 0}. Rational basis vectors are primitive integer vectors.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m, const FieldContext& ctx = {});

}  // namespace lagcfg
