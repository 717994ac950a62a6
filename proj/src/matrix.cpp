#include "lagcfg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace lagcfg {

Matrix::Matrix(std::size_t rows, std::size_t cols, FieldKind kind)
    : rows_(rows), cols_(cols), kind_(kind), data_(rows * cols, Scalar::zero(kind)) {}

Matrix Matrix::identity(std::size_t n, FieldKind kind) {
  Matrix m(n, n, kind);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(kind);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, kind_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  Matrix b(nr, nc, kind_);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Matrix Matrix::to_kind(FieldKind kind) const {
  Matrix m(rows_, cols_, kind);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = lagcfg::to_kind(data_[k], kind);
  return m;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (const Scalar& s : data_) best = std::max(best, s.abs());
  return best;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

void require_kind(const Matrix& a, const Matrix& b) {
  if (a.kind() != b.kind()) throw Error(ErrorCode::MixedFieldKinds, "matrix kinds differ");
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_kind(a, b);
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix c(a.rows(), b.cols(), a.kind());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_exact_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_exact_zero()) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_kind(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_kind(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

bool approx_equal(const Matrix& a, const Matrix& b, const FieldContext& ctx) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  require_kind(a, b);
  if (a.kind() == FieldKind::Rational) return a == b;
  double scale = std::max(a.max_abs(), b.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_negligible(a(i, j) - b(i, j), scale, ctx)) return false;
  return true;
}

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Multiplies each row by the lcm of its denominators. Returns the per-row factors.
IntMatrix integer_rows(const Matrix& m, std::vector<mpz_class>* factors) {
  IntMatrix out(m.rows(), std::vector<mpz_class>(m.cols()));
  if (factors) factors->assign(m.rows(), mpz_class(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).q().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).q();
      out[i][j] = q.get_num() * (l / q.get_den());
    }
    if (factors) (*factors)[i] = l;
  }
  return out;
}

// Fraction-free forward elimination on the first `pivots` columns. Returns the row-swap
// parity, or -1 when a pivot column is entirely zero.
int bareiss_forward(IntMatrix& m, std::size_t pivots) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  mpz_class prev = 1;
  int swaps = 0;
  for (std::size_t k = 0; k < pivots; ++k) {
    std::size_t p = k;
    while (p < rows && sgn(m[p][k]) == 0) ++p;
    if (p == rows) return -1;
    if (p != k) {
      std::swap(m[p], m[k]);
      swaps ^= 1;
    }
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return swaps;
}

double pivot_threshold(const Matrix& m, const FieldContext& ctx) {
  return std::max(ctx.eps_abs, ctx.eps_rel * m.max_abs());
}

// In-place reduced row echelon form. Returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, const FieldContext& ctx) {
  std::vector<std::size_t> pivots;
  const bool exact = m.kind() == FieldKind::Rational;
  const double tol = exact ? 0.0 : pivot_threshold(m, ctx);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = r;
    if (exact) {
      while (best < m.rows() && m(best, c).is_exact_zero()) ++best;
      if (best == m.rows()) continue;
    } else {
      for (std::size_t i = r + 1; i < m.rows(); ++i)
        if (m(i, c).abs() > m(best, c).abs()) best = i;
      if (m(best, c).abs() <= tol) {
        for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = Scalar::zero(m.kind());
        continue;
      }
    }
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(best, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_exact_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Scalar::one(m.kind());
  if (m.kind() == FieldKind::Rational) {
    std::vector<mpz_class> factors;
    IntMatrix im = integer_rows(m, &factors);
    int swaps = bareiss_forward(im, n);
    if (swaps < 0) return Scalar::zero(FieldKind::Rational);
    mpz_class scale = 1;
    for (const mpz_class& f : factors) scale *= f;
    mpq_class det(im[n - 1][n - 1], scale);
    det.canonicalize();
    if (swaps) det = -det;
    return Scalar(det);
  }
  Matrix a = m;
  Scalar det = Scalar::one(FieldKind::Complex);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (a(i, k).abs() > a(best, k).abs()) best = i;
    if (a(best, k).is_exact_zero()) return Scalar::zero(FieldKind::Complex);
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      det = -det;
    }
    det *= a(k, k);
    Scalar inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      Scalar f = a(i, k) * inv;
      if (f.is_exact_zero()) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t rank(const Matrix& m, const FieldContext& ctx) {
  Matrix a = m;
  return rref(a, ctx).size();
}

Matrix solve(const Matrix& a, const Matrix& b, const FieldContext& ctx) {
  require_kind(a, b);
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve shape");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix aug(n, n + m, a.kind());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < m; ++j) aug(i, n + j) = b(i, j);
  }
  Matrix x(n, m, a.kind());
  if (a.kind() == FieldKind::Rational) {
    IntMatrix im = integer_rows(aug, nullptr);
    if (bareiss_forward(im, n) < 0) throw Error(ErrorCode::RankDeficient, "singular system");
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t k = n; k-- > 0;) {
        mpq_class acc(im[k][n + c]);
        for (std::size_t j = k + 1; j < n; ++j) acc -= mpq_class(im[k][j]) * x(j, c).q();
        acc /= mpq_class(im[k][k]);
        x(k, c) = Scalar(acc);
      }
    }
    return x;
  }
  const double tol = pivot_threshold(a, ctx);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (aug(i, k).abs() > aug(best, k).abs()) best = i;
    if (aug(best, k).abs() <= tol) throw Error(ErrorCode::RankDeficient, "singular system");
    if (best != k)
      for (std::size_t j = 0; j < n + m; ++j) std::swap(aug(k, j), aug(best, j));
    Scalar inv = aug(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      Scalar f = aug(i, k) * inv;
      if (f.is_exact_zero()) continue;
      for (std::size_t j = k; j < n + m; ++j) aug(i, j) -= f * aug(k, j);
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = n; k-- > 0;) {
      Scalar acc = aug(k, n + c);
      for (std::size_t j = k + 1; j < n; ++j) acc -= aug(k, j) * x(j, c);
      x(k, c) = acc / aug(k, k);
    }
  }
  return x;
}

Matrix inverse(const Matrix& a, const FieldContext& ctx) {
  return solve(a, Matrix::identity(a.rows(), a.kind()), ctx);
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m, const FieldContext& ctx) {
  Matrix r = m;
  std::vector<std::size_t> pivots = rref(r, ctx);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(m.kind()));
    v[f] = Scalar::one(m.kind());
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    if (m.kind() == FieldKind::Rational) {
      mpz_class l = 1, g = 0;
      for (const Scalar& s : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.q().get_den_mpz_t());
      for (Scalar& s : v) {
        s = Scalar(mpq_class(s.q() * l));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.q().get_num_mpz_t());
      }
      if (g > 1)
        for (Scalar& s : v) s = Scalar(mpq_class(s.q() / g));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace lagcfg
