#include "lagcfg/symplectic.hpp"

#include <algorithm>

namespace lagcfg {

SympVector::SympVector(std::vector<Scalar> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || coords_.size() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic vectors need an even positive dimension");
  }
  for (const Scalar& s : coords_)
    if (s.kind() != coords_.front().kind()) throw Error(ErrorCode::MixedFieldKinds, "mixed coordinates");
}

SympVector SympVector::zero(int n, FieldKind kind) {
  return SympVector(std::vector<Scalar>(2 * n, Scalar::zero(kind)));
}

SympVector SympVector::e(int n, int i, FieldKind kind) {
  SympVector v = zero(n, kind);
  v[i] = Scalar::one(kind);
  return v;
}

SympVector SympVector::f(int n, int i, FieldKind kind) {
  SympVector v = zero(n, kind);
  v[n + i] = Scalar::one(kind);
  return v;
}

SympVector SympVector::operator-() const {
  SympVector r = *this;
  for (Scalar& s : r.coords_) s = -s;
  return r;
}

SympVector& SympVector::operator+=(const SympVector& o) {
  if (o.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "vector sum dimension");
  for (int k = 0; k < dim(); ++k) coords_[k] += o.coords_[k];
  return *this;
}

SympVector operator*(const Scalar& s, const SympVector& v) {
  SympVector r = v;
  for (Scalar& c : r.coords_) c = s * c;
  return r;
}

bool SympVector::is_exact_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_exact_zero(); });
}

double SympVector::norm() const {
  double best = 0.0;
  for (const Scalar& s : coords_) best = std::max(best, s.abs());
  return best;
}

SympVector SympVector::to_kind(FieldKind kind) const {
  std::vector<Scalar> c;
  c.reserve(coords_.size());
  for (const Scalar& s : coords_) c.push_back(lagcfg::to_kind(s, kind));
  return SympVector(std::move(c));
}

Scalar omega(const SympVector& u, const SympVector& v) {
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "omega of vectors of different dimension");
  const int n = u.half_dim();
  Scalar acc = Scalar::zero(u.kind());
  for (int i = 0; i < n; ++i) {
    if (!u[i].is_exact_zero() && !v[n + i].is_exact_zero()) acc += u[i] * v[n + i];
    if (!u[n + i].is_exact_zero() && !v[i].is_exact_zero()) acc -= u[n + i] * v[i];
  }
  return acc;
}

GramMatrix gram(const std::vector<SympVector>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::DimensionMismatch, "Gram matrix of no vectors");
  GramMatrix g;
  g.n = vectors.front().half_dim();
  const std::size_t m = vectors.size();
  g.entries = Matrix(m, m, vectors.front().kind());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Scalar w = omega(vectors[i], vectors[j]);
      g.entries(j, i) = -w;
      g.entries(i, j) = std::move(w);
    }
  }
  return g;
}

Matrix as_columns(const std::vector<SympVector>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::DimensionMismatch, "no vectors");
  Matrix m(vectors.front().dim(), vectors.size(), vectors.front().kind());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].dim() != static_cast<int>(m.rows())) throw Error(ErrorCode::DimensionMismatch, "vector dimensions differ");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = vectors[j][static_cast<int>(i)];
  }
  return m;
}

std::size_t rank(const std::vector<SympVector>& vectors, const FieldContext& ctx) {
  return rank(as_columns(vectors), ctx);
}

SympVector apply(const Matrix& t, const SympVector& v) {
  if (t.cols() != static_cast<std::size_t>(v.dim())) throw Error(ErrorCode::DimensionMismatch, "apply shape");
  std::vector<Scalar> out(t.rows(), Scalar::zero(t.kind()));
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (!t(i, j).is_exact_zero()) out[i] += t(i, j) * v[static_cast<int>(j)];
  return SympVector(std::move(out));
}

Matrix standard_form(int n, FieldKind kind) {
  Matrix j(2 * n, 2 * n, kind);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = Scalar::one(kind);
    j(n + i, i) = -Scalar::one(kind);
  }
  return j;
}

bool is_symplectic(const Matrix& t, const FieldContext& ctx) {
  if (t.rows() != t.cols() || t.rows() % 2 != 0) return false;
  const Matrix j = standard_form(static_cast<int>(t.rows() / 2), t.kind());
  return approx_equal(t.transpose() * j * t, j, ctx);
}

Matrix opposite_map(int n, FieldKind kind) {
  Matrix q = Matrix::identity(2 * n, kind);
  for (int i = n; i < 2 * n; ++i) q(i, i) = -Scalar::one(kind);
  return q;
}

Matrix reconstruct_transform(const std::vector<SympVector>& xs, const std::vector<SympVector>& ys,
                             const FieldContext& ctx) {
  if (xs.size() != ys.size() || xs.empty()) throw Error(ErrorCode::DimensionMismatch, "point lists differ in length");
  const int dim = xs.front().dim();
  if (!approx_equal(gram(xs).entries, gram(ys).entries, ctx)) {
    throw Error(ErrorCode::GramMismatch, "Gram matrices differ");
  }
  // Greedy choice of a basis among xs.
  std::vector<std::size_t> basis;
  std::vector<SympVector> chosen;
  for (std::size_t k = 0; k < xs.size() && static_cast<int>(basis.size()) < dim; ++k) {
    chosen.push_back(xs[k]);
    if (rank(chosen, ctx) == chosen.size()) {
      basis.push_back(k);
    } else {
      chosen.pop_back();
    }
  }
  if (static_cast<int>(basis.size()) < dim) throw Error(ErrorCode::RankDeficient, "points do not span");
  std::vector<SympVector> xb, yb;
  for (std::size_t k : basis) {
    xb.push_back(xs[k]);
    yb.push_back(ys[k]);
  }
  // T X = Y  <=>  X^T T^T = Y^T.
  Matrix x = as_columns(xb);
  Matrix y = as_columns(yb);
  Matrix t = solve(x.transpose(), y.transpose(), ctx).transpose();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    SympVector tx = apply(t, xs[k]);
    const double scale = std::max(tx.norm(), ys[k].norm());
    for (int c = 0; c < dim; ++c) {
      if (!is_negligible(tx[c] - ys[k][c], scale, ctx)) {
        throw Error(ErrorCode::GramMismatch, "no linear map sends every point to its target");
      }
    }
  }
  return t;
}

Matrix random_symplectic(int n, Rng& rng, FieldKind kind) {
  // Rational: small integer shears keep Grams exact. Complex: real shears in [-1, 1] keep the
  // result well conditioned, and real configurations stay real.
  const bool exact = kind == FieldKind::Rational;
  auto shear = [&]() {
    return exact ? Scalar::rational(rng.uniform(-3, 3)) : Scalar::complex(rng.uniform_real(-1, 1));
  };
  Matrix t = Matrix::identity(2 * n, kind);
  for (int round = 0; round < 2; ++round) {
    Matrix lower = Matrix::identity(2 * n, kind);
    Matrix upper = Matrix::identity(2 * n, kind);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Scalar s = shear();
        lower(n + i, j) = s;
        lower(n + j, i) = s;
        Scalar u = shear();
        upper(i, n + j) = u;
        upper(j, n + i) = u;
      }
    }
    Matrix diag = Matrix::identity(2 * n, kind);
    for (int i = 0; i < n; ++i) {
      Scalar d = exact ? Scalar::rational(rng.uniform_nonzero(-2, 2))
                       : Scalar::complex((rng.uniform(0, 1) ? 1.0 : -1.0) * rng.uniform_real(0.7, 1.4));
      diag(i, i) = d;
      diag(n + i, n + i) = d.inverse();
    }
    t = diag * upper * lower * t;
  }
  return t;
}

Matrix random_symplectic(int n, std::uint64_t seed, FieldKind kind) {
  Rng rng(seed);
  return random_symplectic(n, rng, kind);
}

Matrix symplectic_basis(const Matrix& g, const FieldContext& ctx) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square of even size");
  const std::size_t dim = g.rows();
  const std::size_t n = dim / 2;
  const FieldKind kind = g.kind();
  auto pairing = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    Scalar acc = Scalar::zero(kind);
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i].is_exact_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (!b[j].is_exact_zero() && !g(i, j).is_exact_zero()) acc += a[i] * g(i, j) * b[j];
    }
    return acc;
  };
  std::vector<std::vector<Scalar>> rest;
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Scalar> v(dim, Scalar::zero(kind));
    v[k] = Scalar::one(kind);
    rest.push_back(std::move(v));
  }
  const double tol = std::max(ctx.eps_abs, ctx.eps_rel * g.max_abs());
  Matrix p(dim, dim, kind);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t bp = 0, bq = 0;
    double best = -1.0;
    Scalar best_w;
    for (std::size_t a = 0; a < rest.size() && !(kind == FieldKind::Rational && best > 0); ++a) {
      for (std::size_t b = a + 1; b < rest.size(); ++b) {
        Scalar w = pairing(rest[a], rest[b]);
        if (w.is_exact_zero()) continue;
        if (w.abs() > best) {
          best = w.abs();
          best_w = w;
          bp = a;
          bq = b;
          if (kind == FieldKind::Rational) break;
        }
      }
    }
    if (best < 0 || (kind == FieldKind::Complex && best <= tol)) {
      throw Error(ErrorCode::RankDeficient, "skew form is degenerate");
    }
    std::vector<Scalar> u = rest[bp];
    std::vector<Scalar> w = rest[bq];
    Scalar inv = best_w.inverse();
    for (Scalar& s : w) s *= inv;
    rest.erase(rest.begin() + static_cast<long>(bq));
    rest.erase(rest.begin() + static_cast<long>(bp));
    for (auto& c : rest) {
      Scalar cw = pairing(c, w);
      Scalar cu = pairing(c, u);
      for (std::size_t i = 0; i < dim; ++i) c[i] = c[i] - cw * u[i] + cu * w[i];
    }
    for (std::size_t i = 0; i < dim; ++i) {
      p(i, step) = u[i];
      p(i, n + step) = w[i];
    }
  }
  return p;
}

bool is_skew(const Matrix& a, const FieldContext& ctx) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.max_abs();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (!is_negligible(a(i, j) + a(j, i), scale, ctx)) return false;
  return true;
}

}  // namespace lagcfg
