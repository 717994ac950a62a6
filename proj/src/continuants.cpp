#include "lagcfg/continuants.hpp"

#include <algorithm>
#include <functional>

namespace lagcfg {

Scalar continuant(const std::vector<Scalar>& a, FieldKind kind) {
  if (a.empty()) return Scalar::one(kind);
  kind = a.front().kind();
  Scalar before = Scalar::zero(kind);  // K_{-1}
  Scalar current = Scalar::one(kind);  // K_0
  for (const Scalar& v : a) {
    Scalar next = v * current - before;
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

Scalar cyclic_continuant_trace(const std::vector<Scalar>& a) {
  if (a.empty()) throw Error(ErrorCode::RangeError, "cyclic continuant of an empty sequence");
  const FieldKind kind = a.front().kind();
  Matrix m = Matrix::identity(2, kind);
  for (const Scalar& v : a) {
    Matrix step(2, 2, kind);
    step(0, 0) = v;
    step(0, 1) = -Scalar::one(kind);
    step(1, 0) = Scalar::one(kind);
    m = step * m;
  }
  return m(0, 0) + m(1, 1);
}

Scalar cyclic_continuant(const std::vector<Scalar>& a) {
  if (a.empty()) throw Error(ErrorCode::RangeError, "cyclic continuant of an empty sequence");
  const FieldKind kind = a.front().kind();
  Scalar value = continuant(a, kind);
  if (a.size() >= 2) value -= continuant(std::vector<Scalar>(a.begin() + 1, a.end() - 1), kind);
  if (!approx_eq(value, cyclic_continuant_trace(a))) {
    throw Error(ErrorCode::InternalCheckFailed, "cyclic continuant disagrees with its trace form");
  }
  return value;
}

Matrix TridiagData::to_matrix() const {
  check_tridiag(*this);
  const std::size_t m = diag.size();
  Matrix t(m, m, m ? diag.front().kind() : FieldKind::Rational);
  for (std::size_t k = 0; k < m; ++k) {
    t(k, k) = diag[k];
    if (k + 1 < m) {
      t(k, k + 1) = super[k];
      t(k + 1, k) = sub[k];
    }
  }
  return t;
}

void check_tridiag(const TridiagData& d) {
  const std::size_t off = d.diag.empty() ? 0 : d.diag.size() - 1;
  if (d.super.size() != off || d.sub.size() != off) {
    throw Error(ErrorCode::LengthMismatch, "tridiagonal band lengths must be m, m-1, m-1");
  }
}

std::vector<EulerTerm> euler_terms(int m) {
  std::vector<EulerTerm> out;
  EulerTerm current;
  std::function<void(int)> extend = [&](int next) {
    out.push_back(current);
    for (int k = next; k + 1 < m; ++k) {
      current.pairs.push_back(k);
      current.sign = -current.sign;
      extend(k + 2);
      current.pairs.pop_back();
      current.sign = -current.sign;
    }
  };
  extend(0);
  return out;
}

Scalar euler_term_value(const TridiagData& d, const EulerTerm& t) {
  check_tridiag(d);
  const int m = d.size();
  const FieldKind kind = m ? d.diag.front().kind() : FieldKind::Rational;
  std::vector<bool> covered(m, false);
  Scalar value = Scalar::one(kind);
  for (int k : t.pairs) {
    covered[k] = covered[k + 1] = true;
    value *= -(d.super[k] * d.sub[k]);
  }
  for (int k = 0; k < m; ++k)
    if (!covered[k]) value *= d.diag[k];
  return value;
}

Scalar tridiag_det(const TridiagData& d, TridiagMethod method) {
  check_tridiag(d);
  const int m = d.size();
  if (m == 0) return Scalar::one(FieldKind::Rational);
  const FieldKind kind = d.diag.front().kind();
  if (method == TridiagMethod::Direct) {
    // Cofactor expansion along the last row.
    Scalar before = Scalar::one(kind);
    Scalar current = d.diag[0];
    for (int k = 1; k < m; ++k) {
      Scalar next = d.diag[k] * current - d.super[k - 1] * d.sub[k - 1] * before;
      before = std::move(current);
      current = std::move(next);
    }
    return current;
  }
  Scalar product = Scalar::one(kind);
  for (const Scalar& a : d.diag) {
    if (a.is_exact_zero()) throw Error(ErrorCode::EulerFormulaUndefined, "zero diagonal entry");
    product *= a;
  }
  Scalar sum = Scalar::zero(kind);
  for (const EulerTerm& t : euler_terms(m)) {
    Scalar term = Scalar::from_int(t.sign, kind);
    for (int k : t.pairs) term *= d.super[k] * d.sub[k] / (d.diag[k] * d.diag[k + 1]);
    sum += term;
  }
  return product * sum;
}

std::vector<std::vector<int>> index_set(int n, int r) {
  if (n < 1 || r < 1 || r > (n + 1) / 2) throw Error(ErrorCode::RangeError, "need 1 <= r <= (n+1)/2");
  std::vector<std::vector<int>> out;
  std::vector<int> tuple;
  std::function<void(int)> extend = [&](int next) {
    if (static_cast<int>(tuple.size()) == r) {
      if (r == 1 || tuple.front() + (n + 1) - tuple.back() > 1) out.push_back(tuple);
      return;
    }
    for (int i = next; i <= n; ++i) {
      tuple.push_back(i);
      extend(i + 2);
      tuple.pop_back();
    }
  };
  extend(0);
  return out;
}

Scalar pfaffian(const Matrix& g, const FieldContext& ctx) {
  if (g.rows() != g.cols() || !is_skew(g, ctx)) throw Error(ErrorCode::NotSkew, "pfaffian needs a skew-symmetric matrix");
  const std::size_t m = g.rows();
  const FieldKind kind = g.kind();
  if (m % 2 == 1) return Scalar::zero(kind);
  Matrix a = g;
  const double tol = std::max(ctx.eps_abs, ctx.eps_rel * g.max_abs());
  Scalar pf = Scalar::one(kind);
  for (std::size_t k = 0; k < m; k += 2) {
    std::size_t piv = m;
    for (std::size_t j = k + 1; j < m; ++j) {
      if (a(k, j).is_exact_zero()) continue;
      if (kind == FieldKind::Rational) {
        piv = j;
        break;
      }
      if (piv == m || a(k, j).abs() > a(k, piv).abs()) piv = j;
    }
    if (piv == m || (kind == FieldKind::Complex && a(k, piv).abs() <= tol)) return Scalar::zero(kind);
    if (piv != k + 1) {
      for (std::size_t t = 0; t < m; ++t) std::swap(a(k + 1, t), a(piv, t));
      for (std::size_t t = 0; t < m; ++t) std::swap(a(t, k + 1), a(t, piv));
      pf = -pf;
    }
    const Scalar b = a(k, k + 1);
    pf *= b;
    const Scalar inv = b.inverse();
    for (std::size_t i = k + 2; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        Scalar corr = a(k + 1, i) * a(k, j) - a(k, i) * a(k + 1, j);
        if (corr.is_exact_zero()) continue;
        a(i, j) += corr * inv;
        a(j, i) = -a(i, j);
      }
    }
  }
  return pf;
}

OmegaData omega_data(const Matrix& gram, int n) {
  const int N = 2 * n + 2;
  if (n < 1 || gram.rows() != static_cast<std::size_t>(N) || gram.cols() != gram.rows()) {
    throw Error(ErrorCode::WrongN, "Omega data needs the Gram matrix of an (n, 2n+2) configuration");
  }
  auto w = [&](long i, long j) {
    auto [ri, si] = reduce_index(i, N);
    auto [rj, sj] = reduce_index(j, N);
    return si * sj > 0 ? gram(ri, rj) : -gram(ri, rj);
  };
  OmegaData d;
  d.n = n;
  d.first = w(0, n);
  d.last = w(n + 1, 2 * n + 1);
  for (int k = 0; k <= n; ++k) d.band.diag.push_back(w(k, k + n + 1));
  for (int k = 0; k < n; ++k) {
    d.band.super.push_back(w(k, k + n + 2));
    d.band.sub.push_back(w(k + 1, k + n + 1));
  }
  return d;
}

OmegaData omega_data(const Configuration& cfg) { return omega_data(cfg.gram().entries, cfg.n()); }

namespace {

Matrix assemble_block(const Matrix& a, const Scalar& x, const Scalar& y) {
  const std::size_t m = a.rows();
  Matrix g(2 * m, 2 * m, a.kind());
  g(0, m - 1) = x;
  g(m - 1, 0) = -x;
  g(m, 2 * m - 1) = y;
  g(2 * m - 1, m) = -y;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      g(i, m + j) = a(i, j);
      g(m + j, i) = -a(i, j);
    }
  }
  return g;
}

}  // namespace

Matrix omega_matrix(const OmegaData& d) { return assemble_block(d.band.to_matrix(), d.first, d.last); }

Scalar pfaffian_omega(const OmegaData& d, PfaffianMethod method, const FieldContext& ctx) {
  check_tridiag(d.band);
  if (d.band.size() != d.n + 1) throw Error(ErrorCode::LengthMismatch, "band must be (n+1) x (n+1)");
  if (method == PfaffianMethod::Generic) return pfaffian(omega_matrix(d), ctx);
  const int n = d.n;
  const FieldKind kind = d.first.kind();
  Scalar product = Scalar::one(kind);
  for (const Scalar& a : d.band.diag) {
    if (a.is_exact_zero()) throw Error(ErrorCode::FormulaUndefined, "zero diameter");
    product *= a;
  }
  // ratio(i) for the adjacent pair (i, i+1); the pair (n, 0) uses the boundary scalars.
  std::vector<Scalar> ratio;
  for (int i = 0; i < n; ++i) {
    ratio.push_back(d.band.super[i] * d.band.sub[i] / (d.band.diag[i] * d.band.diag[i + 1]));
  }
  ratio.push_back(d.first * d.last / (d.band.diag[n] * d.band.diag[0]));
  Scalar sum = Scalar::one(kind);
  for (int r = 1; r <= (n + 1) / 2; ++r) {
    for (const auto& tuple : index_set(n, r)) {
      Scalar term = Scalar::from_int(r % 2 ? -1 : 1, kind);
      for (int i : tuple) term *= ratio[i];
      sum += term;
    }
  }
  const long pairs = static_cast<long>(n) * (n + 1) / 2;
  Scalar value = product * sum;
  return pairs % 2 ? -value : value;
}

BlockPfaffian block_pfaffian(const Matrix& a, const Scalar& x, const Scalar& y, const FieldContext& ctx) {
  const std::size_t m = a.rows();
  if (m < 2 || a.cols() != m) throw Error(ErrorCode::DimensionMismatch, "block Pfaffian needs a square A with m >= 2");
  BlockPfaffian out;
  out.pfaffian = pfaffian(assemble_block(a, x, y), ctx);
  Scalar closed = determinant(a) - x * y * determinant(a.block(1, 1, m - 2, m - 2));
  out.closed_form = (m * (m - 1) / 2) % 2 ? -closed : closed;
  out.difference = out.pfaffian - out.closed_form;
  return out;
}

namespace {

template <typename Visit>
Scalar gen_eq_sum(const std::vector<Scalar>& c, Visit&& visit) {
  if (c.size() < 2) throw Error(ErrorCode::LengthMismatch, "need at least two cross-ratios");
  const int n = static_cast<int>(c.size()) - 1;
  const FieldKind kind = c.front().kind();
  std::vector<Scalar> inv;
  for (const Scalar& v : c) {
    if (v.is_exact_zero()) throw Error(ErrorCode::ZeroCrossRatio, "cross-ratio is zero");
    inv.push_back(v.inverse());
  }
  Scalar total = Scalar::one(kind);
  visit(total);
  for (int r = 1; r <= (n + 1) / 2; ++r) {
    for (const auto& tuple : index_set(n, r)) {
      Scalar term = Scalar::from_int(r % 2 ? -1 : 1, kind);
      for (int i : tuple) term *= inv[i];
      visit(term);
      total += term;
    }
  }
  return total;
}

}  // namespace

Scalar gen_eq_value(const std::vector<Scalar>& c) {
  return gen_eq_sum(c, [](const Scalar&) {});
}

double gen_eq_normalized_residual(const std::vector<Scalar>& c) {
  double largest = 1.0;
  Scalar total = gen_eq_sum(c, [&](const Scalar& term) { largest = std::max(largest, term.abs()); });
  return total.abs() / largest;
}

std::size_t gen_eq_term_count(int n) {
  std::size_t count = 1;
  for (int r = 1; r <= (n + 1) / 2; ++r) count += index_set(n, r).size();
  return count;
}

}  // namespace lagcfg
