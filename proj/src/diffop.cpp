#include "lagcfg/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace lagcfg {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

bool vanishes(const Scalar& s, const FieldContext& ctx) { return s.is_exact_zero() || is_zero(s, ctx); }

// Relative comparison for float values; exact for rationals.
bool close(const Scalar& a, const Scalar& b, double scale, double eps) {
  if (a.is_rational() && b.is_rational()) return a == b;
  return (a - b).abs() <= eps * std::max({1e-300, scale, a.abs(), b.abs()});
}

void require_nondegenerate(const DifferenceOperator& op) {
  for (int i = 0; i < op.period(); ++i)
    if (op.a(op.n(), i).is_exact_zero())
      throw Error(ErrorCode::DegenerateOperator, "top coefficient vanishes at i = " + std::to_string(i));
}

}  // namespace

DifferenceOperator::DifferenceOperator(int n, int N, std::vector<std::vector<Scalar>> coeffs)
    : n_(n), N_(N), coeffs_(std::move(coeffs)) {
  if (n < 1 || N < 1) throw Error(ErrorCode::InvalidInput, "operator needs n >= 1 and N >= 1");
  if (static_cast<int>(coeffs_.size()) != n + 1)
    throw Error(ErrorCode::LengthMismatch, "expected n + 1 coefficient sequences");
  const FieldKind k = coeffs_.front().empty() ? FieldKind::Rational : coeffs_.front().front().kind();
  for (const auto& row : coeffs_) {
    if (static_cast<int>(row.size()) != N) throw Error(ErrorCode::LengthMismatch, "each coefficient sequence needs N entries");
    for (const Scalar& s : row)
      if (s.kind() != k) throw Error(ErrorCode::MixedFieldKinds, "coefficients of different kinds");
  }
}

Scalar DifferenceOperator::a(int l, long i) const {
  if (l < 0) return a(-l, i - l);
  if (l > n_) throw Error(ErrorCode::RangeError, "coefficient index above n");
  return coeffs_[static_cast<std::size_t>(l)][static_cast<std::size_t>(mod(i, N_))];
}

Scalar DifferenceOperator::coeff(long i, int k) const { return k <= 0 ? a(-k, i) : a(k, i + k); }

bool DifferenceOperator::is_degenerate(const FieldContext& ctx) const {
  for (int i = 0; i < N_; ++i)
    if (vanishes(a(n_, i), ctx)) return true;
  return false;
}

DifferenceOperator DifferenceOperator::negated() const {
  auto c = coeffs_;
  for (auto& row : c)
    for (Scalar& s : row) s = -s;
  return DifferenceOperator(n_, N_, std::move(c));
}

DifferenceOperator DifferenceOperator::to_kind(FieldKind kind) const {
  auto c = coeffs_;
  for (auto& row : c)
    for (Scalar& s : row) s = lagcfg::to_kind(s, kind);
  return DifferenceOperator(n_, N_, std::move(c));
}

bool approx_equal(const DifferenceOperator& a, const DifferenceOperator& b, const FieldContext& ctx) {
  if (a.n() != b.n() || a.period() != b.period()) return false;
  double scale = 0.0;
  for (const auto& row : a.coeffs())
    for (const Scalar& s : row) scale = std::max(scale, s.abs());
  for (int l = 0; l <= a.n(); ++l)
    for (int i = 0; i < a.period(); ++i) {
      const Scalar& x = a.coeffs()[l][i];
      const Scalar& y = b.coeffs()[l][i];
      if (x.is_rational() && y.is_rational()) {
        if (x != y) return false;
      } else if ((x - y).abs() > std::max(ctx.eps_abs, ctx.eps_rel * std::max(scale, 1.0))) {
        return false;
      }
    }
  return true;
}

const Scalar& SolutionWindow::at(long j) const {
  if (j < lo || j > hi()) throw Error(ErrorCode::WindowTooSmall, "index " + std::to_string(j) + " outside the window");
  return values[static_cast<std::size_t>(j - lo)];
}

SolutionWindow solve(const DifferenceOperator& op, long i0, const std::vector<Scalar>& init, long lo, long hi) {
  const int n = op.n();
  if (static_cast<int>(init.size()) != 2 * n) throw Error(ErrorCode::LengthMismatch, "need 2n initial values");
  if (lo > i0 + 1 || hi < i0 + 2 * n) throw Error(ErrorCode::WindowTooSmall, "range must contain the initial values");
  require_nondegenerate(op);
  SolutionWindow w;
  w.lo = lo;
  w.values.assign(static_cast<std::size_t>(hi - lo + 1), Scalar::zero(op.kind()));
  auto ref = [&](long j) -> Scalar& { return w.values[static_cast<std::size_t>(j - lo)]; };
  for (int k = 0; k < 2 * n; ++k) ref(i0 + 1 + k) = lagcfg::to_kind(init[k], op.kind());
  for (long j = i0 + 2 * n + 1; j <= hi; ++j) {
    const long c = j - n;
    Scalar acc = Scalar::zero(op.kind());
    for (int k = -n; k < n; ++k) acc += op.coeff(c, k) * ref(c + k);
    ref(j) = -acc / op.a(n, j);
  }
  for (long j = i0; j >= lo; --j) {
    const long c = j + n;
    Scalar acc = Scalar::zero(op.kind());
    for (int k = -n + 1; k <= n; ++k) acc += op.coeff(c, k) * ref(c + k);
    ref(j) = -acc / op.a(n, c);
  }
  return w;
}

double window_residual(const DifferenceOperator& op, const SolutionWindow& w) {
  const int n = op.n();
  double worst = 0.0;
  for (long c = w.lo + n; c + n <= w.hi(); ++c) {
    Scalar acc = Scalar::zero(op.kind());
    for (int k = -n; k <= n; ++k) acc += op.coeff(c, k) * w.at(c + k);
    worst = std::max(worst, acc.abs());
  }
  return worst;
}

SolutionWindow basis_solution(const DifferenceOperator& op, long i, long lo, long hi) {
  const int n = op.n();
  require_nondegenerate(op);
  std::vector<Scalar> init(static_cast<std::size_t>(2 * n), Scalar::zero(op.kind()));
  init.back() = op.a(n, i + n).inverse();
  const long start = std::min(lo, i - n + 1), stop = std::max(hi, i + n);
  SolutionWindow full = solve(op, i - n, init, start, stop);
  if (start == lo && stop == hi) return full;
  SolutionWindow w;
  w.lo = lo;
  for (long j = lo; j <= hi; ++j) w.values.push_back(full.at(j));
  return w;
}

SolutionWindow basis_solution(const DifferenceOperator& op, long i) {
  return basis_solution(op, i, -op.n(), op.period() + op.n());
}

Scalar wronskian(const DifferenceOperator& op, const SolutionWindow& v, const SolutionWindow& w, long i) {
  const int n = op.n();
  if (!v.covers(i + 1 - n, i + n) || !w.covers(i + 1 - n, i + n))
    throw Error(ErrorCode::WindowTooSmall, "windows must cover [i+1-n, i+n]");
  Scalar acc = Scalar::zero(op.kind());
  for (int l = 1; l <= n; ++l)
    for (long m = i + 1; m <= i + l; ++m)
      acc += op.a(l, m) * (v.at(m - l) * w.at(m) - v.at(m) * w.at(m - l));
  return acc;
}

Matrix monodromy(const DifferenceOperator& op, const FieldContext& ctx) {
  const int n = op.n(), N = op.period();
  require_nondegenerate(op);
  Matrix b(2 * n, 2 * n, op.kind()), c(2 * n, 2 * n, op.kind());
  for (int k = 0; k < 2 * n; ++k) {
    SolutionWindow v = basis_solution(op, k, -n, N + 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
      b(r, k) = v.at(N + r);
      c(r, k) = v.at(r);
    }
  }
  return solve(b, c, ctx);
}

DifferenceOperator rescale(const DifferenceOperator& op, const std::vector<Scalar>& lambda) {
  const int n = op.n(), N = op.period();
  if (static_cast<int>(lambda.size()) != N) throw Error(ErrorCode::LengthMismatch, "rescaling needs N entries");
  for (const Scalar& s : lambda)
    if (s.is_exact_zero()) throw Error(ErrorCode::ZeroRescaleEntry, "rescaling by zero");
  auto c = op.coeffs();
  for (int l = 0; l <= n; ++l)
    for (int i = 0; i < N; ++i)
      c[l][i] = c[l][i] / (lambda[i] * lambda[mod(i - l, N)]);
  return DifferenceOperator(n, N, std::move(c));
}

namespace {

std::optional<std::vector<Scalar>> recover_same_kind(const DifferenceOperator& src, const DifferenceOperator& dst,
                                                     const FieldContext& ctx) {
  const int n = src.n(), N = src.period();
  const FieldKind kind = src.kind();
  const double eps = std::max(ctx.eps_rel, 1e-8);
  // lambda_u lambda_v = r for every pair of matching nonzero coefficients.
  struct Edge {
    int u, v;
    Scalar r;
  };
  std::vector<std::vector<Edge>> adj(N);
  for (int l = 0; l <= n; ++l)
    for (int i = 0; i < N; ++i) {
      const Scalar& x = src.coeffs()[l][i];
      const Scalar& y = dst.coeffs()[l][i];
      const bool zx = vanishes(x, ctx), zy = vanishes(y, ctx);
      if (zx != zy) return std::nullopt;
      if (zx) continue;
      const int u = i, v = static_cast<int>(mod(i - l, N));
      adj[u].push_back({u, v, x / y});
      if (u != v) adj[v].push_back({v, u, x / y});
    }
  // lambda_j = base_j * t^sign_j with one unknown t per component.
  std::vector<Scalar> base(N);
  std::vector<int> sign(N, 0), comp(N, -1);
  std::vector<std::optional<Scalar>> t_squared;
  for (int root = 0; root < N; ++root) {
    if (comp[root] >= 0) continue;
    const int id = static_cast<int>(t_squared.size());
    t_squared.emplace_back();
    comp[root] = id;
    base[root] = Scalar::one(kind);
    sign[root] = 1;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Edge& e : adj[u]) {
        if (comp[e.v] < 0) {
          comp[e.v] = id;
          base[e.v] = e.r / base[u];
          sign[e.v] = -sign[u];
          stack.push_back(e.v);
        } else if (sign[e.v] == -sign[u]) {
          if (!close(base[u] * base[e.v], e.r, 0.0, eps)) return std::nullopt;
        } else {
          Scalar ts = e.r / (base[u] * base[e.v]);
          if (sign[u] < 0) ts = ts.inverse();
          if (!t_squared[id]) t_squared[id] = ts;
          else if (!close(*t_squared[id], ts, 0.0, eps)) return std::nullopt;
        }
      }
    }
  }
  std::vector<Scalar> t;
  for (const auto& ts : t_squared) t.push_back(ts ? sqrt(*ts) : Scalar::one(kind));
  std::vector<Scalar> lambda(N);
  for (int j = 0; j < N; ++j) lambda[j] = sign[j] > 0 ? base[j] * t[comp[j]] : base[j] / t[comp[j]];
  if (!approx_equal(rescale(src, lambda), dst, FieldContext::complex(eps, ctx.eps_abs))) return std::nullopt;
  return lambda;
}

}  // namespace

std::optional<std::vector<Scalar>> recover_rescaling(const DifferenceOperator& source, const DifferenceOperator& target,
                                                     const FieldContext& ctx) {
  if (source.n() != target.n() || source.period() != target.period()) return std::nullopt;
  DifferenceOperator a = source, b = target;
  if (a.kind() != b.kind()) {
    a = a.to_kind(FieldKind::Complex);
    b = b.to_kind(FieldKind::Complex);
  }
  try {
    return recover_same_kind(a, b, ctx);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RequiresExtension) throw;
  }
  return recover_same_kind(a.to_kind(FieldKind::Complex), b.to_kind(FieldKind::Complex), ctx);
}

Scalar closed_form_coefficient(const Configuration& cfg, int p, long i) {
  const int n = cfg.n();
  if (p < 0 || p > n) throw Error(ErrorCode::RangeError, "p must lie in [0, n]");
  auto w = [&](long a, long b) { return cfg.omega(a, b); };
  const Scalar lead = w(i - n, i);
  if (p == 0) return lead.inverse();
  Scalar total = Scalar::zero(cfg.kind());
  // Subsets {p_1 < .. < p_m} of {1, .., p-1}, bit q-1 standing for q.
  for (unsigned long mask = 0; mask < (1UL << (p - 1)); ++mask) {
    std::vector<int> steps = {0};
    for (int q = 1; q < p; ++q)
      if (mask & (1UL << (q - 1))) steps.push_back(q);
    steps.push_back(p);
    Scalar num = Scalar::one(cfg.kind()), den = lead;
    for (std::size_t s = 1; s < steps.size(); ++s) {
      num *= w(i - n + steps[s - 1], i + steps[s]);
      den *= w(i - n + steps[s], i + steps[s]);
    }
    const std::size_t m = steps.size() - 2;
    Scalar term = num / den;
    total += (m % 2 == 0) ? -term : term;
  }
  return total;
}

DifferenceOperator operator_from_config(const Configuration& cfg, const FieldContext& ctx) {
  ValidationReport report = validate(cfg, ctx);
  if (!report.lagrangian || !report.spanning) throw Error(ErrorCode::InvalidConfiguration, "not a Lagrangian configuration");
  const int n = cfg.n(), N = cfg.size();
  const FieldKind kind = cfg.kind();
  // rows[i][k] is the coefficient of x_{i-n+k}, k = 0..2n.
  std::vector<std::vector<Scalar>> rows(N);
  for (int i = 0; i < N; ++i) {
    const Scalar top = cfg.omega(i - n, i).inverse();
    std::vector<SympVector> cols;
    for (int k = 1; k <= 2 * n; ++k) cols.push_back(cfg.point_ext(i - n + k));
    SympVector rhs = -(top * cfg.point_ext(i - n));
    Matrix b(2 * n, 1, kind);
    for (int r = 0; r < 2 * n; ++r) b(r, 0) = rhs[r];
    // Float solves use unit-norm columns; representatives may differ widely in size.
    std::vector<Scalar> unscale(2 * n, Scalar::one(kind));
    if (kind != FieldKind::Rational)
      for (int k = 0; k < 2 * n; ++k) {
        unscale[k] = Scalar::complex(1.0 / cols[k].norm());
        cols[k] = unscale[k] * cols[k];
      }
    Matrix sol = solve(as_columns(cols), b, ctx);
    rows[i].push_back(top);
    for (int k = 0; k < 2 * n; ++k) rows[i].push_back(sol(k, 0) * unscale[k]);
  }
  std::vector<std::vector<Scalar>> coeffs(n + 1, std::vector<Scalar>(N));
  for (int l = 0; l <= n; ++l)
    for (int i = 0; i < N; ++i) coeffs[l][i] = rows[i][n - l];
  const double eps = std::max(ctx.eps_rel, 1e-7);
  for (int i = 0; i < N; ++i) {
    double scale = 0.0;
    for (const Scalar& s : rows[i]) scale = std::max(scale, s.abs());
    for (int l = 1; l <= n; ++l)
      if (!close(rows[i][n + l], coeffs[l][mod(i + l, N)], scale, eps))
        throw Error(ErrorCode::InternalCheckFailed, "operator coefficients are not symmetric");
    for (int p = 1; p <= n; ++p)
      if (!close(closed_form_coefficient(cfg, p, i), coeffs[n - p][i], scale, eps))
        throw Error(ErrorCode::InternalCheckFailed, "closed-form coefficient disagrees with the linear solve");
  }
  return DifferenceOperator(n, N, std::move(coeffs));
}

MembershipReport is_in_E(const DifferenceOperator& op, const FieldContext& ctx) {
  MembershipReport r;
  r.periodic = true;
  r.symmetric = true;
  r.nondegenerate = true;
  for (int i = 0; i < op.period(); ++i)
    if (vanishes(op.a(op.n(), i), ctx)) {
      r.nondegenerate = false;
      r.reasons.push_back("degenerate: a^n vanishes at i = " + std::to_string(i));
    }
  if (!r.nondegenerate) {
    r.reasons.push_back("monodromy undefined for a degenerate operator");
    return r;
  }
  const Matrix m = monodromy(op, ctx);
  const Matrix minus_id = Scalar::from_int(-1, op.kind()) * Matrix::identity(m.rows(), op.kind());
  if (op.kind() == FieldKind::Rational) {
    r.monodromy_minus_identity = m == minus_id;
  } else {
    const double tol = std::max(1e-8, ctx.eps_rel) * std::max(1.0, m.max_abs());
    r.monodromy_minus_identity = (m - minus_id).max_abs() <= tol;
  }
  if (!r.monodromy_minus_identity) r.reasons.push_back("monodromy is not -Id");
  return r;
}

Matrix kernel_gram(const DifferenceOperator& op) {
  const int N = op.period();
  Matrix g(N, N, op.kind());
  for (int i = 0; i < N; ++i) {
    SolutionWindow v = basis_solution(op, i);
    for (int j = 0; j < N; ++j) g(i, j) = v.at(j);
  }
  return g;
}

Configuration config_from_operator(const DifferenceOperator& op, bool real, const FieldContext& ctx) {
  MembershipReport r = is_in_E(op, ctx);
  if (!r.ok()) {
    std::string why;
    for (const std::string& s : r.reasons) why += (why.empty() ? "" : "; ") + s;
    throw Error(ErrorCode::NotInE, why);
  }
  const int n = op.n(), N = op.period();
  if (N < 2 * n) throw Error(ErrorCode::NotInE, "period below 2n");
  const FieldKind kind = op.kind();
  if (kind == FieldKind::Rational) real = true;
  const Matrix nu = kernel_gram(op);
  // Columns of inverse(P) realize V^0..V^{2n-1}, since P^T G P = J.
  const Matrix block = nu.block(0, 0, 2 * n, 2 * n);
  const Matrix basis = inverse(symplectic_basis(block, ctx), ctx);
  const Matrix lhs = basis.transpose() * standard_form(n, kind);
  const Matrix coords = solve(lhs, nu.block(0, 0, 2 * n, N), ctx);
  std::vector<SympVector> pts;
  for (int j = 0; j < N; ++j) {
    std::vector<Scalar> c;
    for (int r2 = 0; r2 < 2 * n; ++r2) c.push_back(coords(r2, j));
    pts.emplace_back(std::move(c));
  }
  Configuration cfg(n, std::move(pts), real);
  if (!approx_equal(cfg.gram().entries, nu, FieldContext::complex(std::max(ctx.eps_rel, 1e-8), ctx.eps_abs)))
    throw Error(ErrorCode::InternalCheckFailed, "realized points do not reproduce the kernel Gram");
  return cfg;
}

}  // namespace lagcfg
