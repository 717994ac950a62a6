#include "lagcfg/configuration.hpp"

#include <algorithm>
#include <map>

namespace lagcfg {

Configuration::Configuration(int n, std::vector<SympVector> points, bool real)
    : n_(n), points_(std::move(points)), real_(real) {
  if (n < 1) throw Error(ErrorCode::InvalidConfiguration, "n must be positive");
  if (static_cast<int>(points_.size()) < 2 * n) {
    throw Error(ErrorCode::InvalidConfiguration, "need N >= 2n points");
  }
  const FieldKind k = points_.front().kind();
  for (const SympVector& p : points_) {
    if (p.half_dim() != n) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from 2n");
    if (p.kind() != k) throw Error(ErrorCode::MixedFieldKinds, "points of different field kinds");
    if (p.is_exact_zero()) throw Error(ErrorCode::InvalidConfiguration, "zero vector does not define a line");
    norms_.push_back(p.norm());
  }
  if (k == FieldKind::Rational) real_ = true;
  gram_ = lagcfg::gram(points_);
}

std::pair<int, int> reduce_index(long i, int N) {
  long q = i / N;
  long r = i % N;
  if (r < 0) {
    r += N;
    --q;
  }
  return {static_cast<int>(r), (q % 2 == 0) ? 1 : -1};
}

int cyclic_distance(long i, long j, int N) {
  long d = (i - j) % N;
  if (d < 0) d += N;
  return static_cast<int>(std::min<long>(d, N - d));
}

SympVector Configuration::point_ext(long i) const {
  auto [r, s] = reduce_index(i, size());
  return s > 0 ? points_[r] : -points_[r];
}

Scalar Configuration::omega(long i, long j) const {
  auto [ri, si] = reduce_index(i, size());
  auto [rj, sj] = reduce_index(j, size());
  const Scalar& w = gram_.entries(ri, rj);
  return si * sj > 0 ? w : -w;
}

double Configuration::omega_scale(long i, long j) const {
  return norms_[reduce_index(i, size()).first] * norms_[reduce_index(j, size()).first];
}

Configuration Configuration::to_kind(FieldKind kind) const {
  std::vector<SympVector> pts;
  for (const SympVector& p : points_) pts.push_back(p.to_kind(kind));
  return Configuration(n_, std::move(pts), real_);
}

bool is_zero_omega(const Configuration& cfg, long i, long j, const FieldContext& ctx) {
  return is_negligible(cfg.omega(i, j), cfg.omega_scale(i, j), ctx);
}

ValidationReport validate(const Configuration& cfg, const FieldContext& ctx) {
  ValidationReport r;
  const int n = cfg.n();
  const int N = cfg.size();
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      const bool zero = is_zero_omega(cfg, i, j, ctx);
      const bool near = cyclic_distance(i, j, N) < n;
      if (near && !zero) r.non_isotropic.emplace_back(i, j);
      if (!near && zero) r.non_generic.emplace_back(i, j);
    }
    if (is_zero_omega(cfg, i, i + n, ctx)) r.degenerate.emplace_back(i, reduce_index(i + n, N).first);
  }
  r.lagrangian = r.non_isotropic.empty();
  r.spanning = r.degenerate.empty();
  r.generic = r.non_generic.empty();
  return r;
}

Configuration transform(const Configuration& cfg, const Matrix& t) {
  std::vector<SympVector> pts;
  for (const SympVector& p : cfg.points()) pts.push_back(apply(t, p));
  return Configuration(cfg.n(), std::move(pts), cfg.is_real());
}

Configuration rescale(const Configuration& cfg, const std::vector<Scalar>& lambda) {
  if (static_cast<int>(lambda.size()) != cfg.size()) throw Error(ErrorCode::LengthMismatch, "rescaling length differs from N");
  std::vector<SympVector> pts;
  for (int i = 0; i < cfg.size(); ++i) {
    if (lambda[i].is_exact_zero()) throw Error(ErrorCode::ZeroRescaleEntry, "rescaling by zero");
    pts.push_back(lambda[i] * cfg.point(i));
  }
  return Configuration(cfg.n(), std::move(pts), cfg.is_real());
}

Configuration opposite(const Configuration& cfg) { return transform(cfg, opposite_map(cfg.n(), cfg.kind())); }

Scalar cross_ratio(const SympVector& x1, const SympVector& x2, const SympVector& y1, const SympVector& y2) {
  Scalar den = omega(x1, y2) * omega(x2, y1);
  if (den.is_exact_zero()) throw Error(ErrorCode::UndefinedCrossRatio, "denominator vanishes");
  return omega(x1, y1) * omega(x2, y2) / den;
}

Scalar cross_ratio(const Configuration& cfg, long i1, long i2, long j1, long j2) {
  Scalar den = cfg.omega(i1, j2) * cfg.omega(i2, j1);
  if (den.is_exact_zero()) throw Error(ErrorCode::UndefinedCrossRatio, "denominator vanishes");
  return cfg.omega(i1, j1) * cfg.omega(i2, j2) / den;
}

Scalar gamma_ratio(const Configuration& cfg, long i, long j) {
  const int n = cfg.n();
  Scalar den = cfg.omega(i, i + n) * cfg.omega(j, j + n);
  if (den.is_exact_zero()) throw Error(ErrorCode::UndefinedCrossRatio, "subdiameter vanishes");
  return cfg.omega(i, j) * cfg.omega(i + n, j + n) / den;
}

std::vector<Scalar> diametric_cross_ratios(const Configuration& cfg) {
  const int n = cfg.n();
  if (cfg.size() != 2 * n + 2) throw Error(ErrorCode::WrongN, "diametric cross-ratios need N = 2n + 2");
  std::vector<Scalar> c;
  for (long i = 0; i <= n; ++i) {
    Scalar den = cfg.omega(i - n, i) * cfg.omega(i + 1, i + n + 1);
    if (den.is_exact_zero()) throw Error(ErrorCode::UndefinedCrossRatio, "subdiameter vanishes");
    c.push_back(cfg.omega(i, i + n + 1) * cfg.omega(i + 1, i + n + 2) / den);
  }
  return c;
}

int sign_of_pairs(const Configuration& cfg, const std::vector<std::pair<long, long>>& pairs,
                  const FieldContext& ctx) {
  if (!cfg.is_real()) throw Error(ErrorCode::NotRealField, "sign invariants need a real configuration");
  std::map<int, int> occurrences;
  int sign = 1;
  for (auto [a, b] : pairs) {
    ++occurrences[reduce_index(a, cfg.size()).first];
    ++occurrences[reduce_index(b, cfg.size()).first];
    if (is_zero_omega(cfg, a, b, ctx)) throw Error(ErrorCode::ZeroProductEntry, "a factor of the product vanishes");
    sign *= real_sign(cfg.omega(a, b), ctx);
  }
  for (auto [idx, count] : occurrences) {
    if (count % 2 != 0) throw Error(ErrorCode::InvalidInput, "index " + std::to_string(idx) + " occurs an odd number of times");
  }
  return sign;
}

int sign_invariant(const Configuration& cfg, const std::vector<long>& path, const FieldContext& ctx) {
  if (path.size() < 2) throw Error(ErrorCode::InvalidInput, "path needs at least two indices");
  if (reduce_index(path.front(), cfg.size()).first != reduce_index(path.back(), cfg.size()).first) {
    throw Error(ErrorCode::InvalidInput, "path is not closed modulo N");
  }
  std::vector<std::pair<long, long>> pairs;
  for (std::size_t s = 1; s < path.size(); ++s) pairs.emplace_back(path[s - 1], path[s]);
  return sign_of_pairs(cfg, pairs, ctx);
}

StandardForm standardize(const Configuration& cfg, const FieldContext& ctx) {
  const int n = cfg.n();
  const FieldKind kind = cfg.kind();
  std::vector<Scalar> lambda(cfg.size(), Scalar::one(kind));
  for (int j = 0; j < n; ++j) {
    if (is_zero_omega(cfg, j, n + j, ctx)) throw Error(ErrorCode::RankDeficient, "first 2n points do not span");
    lambda[n + j] = cfg.omega(j, n + j).inverse();
  }
  std::vector<SympVector> sources, targets;
  for (int i = 0; i < n; ++i) {
    sources.push_back(cfg.point(i));
    targets.push_back(SympVector::e(n, i, kind));
  }
  for (int j = 0; j < n; ++j) {
    sources.push_back(lambda[n + j] * cfg.point(n + j));
    SympVector y = SympVector::f(n, j, kind);
    for (int k = 0; k < j; ++k) {
      Scalar coeff = cfg.omega(k, n + j) * lambda[n + j];
      if (!coeff.is_exact_zero()) y += coeff * SympVector::f(n, k, kind);
    }
    targets.push_back(y);
  }
  Matrix t = reconstruct_transform(sources, targets, ctx);
  std::vector<SympVector> pts;
  for (int i = 0; i < cfg.size(); ++i) {
    pts.push_back(i < 2 * n ? targets[i] : apply(t, lambda[i] * cfg.point(i)));
  }
  return StandardForm{Configuration(n, std::move(pts), cfg.is_real()), t, lambda};
}

namespace {

Scalar draw_coefficient(Rng& rng, FieldKind kind, bool real, bool nonzero) {
  if (kind == FieldKind::Rational) {
    return Scalar::rational(nonzero ? rng.uniform_nonzero(-3, 3) : rng.uniform(-3, 3));
  }
  for (;;) {
    double re = static_cast<double>(rng.uniform(-3, 3));
    double im = real ? 0.0 : static_cast<double>(rng.uniform(-3, 3));
    if (!nonzero || re != 0.0 || im != 0.0) return Scalar::complex(re, im);
  }
}

constexpr int kMaxAttempts = 64;

// Upper times lower symmetric shear with entries in {-1, 0, 1}. Integer maps with larger
// entries make the sampled lines nearly isotropic when the data is later used in floats.
Matrix unimodular_shear(int n, Rng& rng) {
  Matrix u = Matrix::identity(2 * n, FieldKind::Rational), l = Matrix::identity(2 * n, FieldKind::Rational);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      u(a, n + b) = u(b, n + a) = Scalar::rational(rng.uniform(-1, 1));
      l(n + a, b) = l(n + b, a) = Scalar::rational(rng.uniform(-1, 1));
    }
  return u * l;
}

bool sample_points(int n, int N, Rng& rng, FieldKind kind, bool real, const FieldContext& ctx,
                   std::vector<SympVector>& pts);

}  // namespace

Configuration random_config(int n, int N, std::uint64_t seed, FieldKind kind, bool real,
                            const FieldContext& ctx) {
  if (n < 1 || N < 2 * n) throw Error(ErrorCode::InvalidInput, "random_config needs n >= 1 and N >= 2n");
  if (kind == FieldKind::Rational) real = true;
  Rng rng(seed);
  // Greedy choices can paint the closing points into a corner; restart the whole draw then.
  for (int restart = 0; restart < kMaxAttempts; ++restart) {
    std::vector<SympVector> pts;
    if (sample_points(n, N, rng, kind, real, ctx, pts)) {
      Matrix s = kind == FieldKind::Rational ? unimodular_shear(n, rng) : random_symplectic(n, rng, kind);
      std::vector<SympVector> moved;
      for (const SympVector& p : pts) moved.push_back(apply(s, p));
      return Configuration(n, std::move(moved), real);
    }
  }
  throw Error(ErrorCode::SamplingFailed, "no generic configuration found after " + std::to_string(kMaxAttempts) + " restarts");
}

namespace {

// Same line, smaller coordinates: primitive integer vector, or unit max-norm for floats.
SympVector tidy(SympVector x) {
  if (x.kind() != FieldKind::Rational) return Scalar::complex(1.0 / x.norm()) * x;
  mpz_class den = 1, g = 0;
  for (const Scalar& c : x.coords()) den = lcm(den, mpz_class(c.q().get_den()));
  for (const Scalar& c : x.coords()) g = gcd(g, mpz_class(c.q().get_num() * (den / c.q().get_den())));
  return Scalar(mpq_class(den, g)) * x;
}

bool sample_points(int n, int N, Rng& rng, FieldKind kind, bool real, const FieldContext& ctx,
                   std::vector<SympVector>& pts) {
  for (int i = 0; i < n; ++i) pts.push_back(SympVector::e(n, i, kind));
  // x_{n+j} = f_{j+1} + sum_k g_k f_{k+1}; g_k must vanish exactly when e_{k+1} is within
  // distance n - 1 of x_{n+j}, and is otherwise drawn nonzero for genericity.
  for (int j = 0; j < n; ++j) {
    SympVector y = SympVector::f(n, j, kind);
    for (int k = 0; k < j; ++k) {
      if (cyclic_distance(n + j, k, N) >= n) y += draw_coefficient(rng, kind, real, true) * SympVector::f(n, k, kind);
    }
    pts.push_back(y);
  }
  for (int i = 2 * n; i < N; ++i) {
    std::vector<SympVector> constraints;
    for (int j = 0; j < i; ++j)
      if (cyclic_distance(i, j, N) < n) constraints.push_back(pts[j]);
    // Row j of the system is x_j^T J, so that row . x = omega(x_j, x).
    Matrix rows(constraints.size(), 2 * n, kind);
    for (std::size_t r = 0; r < constraints.size(); ++r) {
      for (int k = 0; k < n; ++k) {
        rows(r, n + k) = constraints[r][k];
        rows(r, k) = -constraints[r][n + k];
      }
    }
    std::vector<std::vector<Scalar>> basis = nullspace(rows, ctx);
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
      std::vector<Scalar> coords(2 * n, Scalar::zero(kind));
      for (const auto& b : basis) {
        Scalar c = draw_coefficient(rng, kind, real, false);
        if (c.is_exact_zero()) continue;
        for (int k = 0; k < 2 * n; ++k) coords[k] += c * b[k];
      }
      SympVector x(coords);
      if (x.is_exact_zero() || x.norm() <= ctx.eps_abs) continue;
      accepted = true;
      for (int j = 0; j < i && accepted; ++j) {
        if (cyclic_distance(i, j, N) >= n &&
            is_negligible(omega(pts[j], x), pts[j].norm() * x.norm(), ctx)) {
          accepted = false;
        }
      }
      if (accepted) pts.push_back(tidy(std::move(x)));
    }
    if (!accepted) return false;
  }
  return true;
}

}  // namespace

}  // namespace lagcfg
