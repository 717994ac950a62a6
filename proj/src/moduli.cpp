#include "lagcfg/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "lagcfg/continuants.hpp"

namespace lagcfg {

namespace {

int mod(long a, long m) {
  long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

Scalar alt_pow(const Scalar& s, long i) { return (i % 2 == 0) ? s : s.inverse(); }

void require_kind(const std::vector<Scalar>& v, FieldKind kind) {
  for (const Scalar& s : v)
    if (s.kind() != kind) throw Error(ErrorCode::MixedFieldKinds, "scalars of different kinds");
}

bool nearly_zero(const Scalar& s, double scale, const FieldContext& ctx) {
  return s.is_exact_zero() || (!s.is_rational() && is_negligible(s, scale, ctx));
}

// Runs `f` on the configuration and, when an exact root is missing, once more over C.
template <class F>
auto with_complex_fallback(const Configuration& cfg, F f) -> decltype(f(cfg)) {
  try {
    return f(cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RequiresExtension || cfg.kind() != FieldKind::Rational) throw;
  }
  return f(cfg.to_kind(FieldKind::Complex));
}

void require_2n2(const Configuration& cfg) {
  if (cfg.size() != 2 * cfg.n() + 2) throw Error(ErrorCode::WrongN, "expected N = 2n + 2");
}

void require_generic(const Configuration& cfg, const FieldContext& ctx) {
  if (!validate(cfg, ctx).generic) throw Error(ErrorCode::NotGeneric, "configuration is not generic");
}

bool same_points(const Configuration& a, const Configuration& b, const FieldContext& ctx) {
  for (int i = 0; i < a.size(); ++i) {
    const SympVector& u = a.point(i);
    const SympVector& v = b.point(i);
    const double scale = std::max(u.norm(), v.norm());
    for (int k = 0; k < u.dim(); ++k)
      if (!nearly_zero(u[k] - v[k], scale, ctx)) return false;
  }
  return true;
}

// Multipliers m with m_i m_{i+n} omega_{i,i+n} = target(i), one square root per cycle of
// i -> i + n. Needs the cycles to have odd length.
std::vector<Scalar> cycle_rescaling(const Configuration& cfg, const std::function<Scalar(int)>& target) {
  const int n = cfg.n(), N = cfg.size();
  const int g = std::gcd(n, N);
  const int q = N / g;
  if (q % 2 == 0) throw Error(ErrorCode::ParityMismatch, "N / gcd(n, N) must be odd");
  auto ratio = [&](int i) { return target(i) / cfg.omega(i, i + n); };
  std::vector<Scalar> m(N);
  for (int p = 0; p < g; ++p) {
    Scalar sq = Scalar::one(cfg.kind());
    for (int r = 0, idx = p; r < q; ++r, idx = mod(idx + n, N)) sq *= alt_pow(ratio(idx), r);
    m[p] = sqrt(sq);
    for (int r = 0, idx = p; r + 1 < q; ++r) {
      int next = mod(idx + n, N);
      m[next] = ratio(idx) / m[idx];
      idx = next;
    }
  }
  return m;
}

// Multipliers along the single cycle i -> i + n (gcd(n, N) = 1), starting from m_0 = start.
// The closing pair is checked by the caller.
std::vector<Scalar> chain_rescaling(const Configuration& cfg, const std::function<Scalar(int)>& target,
                                    const Scalar& start) {
  const int n = cfg.n(), N = cfg.size();
  std::vector<Scalar> m(N);
  m[0] = start;
  for (int r = 0, idx = 0; r + 1 < N; ++r) {
    int next = mod(idx + n, N);
    m[next] = target(idx) / (cfg.omega(idx, idx + n) * m[idx]);
    idx = next;
  }
  return m;
}

void check_subdiameters(const Configuration& cfg, const std::function<Scalar(int)>& target, const FieldContext& ctx) {
  for (int i = 0; i < cfg.size(); ++i) {
    Scalar v = cfg.omega(i, i + cfg.n());
    if (!nearly_zero(v - target(i), std::max(v.abs(), target(i).abs()), ctx))
      throw Error(ErrorCode::InternalCheckFailed, "normalized subdiameter " + std::to_string(i) + " is off target");
  }
}

std::vector<Scalar> diameters_of(const Configuration& cfg, int count) {
  std::vector<Scalar> a;
  for (int i = 0; i < count; ++i) a.push_back(cfg.omega(i, i + cfg.n() + 1));
  return a;
}

int sign_of_product(const Configuration& cfg, int start, const FieldContext& ctx) {
  // sgn prod_{s=0}^{n} omega_{2s+start, 2s+start+n}
  Scalar p = Scalar::one(cfg.kind());
  for (int s = 0; s <= cfg.n(); ++s) p *= cfg.omega(2 * s + start, 2 * s + start + cfg.n());
  return real_sign(p, ctx);
}

Scalar product(const std::vector<Scalar>& v, FieldKind kind) {
  Scalar p = Scalar::one(kind);
  for (const Scalar& s : v) p *= s;
  return p;
}

Scalar alternating_product(const std::vector<Scalar>& v, FieldKind kind) {
  Scalar p = Scalar::one(kind);
  for (std::size_t i = 0; i < v.size(); ++i) p *= alt_pow(v[i], static_cast<long>(i));
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------

Configuration canonical_trivial(int n, int N, int epsilon, FieldKind kind) {
  if (N != 2 * n && N != 2 * n + 1) throw Error(ErrorCode::WrongN, "expected N = 2n or 2n + 1");
  std::vector<SympVector> pts;
  for (int i = 0; i < n; ++i) pts.push_back(SympVector::e(n, i, kind));
  if (N == 2 * n) {
    for (int i = 0; i < n; ++i) pts.push_back(SympVector::f(n, i, kind));
    return Configuration(n, std::move(pts), true);
  }
  const Scalar eps = Scalar::from_int(epsilon, kind);
  pts.push_back(eps * SympVector::f(n, 0, kind));
  for (int k = 1; k < n; ++k) pts.push_back(eps * (SympVector::f(n, k - 1, kind) + SympVector::f(n, k, kind)));
  SympVector last = eps * SympVector::f(n, n - 1, kind);
  for (int i = 1; i <= n; ++i) last += Scalar::from_int(i % 2 ? -1 : 1, kind) * SympVector::e(n, i - 1, kind);
  pts.push_back(last);
  return Configuration(n, std::move(pts), true);
}

TrivialClass classify_trivial(const Configuration& input, const FieldContext& ctx) {
  const int n = input.n(), N = input.size();
  if (N != 2 * n && N != 2 * n + 1) throw Error(ErrorCode::WrongN, "expected N = 2n or 2n + 1");
  if (!validate(input, ctx).spanning || !validate(input, ctx).lagrangian)
    throw Error(ErrorCode::InvalidConfiguration, "not a Lagrangian configuration");
  return with_complex_fallback(input, [&](const Configuration& cfg) {
    const FieldKind kind = cfg.kind();
    int eps = 1;
    if (N == 2 * n + 1 && cfg.is_real()) {
      Scalar p = Scalar::one(kind);
      for (int i = 0; i < N; ++i) p *= cfg.omega(i, i + n);
      eps = real_sign(p, ctx);
    }
    Configuration canon = canonical_trivial(n, N, eps, kind);
    auto target = [&](int i) { return canon.omega(i, i + n); };
    std::vector<Scalar> m(N, Scalar::one(kind));
    if (N == 2 * n) {
      for (int i = 0; i < n; ++i) m[i] = target(i) / cfg.omega(i, i + n);
    } else {
      m = cycle_rescaling(cfg, target);
    }
    Configuration scaled = rescale(cfg, m);
    check_subdiameters(scaled, target, ctx);
    Matrix t = reconstruct_transform(scaled.points(), canon.points(), ctx);
    if (!is_symplectic(t, ctx)) throw Error(ErrorCode::InternalCheckFailed, "witness is not symplectic");
    return TrivialClass{canon, t, m, eps};
  });
}

// ---------------------------------------------------------------------------

Scalar check_relation(const std::vector<Scalar>& c, int n) {
  if (static_cast<int>(c.size()) != n + 1) throw Error(ErrorCode::LengthMismatch, "expected n + 1 cross-ratios");
  return gen_eq_value(c);
}

Scalar solve_last_cross_ratio(const std::vector<Scalar>& head) {
  const int n = static_cast<int>(head.size());
  if (n < 1) throw Error(ErrorCode::InvalidInput, "need at least one cross-ratio");
  const FieldKind kind = head.front().kind();
  require_kind(head, kind);
  for (const Scalar& s : head)
    if (s.is_exact_zero()) throw Error(ErrorCode::ZeroCrossRatio, "cross-ratios must be nonzero");
  // relation = constant + coeff / c_n
  Scalar constant = Scalar::one(kind), coeff = Scalar::zero(kind);
  double scale = 1.0;
  for (int r = 1; r <= (n + 1) / 2; ++r) {
    for (const std::vector<int>& tuple : index_set(n, r)) {
      Scalar term = Scalar::from_int(r % 2 ? -1 : 1, kind);
      bool has_last = false;
      for (int i : tuple) {
        if (i == n) has_last = true;
        else term /= head[i];
      }
      scale = std::max(scale, term.abs());
      (has_last ? coeff : constant) += term;
    }
  }
  FieldContext ctx = FieldContext::complex();
  if (nearly_zero(coeff, scale, ctx) || nearly_zero(constant, scale, ctx))
    throw Error(ErrorCode::RelationViolated, "no finite nonzero last cross-ratio completes the relation");
  return -coeff / constant;
}

const char* mode_name(ConstructionMode mode) {
  switch (mode) {
    case ConstructionMode::PaperEven: return "paper_even";
    case ConstructionMode::PaperOddAsymmetric: return "paper_odd_asymmetric";
    case ConstructionMode::PaperOddSymmetric: return "paper_odd_symmetric";
    case ConstructionMode::RationalGeneral: return "rational_general";
  }
  return "?";
}

ConstructionMode parse_mode(const std::string& name) {
  for (ConstructionMode m : {ConstructionMode::PaperEven, ConstructionMode::PaperOddAsymmetric,
                             ConstructionMode::PaperOddSymmetric, ConstructionMode::RationalGeneral})
    if (name == mode_name(m)) return m;
  throw Error(ErrorCode::InvalidInput, "unknown construction mode '" + name + "'");
}

ProductData construction_data(const std::vector<Scalar>& c_in, ConstructionMode mode, FieldKind kind,
                              const FieldContext& ctx) {
  const int n = static_cast<int>(c_in.size()) - 1;
  if (n < 1) throw Error(ErrorCode::InvalidInput, "need at least two cross-ratios");
  std::vector<Scalar> c;
  for (const Scalar& s : c_in) c.push_back(to_kind(s, kind));
  for (const Scalar& s : c)
    if (nearly_zero(s, 1.0, ctx)) throw Error(ErrorCode::ZeroCrossRatio, "cross-ratios must be nonzero");
  if (kind == FieldKind::Rational) {
    if (!gen_eq_value(c).is_exact_zero()) throw Error(ErrorCode::RelationViolated, "cross-ratios violate the relation");
  } else if (gen_eq_normalized_residual(c) >= 1e-8) {
    throw Error(ErrorCode::RelationViolated, "cross-ratios violate the relation");
  }
  bool real = true;
  for (const Scalar& s : c) real = real && is_real_value(s, ctx);

  const int N = 2 * n + 2, period = n + 1;
  auto cc = [&](long i) { return c[mod(i, period)]; };
  ProductData d;
  d.n = n;
  d.sub.assign(N, Scalar::one(kind));
  d.diam.assign(period, Scalar::one(kind));
  switch (mode) {
    case ConstructionMode::RationalGeneral:
      // Unit diameters; the pairs (j, j + n + 1) of subdiameters multiply to 1 / c_{j-1}.
      for (int j = 0; j <= n; ++j) d.sub[j + n + 1] = cc(j - 1).inverse();
      break;
    case ConstructionMode::PaperEven: {
      if (n % 2) throw Error(ErrorCode::WrongParity, "paper_even needs n even");
      const bool negative = real && real_sign(product(c, kind), ctx) < 0;
      std::vector<Scalar> t = c;
      if (negative) {
        for (Scalar& s : t) s = -s;
        for (int i = 0; i < N; ++i) d.sub[i] = Scalar::from_int(i % 2 ? -1 : 1, kind);
      }
      if (kind == FieldKind::Rational) {
        // a_0^2 is the alternating product; the rest follows from a_i a_{i+1} = t_i.
        d.diam[0] = sqrt(alternating_product(t, kind));
        for (int i = 0; i < n; ++i) d.diam[i + 1] = t[i] / d.diam[i];
      } else {
        std::vector<Scalar> sigma;
        for (const Scalar& s : t) sigma.push_back(sqrt(s));
        for (int i = 0; i <= n; ++i) {
          Scalar a = Scalar::one(kind);
          for (int j = 0; j <= n; ++j) a *= alt_pow(sigma[mod(i + j, period)], j);
          d.diam[i] = a;
        }
      }
      break;
    }
    case ConstructionMode::PaperOddAsymmetric: {
      if (n % 2 == 0) throw Error(ErrorCode::WrongParity, "paper_odd_asymmetric needs n odd");
      d.sub[0] = alternating_product(c, kind);
      // a_{2k} = c_1 c_3 .. c_{2k-1} / (c_0 c_2 .. c_{2k-2}); a_{2k+1} = c_0 .. c_{2k} / (c_1 .. c_{2k-1})
      Scalar even = Scalar::one(kind), odd = Scalar::one(kind);
      for (int k = 0; 2 * k + 1 <= n; ++k) {
        d.diam[2 * k] = odd / even;
        even *= c[2 * k];
        d.diam[2 * k + 1] = even / odd;
        odd *= c[2 * k + 1];
      }
      break;
    }
    case ConstructionMode::PaperOddSymmetric: {
      if (n % 2 == 0) throw Error(ErrorCode::WrongParity, "paper_odd_symmetric needs n odd");
      std::vector<Scalar> eta;
      for (const Scalar& s : c) eta.push_back(nth_root(s, N));
      const Scalar mu = alternating_product(eta, kind);
      for (int i = 0; i < N; ++i) d.sub[i] = alt_pow(mu, i);
      for (int i = 0; i <= n; ++i) {
        Scalar a = Scalar::one(kind);
        for (int j = 0; j <= n; ++j) {
          const long e = (j % 2 ? -1 : 1) * static_cast<long>(n - 2 * j);
          a *= pow(eta[mod(i + j, period)], e);
        }
        d.diam[i] = a;
      }
      break;
    }
  }
  return d;
}

Matrix gram_from_products(const ProductData& d) {
  const int n = d.n, N = 2 * n + 2;
  const FieldKind kind = d.sub.front().kind();
  // omega(x_i, x_{i+dist}) for 0 <= i < N, before any antiperiodic wrap of i + dist.
  auto forward = [&](int i, int dist) -> Scalar {
    if (dist == n) return d.sub[i];
    if (dist == n + 1) return d.diam[i % (n + 1)];
    if (dist == n + 2) return d.sub[mod(i - n, N)];
    return Scalar::zero(kind);
  };
  Matrix g(N, N, kind);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      g(i, j) = forward(i, j - i);
      g(j, i) = -g(i, j);
    }
  return g;
}

Configuration realize_products(const ProductData& d, bool real, const FieldContext& ctx) {
  const int n = d.n, N = 2 * n + 2;
  const FieldKind kind = d.sub.front().kind();
  for (const Scalar& s : d.sub)
    if (s.is_exact_zero()) throw Error(ErrorCode::InvalidInput, "subdiameters must be nonzero");
  const Matrix target = gram_from_products(d);
  auto w = [&](long i, long j) {
    auto [ri, si] = reduce_index(i, N);
    auto [rj, sj] = reduce_index(j, N);
    Scalar v = target(ri, rj);
    return si * sj < 0 ? -v : v;
  };
  auto e = [&](int k) { return SympVector::e(n, k - 1, kind); };  // 1-based basis labels
  auto f = [&](int k) { return SympVector::f(n, k - 1, kind); };

  std::vector<SympVector> x(N, SympVector::zero(n, kind));
  for (int i = 1; i <= n; ++i) x[i] = e(i);
  for (int i = 1; i <= n; ++i) {
    SympVector v = SympVector::zero(n, kind);
    for (int k = std::max(1, i - 2); k <= i; ++k) v += w(k, i + n) * f(k);
    x[i + n] = v;
  }

  // Leading minors of the band: d_i for x_{2n+1} and d'_i for x_0.
  auto minors = [&](Scalar first, Scalar second) {
    std::vector<Scalar> out(n + 1);
    out[1] = first;
    if (n >= 2) out[2] = second;
    for (int i = 3; i <= n; ++i)
      out[i] = w(i - 1, i + n) * out[i - 1] - w(i - 1, i + n - 1) * w(i - 2, i + n) * out[i - 2];
    return out;
  };
  const std::vector<Scalar> dd = minors(Scalar::one(kind), w(1, 2 + n));
  const std::vector<Scalar> dp = minors(w(0, 1 + n), w(0, 1 + n) * w(1, 2 + n) - w(0, 2 + n) * w(1, 1 + n));
  std::vector<Scalar> prefix(n + 1, Scalar::one(kind));
  for (int i = 1; i <= n; ++i) prefix[i] = prefix[i - 1] / w(i, i + n);

  SympVector last = w(n, 2 * n + 1) * f(n);
  if (n >= 2) last += w(n - 1, 2 * n + 1) * f(n - 1);
  SympVector first = -(w(0, n) * f(n));
  for (int i = 1; i <= n; ++i) {
    const Scalar sign = Scalar::from_int(i % 2 ? -1 : 1, kind);
    last += (w(n + 1, 2 * n + 1) * sign * prefix[i] * dd[i]) * e(i);
    first += (-(sign * prefix[i] * dp[i])) * e(i);
  }
  x[2 * n + 1] = last;
  x[0] = first;

  // Independent route: solve omega(x_k, y) = target for k = 1..2n.
  Matrix rows(2 * n, 2 * n, kind);
  for (int r = 0; r < 2 * n; ++r)
    for (int k = 0; k < n; ++k) {
      rows(r, n + k) = x[r + 1][k];
      rows(r, k) = -x[r + 1][n + k];
    }
  for (int idx : {0, 2 * n + 1}) {
    Matrix rhs(2 * n, 1, kind);
    for (int r = 0; r < 2 * n; ++r) rhs(r, 0) = w(r + 1, idx);
    Matrix sol = solve(rows, rhs, ctx);
    const double scale = std::max(1.0, x[idx].norm());
    for (int k = 0; k < 2 * n; ++k)
      if (!nearly_zero(sol(k, 0) - x[idx][k], scale, ctx))
        throw Error(ErrorCode::InternalCheckFailed, "closing point disagrees with the linear solve");
  }

  Configuration cfg(n, x, real);
  const Matrix& g = cfg.gram().entries;
  const double scale = std::max(1.0, target.max_abs());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (nearly_zero(g(i, j) - target(i, j), scale, ctx)) continue;
      const bool closing = (i == 0 && j == N - 1) || (i == N - 1 && j == 0);
      throw Error(closing ? ErrorCode::RelationViolated : ErrorCode::InternalCheckFailed,
                  "realized products differ from the prescribed ones at (" + std::to_string(i) + ", " +
                      std::to_string(j) + ")");
    }
  return cfg;
}

Configuration from_cross_ratios(const std::vector<Scalar>& c, ConstructionMode mode, const FieldContext& ctx) {
  if (c.empty()) throw Error(ErrorCode::InvalidInput, "no cross-ratios given");
  const FieldKind kind = c.front().kind();
  require_kind(c, kind);
  ProductData d = construction_data(c, mode, kind, ctx);
  bool real = true;
  for (const Scalar& s : d.sub) real = real && is_real_value(s, ctx);
  for (const Scalar& s : d.diam) real = real && is_real_value(s, ctx);
  Configuration cfg = realize_products(d, real, ctx);
  const std::vector<Scalar> got = diametric_cross_ratios(cfg);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!approx_eq(got[i], c[i], FieldContext::complex(1e-8, 1e-10)))
      throw Error(ErrorCode::InternalCheckFailed, "constructed cross-ratios differ from the input");
  if (!validate(cfg, ctx).generic) throw Error(ErrorCode::InternalCheckFailed, "constructed configuration is not generic");
  return cfg;
}

// ---------------------------------------------------------------------------

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Equivalent: return "equivalent";
    case VerdictKind::Opposite: return "opposite";
    case VerdictKind::Inequivalent: return "inequivalent";
  }
  return "?";
}

namespace {

EquivalenceVerdict equivalent_same_kind(const Configuration& a, const Configuration& b, const FieldContext& ctx) {
  const int n = a.n(), N = a.size();
  const FieldKind kind = a.kind();
  const bool real = a.is_real() && b.is_real();
  bool opp = false;
  auto wa = [&](long i, long j) { return opp ? -a.omega(i, j) : a.omega(i, j); };
  auto ratio = [&](int i) { return b.omega(i, i + n) / wa(i, i + n); };
  auto diam_ratio = [&](const std::vector<Scalar>& m, int i) {
    return b.omega(i, i + n + 1) / (m[i] * m[mod(i + n + 1, N)] * wa(i, i + n + 1));
  };
  const FieldContext loose = FieldContext::complex(std::max(ctx.eps_rel, 1e-8), ctx.eps_abs);
  std::vector<Scalar> m(N);
  if (n % 2 == 0) {
    if (real && sign_of_product(a, 0, ctx) != sign_of_product(b, 0, ctx)) opp = true;
    for (int p = 0; p < 2; ++p) {
      Scalar sq = Scalar::one(kind);
      for (int r = 0, idx = p; r <= n; ++r, idx = mod(idx + n, N)) sq *= alt_pow(ratio(idx), r);
      if (real && real_sign(sq, ctx) <= 0) throw Error(ErrorCode::InternalCheckFailed, "negative square over the reals");
      m[p] = sqrt(sq);
      for (int r = 0, idx = p; r < n; ++r) {
        int next = mod(idx + n, N);
        m[next] = ratio(idx) / m[idx];
        idx = next;
      }
    }
    // The remaining diameter ratio is +1 or -1 throughout; -1 is absorbed by (-1)^i.
    const Scalar rho = diam_ratio(m, 0);
    if (approx_eq(rho, Scalar::from_int(-1, kind), loose)) {
      for (int i = 1; i < N; i += 2) m[i] = -m[i];
    }
  } else {
    m = chain_rescaling(a, [&](int i) { return opp ? -b.omega(i, i + n) : b.omega(i, i + n); }, Scalar::one(kind));
    const Scalar kappa = alt_pow(diam_ratio(m, 0), 0);
    for (int i = 1; i <= n; ++i)
      if (!approx_eq(alt_pow(diam_ratio(m, i), i), kappa, loose))
        throw Error(ErrorCode::InternalCheckFailed, "diameter ratios are not alternating-constant");
    Scalar chi;
    bool negate = false;
    if (real) {
      const int s = real_sign(kappa, ctx);
      negate = s < 0;
      chi = sqrt(negate ? -kappa : kappa);
    } else {
      chi = sqrt(kappa);
    }
    for (int i = 0; i < N; ++i) m[i] *= alt_pow(chi, i);
    if (negate) {
      for (int i = 1; i < N; i += 2) m[i] = -m[i];
      opp = true;
    }
  }
  // Every product must now match, possibly up to the global sign of an opposite.
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      Scalar lhs = m[i] * m[j] * wa(i, j);
      Scalar rhs = b.omega(i, j);
      if (!nearly_zero(lhs - rhs, std::max(1.0, std::max(lhs.abs(), rhs.abs())), loose))
        throw Error(ErrorCode::InternalCheckFailed, "rescaled products do not match");
    }
  std::vector<SympVector> xs;
  const Matrix q = opposite_map(n, kind);
  for (int i = 0; i < N; ++i) {
    SympVector v = m[i] * a.point(i);
    xs.push_back(opp ? apply(q, v) : v);
  }
  Matrix t = reconstruct_transform(xs, b.points(), loose);
  if (!is_symplectic(t, loose)) throw Error(ErrorCode::InternalCheckFailed, "witness is not symplectic");
  EquivalenceVerdict v;
  v.kind = opp ? VerdictKind::Opposite : VerdictKind::Equivalent;
  v.witness = t;
  v.rescaling = m;
  return v;
}

}  // namespace

EquivalenceVerdict equivalent(const Configuration& a_in, const Configuration& b_in, const FieldContext& ctx) {
  if (a_in.n() != b_in.n()) throw Error(ErrorCode::DimensionMismatch, "configurations live in different dimensions");
  require_2n2(a_in);
  require_2n2(b_in);
  require_generic(a_in, ctx);
  require_generic(b_in, ctx);
  Configuration a = a_in, b = b_in;
  if (a.kind() != b.kind()) {
    a = a.to_kind(FieldKind::Complex);
    b = b.to_kind(FieldKind::Complex);
  }
  const std::vector<Scalar> ca = diametric_cross_ratios(a), cb = diametric_cross_ratios(b);
  const FieldContext loose = FieldContext::complex(std::max(ctx.eps_rel, 1e-8), ctx.eps_abs);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!approx_eq(ca[i], cb[i], loose)) return EquivalenceVerdict{};
  try {
    return equivalent_same_kind(a, b, ctx);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RequiresExtension || a.kind() != FieldKind::Rational) throw;
  }
  return equivalent_same_kind(a.to_kind(FieldKind::Complex), b.to_kind(FieldKind::Complex), ctx);
}

// ---------------------------------------------------------------------------

const char* scheme_name(NormalizationScheme s) {
  switch (s) {
    case NormalizationScheme::EvenComplex: return "even_complex";
    case NormalizationScheme::EvenReal: return "even_real";
    case NormalizationScheme::OddComplex: return "odd_complex";
    case NormalizationScheme::OddReal: return "odd_real";
    case NormalizationScheme::SubdiametersOne: return "subdiameters_one";
  }
  return "?";
}

NormalizationScheme parse_scheme(const std::string& name) {
  for (NormalizationScheme s : {NormalizationScheme::EvenComplex, NormalizationScheme::EvenReal,
                                NormalizationScheme::OddComplex, NormalizationScheme::OddReal,
                                NormalizationScheme::SubdiametersOne})
    if (name == scheme_name(s)) return s;
  throw Error(ErrorCode::InvalidInput, "unknown normalization scheme '" + name + "'");
}

namespace {

NormalizationResult normalize_kind(const Configuration& cfg, NormalizationScheme scheme, const FieldContext& ctx) {
  const int n = cfg.n(), N = cfg.size();
  const FieldKind kind = cfg.kind();
  NormalizationResult res{scheme, cfg, {}, {}, 0, 0, 0, std::nullopt, true};
  std::function<Scalar(int)> target;
  switch (scheme) {
    case NormalizationScheme::SubdiametersOne:
    case NormalizationScheme::EvenComplex: {
      target = [&](int) { return Scalar::one(kind); };
      res.rescaling = cycle_rescaling(cfg, target);
      break;
    }
    case NormalizationScheme::EvenReal: {
      res.eps0 = sign_of_product(cfg, 0, ctx);
      res.eps1 = sign_of_product(cfg, 1, ctx);
      res.epsc = real_sign(product(diametric_cross_ratios(cfg), kind), ctx);
      const int e0 = res.eps0, e1 = res.eps1;
      target = [=](int i) { return Scalar::from_int(mod(i, 2) ? e1 : e0, kind); };
      res.rescaling = cycle_rescaling(cfg, target);
      break;
    }
    case NormalizationScheme::OddComplex:
    case NormalizationScheme::OddReal: {
      const bool real_scheme = scheme == NormalizationScheme::OddReal;
      const Scalar p = alternating_product(diametric_cross_ratios(cfg), kind);
      if (real_scheme && real_sign(p, ctx) <= 0)
        throw Error(ErrorCode::PositivityFailed, "alternating product of the cross-ratios is not positive");
      // Principal roots of positive reals are the positive roots.
      const Scalar mu = nth_root(p, N);
      res.mu = mu;
      target = [=](int i) { return alt_pow(mu, i); };
      std::vector<Scalar> m = chain_rescaling(cfg, target, Scalar::one(kind));
      Configuration partial = rescale(cfg, m);
      check_subdiameters(partial, target, ctx);
      const Scalar qd = alternating_product(diameters_of(partial, n + 1), kind);
      if (real_scheme && real_sign(qd, ctx) < 0) {
        res.refined = false;
      } else {
        const Scalar delta = nth_root(qd.inverse(), N);
        for (int i = 0; i < N; ++i) m[i] *= alt_pow(delta, i);
      }
      res.rescaling = m;
      break;
    }
  }
  res.config = rescale(cfg, res.rescaling);
  check_subdiameters(res.config, target, ctx);
  res.diameters = diameters_of(res.config, scheme == NormalizationScheme::SubdiametersOne ? N : n + 1);
  return res;
}

}  // namespace

NormalizationResult normalize(const Configuration& cfg, NormalizationScheme scheme, const FieldContext& ctx) {
  const int n = cfg.n();
  const bool even_scheme = scheme == NormalizationScheme::EvenComplex || scheme == NormalizationScheme::EvenReal;
  const bool odd_scheme = scheme == NormalizationScheme::OddComplex || scheme == NormalizationScheme::OddReal;
  if (even_scheme || odd_scheme) {
    require_2n2(cfg);
    require_generic(cfg, ctx);
    if (even_scheme && n % 2) throw Error(ErrorCode::ParityMismatch, "scheme needs n even");
    if (odd_scheme && n % 2 == 0) throw Error(ErrorCode::ParityMismatch, "scheme needs n odd");
  } else if (!validate(cfg, ctx).spanning) {
    throw Error(ErrorCode::InvalidConfiguration, "some subdiameter vanishes");
  }
  const bool real_scheme = scheme == NormalizationScheme::EvenReal || scheme == NormalizationScheme::OddReal;
  if (real_scheme && !cfg.is_real()) throw Error(ErrorCode::NotRealField, "scheme needs a real configuration");
  if (scheme == NormalizationScheme::OddComplex && cfg.kind() == FieldKind::Rational)
    return normalize_kind(cfg.to_kind(FieldKind::Complex), scheme, ctx);
  return with_complex_fallback(cfg, [&](const Configuration& c) { return normalize_kind(c, scheme, ctx); });
}

std::vector<Configuration> enumerate_normalizations(const Configuration& cfg, NormalizationScheme scheme,
                                                    const FieldContext& ctx) {
  const NormalizationResult base = normalize(cfg, scheme, ctx);
  const Configuration& nc = base.config;
  const int n = nc.n(), N = nc.size();
  const FieldKind kind = nc.kind();
  const FieldContext loose = FieldContext::complex(std::max(ctx.eps_rel, 1e-8), ctx.eps_abs);
  std::vector<Configuration> found;
  auto consider = [&](const std::vector<Scalar>& lambda) {
    Configuration cand = rescale(nc, lambda);
    for (int i = 0; i < N; ++i)
      if (!approx_eq(cand.omega(i, i + n), nc.omega(i, i + n), loose)) return;
    if (scheme == NormalizationScheme::OddComplex || (scheme == NormalizationScheme::OddReal && base.refined)) {
      if (!approx_eq(alternating_product(diameters_of(cand, n + 1), kind), Scalar::one(kind), loose)) return;
    }
    for (const Configuration& f : found)
      if (same_points(f, cand, loose)) return;
    found.push_back(cand);
  };
  if (scheme == NormalizationScheme::OddComplex || scheme == NormalizationScheme::OddReal) {
    // Start the subdiameter-preserving chain from every 4n+4-th root of unity.
    const int order = 2 * N;
    for (int k = 0; k < order; ++k) {
      const double angle = 2.0 * M_PI * k / order;
      Scalar start = Scalar::complex(std::cos(angle), std::sin(angle));
      if (kind == FieldKind::Rational || scheme == NormalizationScheme::OddReal) {
        if (k != 0 && 2 * k != order) continue;  // real roots only
        start = Scalar::from_int(k == 0 ? 1 : -1, kind);
      }
      std::vector<Scalar> lambda(N);
      lambda[0] = start;
      for (int r = 0, idx = 0; r + 1 < N; ++r) {
        int next = mod(idx + n, N);
        lambda[next] = lambda[idx].inverse();
        idx = next;
      }
      consider(lambda);
    }
  } else {
    if (N > 20) throw Error(ErrorCode::InvalidInput, "sign enumeration is limited to N <= 20");
    for (unsigned long mask = 0; mask < (1ul << N); ++mask) {
      std::vector<Scalar> lambda(N);
      for (int i = 0; i < N; ++i) lambda[i] = Scalar::from_int((mask >> i) & 1 ? -1 : 1, kind);
      consider(lambda);
    }
  }
  return found;
}

Scalar continuant_check(const Configuration& cfg, const FieldContext& ctx) {
  NormalizationResult r = normalize(cfg, NormalizationScheme::EvenComplex, ctx);
  return cyclic_continuant(r.diameters);
}

}  // namespace lagcfg
