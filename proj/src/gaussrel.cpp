#include "lagcfg/gaussrel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lagcfg {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

void require_length(const std::vector<Scalar>& v, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
  if (static_cast<int>(v.size()) != 2 * n + 3) throw Error(ErrorCode::LengthMismatch, "expected 2n + 3 values");
}

// Orientation used to pin a sign: positive real part, or positive imaginary part on ties.
bool is_positive(const Scalar& s, const FieldContext& ctx) {
  const auto v = s.z();
  const double scale = std::abs(v);
  if (std::abs(v.real()) > std::max(ctx.eps_abs, ctx.eps_rel * scale)) return v.real() > 0;
  return v.imag() >= 0;
}

}  // namespace

std::vector<Scalar> main_cross_ratios(const Configuration& cfg) {
  const int n = cfg.n(), N = cfg.size();
  if (N != 2 * n + 3) throw Error(ErrorCode::WrongN, "expected N = 2n + 3");
  std::vector<Scalar> c;
  for (int i = 0; i < N; ++i) c.push_back(cross_ratio(cfg, i, i + 1, i + n + 1, i + n + 2));
  return c;
}

MainDiagonals normalize_2n3(const Configuration& input, const FieldContext& ctx) {
  const int n = input.n(), N = input.size();
  if (N != 2 * n + 3) throw Error(ErrorCode::WrongN, "expected N = 2n + 3");
  if (!validate(input, ctx).generic) throw Error(ErrorCode::NotGeneric, "configuration is not generic");
  const Configuration cfg = input.kind() == FieldKind::Complex ? input : input.to_kind(FieldKind::Complex);
  // chi_i^2 = omega_{i,i+n}; lambda_i = prod_r chi_{i+rn}^{(-1)^r} over the odd cycle of step n.
  const int q = N / std::gcd(n, N);
  std::vector<Scalar> chi;
  for (int i = 0; i < N; ++i) chi.push_back(sqrt(cfg.omega(i, i + n)));
  std::vector<Scalar> inv_lambda;
  for (int i = 0; i < N; ++i) {
    Scalar l = Scalar::one(FieldKind::Complex);
    for (int r = 0; r < q; ++r) {
      const Scalar& x = chi[mod(i + static_cast<long>(r) * n, N)];
      l *= (r % 2 == 0) ? x : x.inverse();
    }
    inv_lambda.push_back(l.inverse());
  }
  Configuration norm = rescale(cfg, inv_lambda);
  std::string branch = "unique";
  if (n % 3 == 0) {
    // d_i picks up eps_{i mod 3} eps_{i+1 mod 3}; choose eps_1 = 1 and fix d_0, d_1.
    const int s0 = is_positive(norm.omega(0, n + 1), ctx) ? 1 : -1;
    const int s2 = is_positive(norm.omega(1, n + 2), ctx) ? 1 : -1;
    const int eps[3] = {s0, 1, s2};
    std::vector<Scalar> flips;
    for (int i = 0; i < N; ++i) flips.push_back(Scalar::complex(eps[i % 3]));
    norm = rescale(norm, flips);
    auto sign = [](int s) { return s > 0 ? "+1" : "-1"; };
    branch = std::string("mod3:") + sign(eps[0]) + "," + sign(eps[1]) + "," + sign(eps[2]);
  }
  const Scalar one = Scalar::one(FieldKind::Complex);
  const FieldContext loose = FieldContext::complex(std::max(ctx.eps_rel, 1e-8), ctx.eps_abs);
  std::vector<Scalar> d;
  for (int i = 0; i < N; ++i) {
    if (!approx_eq(norm.omega(i, i + n), one, loose))
      throw Error(ErrorCode::InternalCheckFailed, "normalized subdiameter differs from 1");
    d.push_back(norm.omega(i, i + n + 1));
  }
  return MainDiagonals{n, std::move(d), std::move(branch), std::move(norm)};
}

DifferenceOperator gauss_operator(const std::vector<Scalar>& d, int n) {
  require_length(d, n);
  const int N = 2 * n + 3;
  const FieldKind kind = d.front().kind();
  auto dd = [&](long i) { return d[static_cast<std::size_t>(mod(i, N))]; };
  std::vector<std::vector<Scalar>> coeffs(n + 1, std::vector<Scalar>(N));
  for (int i = 0; i < N; ++i) {
    // chain[q]: signed sum over chains from 0 to q.
    std::vector<Scalar> chain(static_cast<std::size_t>(n + 1), Scalar::zero(kind));
    chain[0] = Scalar::one(kind);
    for (int q = 1; q <= n; ++q) {
      Scalar acc = Scalar::zero(kind);
      acc -= chain[q - 1] * dd(i - n + q - 1);
      if (q >= 2) acc -= chain[q - 2] * dd(i + q);
      if (q >= 3) acc -= chain[q - 3];
      chain[q] = acc;
    }
    for (int p = 0; p <= n; ++p) coeffs[n - p][i] = chain[p];
  }
  return DifferenceOperator(n, N, std::move(coeffs));
}

std::vector<Scalar> gauss_residuals(const std::vector<Scalar>& d, const DifferenceOperator& op) {
  const int n = op.n();
  require_length(d, n);
  if (op.period() != 2 * n + 3) throw Error(ErrorCode::WrongN, "operator period must be 2n + 3");
  const int N = 2 * n + 3;
  auto dd = [&](long i) { return d[static_cast<std::size_t>(mod(i, N))]; };
  std::vector<Scalar> out;
  for (int i = 0; i < N; ++i) {
    Scalar r = dd(i + n + 1) * op.a(1, i) + dd(i) * op.a(0, i) + op.a(1, i + 1);
    if (n >= 2) r += op.a(2, i);
    out.push_back(r);
  }
  return out;
}

std::vector<Scalar> gauss_residuals(const std::vector<Scalar>& d, int n) {
  return gauss_residuals(d, gauss_operator(d, n));
}

std::vector<Scalar> gauss_cross_ratio_residuals(const std::vector<Scalar>& c, int n) {
  if (n > 3) throw Error(ErrorCode::UnsupportedN, "closed cross-ratio identities are known for n <= 3 only");
  require_length(c, n);
  const int N = 2 * n + 3;
  for (const Scalar& s : c)
    if (s.is_exact_zero()) throw Error(ErrorCode::ZeroCrossRatio, "cross-ratios must be nonzero");
  auto inv = [&](long i) { return c[static_cast<std::size_t>(mod(i, N))].inverse(); };
  const Scalar one = Scalar::one(c.front().kind());
  std::vector<Scalar> out;
  for (long i = 0; i < N; ++i) {
    Scalar lhs;
    if (n == 1) {
      lhs = inv(i) + inv(i - 1) * inv(i + 1);
    } else if (n == 2) {
      lhs = inv(i - 3) + inv(i + 3) + inv(i - 2) * inv(i + 2) - inv(i - 3) * inv(i) * inv(i + 3);
    } else {
      // The 1/(c_{i-1} c_{i+1}) term enters with a minus sign; this is what the main-diagonal
      // relation gives after substituting c_i = d_i d_{i+1} / d_{i-4}.
      lhs = inv(i - 1) + inv(i) + inv(i + 1) - inv(i - 1) * inv(i + 1) + inv(i - 2) * inv(i + 2) -
            inv(i - 4) * inv(i) * inv(i + 1) - inv(i - 2) * inv(i) * inv(i + 2) - inv(i - 1) * inv(i) * inv(i + 4);
    }
    out.push_back(lhs - one);
  }
  return out;
}

Matrix pentagon_matrix_product(const std::vector<Scalar>& d) {
  if (d.size() != 5) throw Error(ErrorCode::LengthMismatch, "expected 5 values");
  const FieldKind kind = d.front().kind();
  Matrix out = Matrix::identity(2, kind);
  for (const Scalar& s : d) {
    Matrix m(2, 2, kind);
    m(0, 0) = s;
    m(0, 1) = Scalar::one(kind);
    m(1, 0) = -Scalar::one(kind);
    out = out * m;
  }
  return out;
}

bool pentagon_satisfied(const std::vector<Scalar>& d, const FieldContext& ctx) {
  const Matrix p = pentagon_matrix_product(d);
  const FieldKind kind = p.kind();
  const Matrix minus_id = Scalar::from_int(-1, kind) * Matrix::identity(2, kind);
  if (kind == FieldKind::Rational) return p == minus_id;
  return (p - minus_id).max_abs() <= std::max(ctx.eps_abs, ctx.eps_rel * std::max(1.0, p.max_abs()));
}

}  // namespace lagcfg
