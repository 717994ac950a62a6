#include "lagcfg/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <regex>

namespace lagcfg {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MixedFieldKinds: return "MixedFieldKinds";
    case ErrorCode::RequiresExtension: return "RequiresExtension";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GramMismatch: return "GramMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::UndefinedCrossRatio: return "UndefinedCrossRatio";
    case ErrorCode::WrongN: return "WrongN";
    case ErrorCode::ZeroProductEntry: return "ZeroProductEntry";
    case ErrorCode::NotRealField: return "NotRealField";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::EulerFormulaUndefined: return "EulerFormulaUndefined";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::FormulaUndefined: return "FormulaUndefined";
    case ErrorCode::ZeroCrossRatio: return "ZeroCrossRatio";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::WrongParity: return "WrongParity";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::PositivityFailed: return "PositivityFailed";
    case ErrorCode::DegenerateOperator: return "DegenerateOperator";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::ZeroRescaleEntry: return "ZeroRescaleEntry";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::NotInE: return "NotInE";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "Unknown";
}

const char* field_name(FieldKind kind) {
  return kind == FieldKind::Rational ? "rational" : "complex";
}

FieldContext FieldContext::rational() { return FieldContext{}; }

FieldContext FieldContext::complex(double eps_rel, double eps_abs) {
  if (!(eps_rel > 0) || !(eps_abs > 0) || !std::isfinite(eps_rel) || !std::isfinite(eps_abs)) {
    throw Error(ErrorCode::InvalidTolerance, "tolerances must be positive and finite");
  }
  FieldContext ctx;
  ctx.kind = FieldKind::Complex;
  ctx.eps_rel = eps_rel;
  ctx.eps_abs = eps_abs;
  return ctx;
}

FieldContext FieldContext::from_env(FieldKind kind) {
  double eps_rel = 1e-9;
  if (const char* env = std::getenv("LAGCFG_EPS")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidTolerance, std::string("bad LAGCFG_EPS value: ") + env);
    }
    eps_rel = v;
  }
  FieldContext ctx = FieldContext::complex(eps_rel);
  ctx.kind = kind;
  return ctx;
}

namespace {

void check_finite(const Scalar::Complex& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::DivisionByZero, "non-finite complex value");
  }
}

}  // namespace

Scalar::Scalar(const mpq_class& q) : value_(q) { std::get<mpq_class>(value_).canonicalize(); }

Scalar::Scalar(Complex z) : value_(z) { check_finite(z); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::complex(double re, double im) { return Scalar(Complex(re, im)); }

Scalar Scalar::from_int(long v, FieldKind kind) {
  if (kind == FieldKind::Rational) return Scalar(mpq_class(v));
  return Scalar(Complex(static_cast<double>(v), 0.0));
}

FieldKind Scalar::kind() const {
  return std::holds_alternative<mpq_class>(value_) ? FieldKind::Rational : FieldKind::Complex;
}

const mpq_class& Scalar::q() const {
  if (!is_rational()) throw Error(ErrorCode::MixedFieldKinds, "expected a rational scalar");
  return std::get<mpq_class>(value_);
}

Scalar::Complex Scalar::z() const {
  if (is_rational()) return Complex(std::get<mpq_class>(value_).get_d(), 0.0);
  return std::get<Complex>(value_);
}

bool Scalar::is_exact_zero() const {
  if (is_rational()) return sgn(std::get<mpq_class>(value_)) == 0;
  return std::get<Complex>(value_) == Complex(0.0, 0.0);
}

double Scalar::abs() const {
  if (is_rational()) return std::fabs(std::get<mpq_class>(value_).get_d());
  return std::abs(std::get<Complex>(value_));
}

Scalar Scalar::inverse() const {
  if (is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) return Scalar(mpq_class(1) / std::get<mpq_class>(value_));
  return Scalar(1.0 / std::get<Complex>(value_));
}

Scalar Scalar::conj() const {
  if (is_rational()) return *this;
  return Scalar(std::conj(std::get<Complex>(value_)));
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return Scalar(-std::get<Complex>(value_));
}

void Scalar::require_same_kind(const Scalar& o) const {
  if (value_.index() != o.value_.index()) {
    throw Error(ErrorCode::MixedFieldKinds, "arithmetic between rational and complex scalars");
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_kind(o);
  if (is_rational()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  } else {
    std::get<Complex>(value_) += std::get<Complex>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_kind(o);
  if (is_rational()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  } else {
    std::get<Complex>(value_) -= std::get<Complex>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_kind(o);
  if (is_rational()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  } else {
    std::get<Complex>(value_) *= std::get<Complex>(o.value_);
    check_finite(std::get<Complex>(value_));
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_kind(o);
  if (o.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (is_rational()) {
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  } else {
    std::get<Complex>(value_) /= std::get<Complex>(o.value_);
    check_finite(std::get<Complex>(value_));
  }
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  if (value_.index() != o.value_.index()) return false;
  if (is_rational()) return std::get<mpq_class>(value_) == std::get<mpq_class>(o.value_);
  return std::get<Complex>(value_) == std::get<Complex>(o.value_);
}

std::string Scalar::to_string() const {
  if (is_rational()) {
    const mpq_class& q = std::get<mpq_class>(value_);
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }
  const Complex& z = std::get<Complex>(value_);
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", z.real(), z.imag());
  return buf;
}

Scalar to_kind(const Scalar& s, FieldKind kind) {
  if (s.kind() == kind) return s;
  if (kind == FieldKind::Complex) return Scalar(s.z());
  throw Error(ErrorCode::MixedFieldKinds, "cannot convert a complex scalar to rational");
}

Scalar pow(const Scalar& s, long e) {
  if (e < 0) return pow(s.inverse(), -e);
  Scalar result = Scalar::one(s.kind());
  Scalar base = s;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool approx_eq(const Scalar& a, const Scalar& b, const FieldContext& ctx) {
  if (a.kind() != b.kind()) throw Error(ErrorCode::MixedFieldKinds, "approx_eq across kinds");
  if (a.is_rational()) return a.q() == b.q();
  double diff = std::abs(a.z() - b.z());
  double scale = std::max(std::abs(a.z()), std::abs(b.z()));
  return diff <= std::max(ctx.eps_abs, ctx.eps_rel * scale);
}

bool is_zero(const Scalar& a, const FieldContext& ctx) {
  return approx_eq(a, Scalar::zero(a.kind()), ctx);
}

bool is_negligible(const Scalar& a, double scale, const FieldContext& ctx) {
  if (a.is_rational()) return a.is_exact_zero();
  return a.abs() <= std::max(ctx.eps_abs, ctx.eps_rel * scale);
}

namespace {

bool exact_root(const mpz_class& v, int k, mpz_class& out) {
  if (sgn(v) < 0) {
    if (k % 2 == 0) return false;
    mpz_class pos = -v;
    if (!exact_root(pos, k, out)) return false;
    out = -out;
    return true;
  }
  return mpz_root(out.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k)) != 0;
}

}  // namespace

Scalar sqrt(const Scalar& s) { return nth_root(s, 2); }

Scalar nth_root(const Scalar& s, int k) {
  if (k < 1) throw Error(ErrorCode::RangeError, "root order must be positive");
  if (s.is_rational()) {
    const mpq_class& q = s.q();
    mpz_class num, den;
    if (!exact_root(q.get_num(), k, num) || !exact_root(q.get_den(), k, den)) {
      throw Error(ErrorCode::RequiresExtension,
                  "no rational " + std::to_string(k) + "-th root of " + s.to_string());
    }
    return Scalar(mpq_class(num, den));
  }
  if (k == 2) return Scalar(std::sqrt(s.z()));
  if (s.is_exact_zero()) return s;
  return Scalar(std::pow(s.z(), 1.0 / k));
}

bool is_real_value(const Scalar& s, const FieldContext& ctx) {
  if (s.is_rational()) return true;
  Scalar::Complex z = s.z();
  return std::fabs(z.imag()) <= std::max(ctx.eps_abs, ctx.eps_rel * std::abs(z));
}

int real_sign(const Scalar& s, const FieldContext& ctx) {
  if (s.is_rational()) return sgn(s.q());
  if (!is_real_value(s, ctx)) throw Error(ErrorCode::NotRealField, "value has an imaginary part");
  if (is_zero(s, ctx)) return 0;
  return s.z().real() > 0 ? 1 : -1;
}

mpq_class parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::InvalidInput, "malformed rational '" + text + "'");
  }
  mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
  mpz_class den(1);
  if (m[2].matched) den = mpz_class(m[2].str());
  if (sgn(den) == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace lagcfg
