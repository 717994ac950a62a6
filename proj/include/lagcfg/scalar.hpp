#pragma once

#include <complex>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "lagcfg/errors.hpp"

namespace lagcfg {

enum class FieldKind { Rational, Complex };

const char* field_name(FieldKind kind);

// Tolerances only affect Complex scalars; Rational arithmetic is exact.
struct FieldContext {
  FieldKind kind = FieldKind::Rational;
  double eps_rel = 1e-9;
  double eps_abs = 1e-12;

  static FieldContext rational();
  static FieldContext complex(double eps_rel = 1e-9, double eps_abs = 1e-12);
  // Same as the factories above, but eps_rel is taken from LAGCFG_EPS when set.
  static FieldContext from_env(FieldKind kind);
};

class Scalar {
 public:
  using Complex = std::complex<double>;

  Scalar() : value_(mpq_class(0)) {}
  Scalar(const mpq_class& q);  // NOLINT(google-explicit-constructor)
  explicit Scalar(Complex z);

  static Scalar rational(long num, long den = 1);
  static Scalar complex(double re, double im = 0.0);
  static Scalar from_int(long v, FieldKind kind);
  static Scalar zero(FieldKind kind) { return from_int(0, kind); }
  static Scalar one(FieldKind kind) { return from_int(1, kind); }

  FieldKind kind() const;
  bool is_rational() const { return kind() == FieldKind::Rational; }
  const mpq_class& q() const;
  Complex z() const;  // rational values are converted

  bool is_exact_zero() const;
  double abs() const;
  Scalar inverse() const;
  Scalar conj() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Structural equality: same kind and bitwise-equal value.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void require_same_kind(const Scalar& o) const;

  std::variant<mpq_class, Complex> value_;
};

Scalar to_kind(const Scalar& s, FieldKind kind);
Scalar pow(const Scalar& s, long e);

// |a-b| <= max(eps_abs, eps_rel * max(|a|,|b|)); exact for Rational.
bool approx_eq(const Scalar& a, const Scalar& b, const FieldContext& ctx = {});
bool is_zero(const Scalar& a, const FieldContext& ctx = {});
// Zero test relative to an external magnitude, e.g. the size of the factors of a product.
bool is_negligible(const Scalar& a, double scale, const FieldContext& ctx = {});

// Rational: exact root of a perfect square, RequiresExtension otherwise.
// Complex: principal branch.
Scalar sqrt(const Scalar& s);
// Principal k-th root; Rational only when the root is exact.
Scalar nth_root(const Scalar& s, int k);

// Sign of a real scalar (-1, 0, 1). Complex values must have negligible imaginary part.
int real_sign(const Scalar& s, const FieldContext& ctx = {});
bool is_real_value(const Scalar& s, const FieldContext& ctx = {});

// Parses "p/q" or "p"; rejects zero or negative denominators and junk.
mpq_class parse_rational(const std::string& text);

}  // namespace lagcfg
