#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "lagcfg/continuants.hpp"
#include "lagcfg/moduli.hpp"

using namespace lagcfg;
using namespace testing_helpers;

namespace {

// c_0..c_{n-1} random, c_n solved from the relation.
std::vector<Scalar> random_relation_point(int n, Rng& rng) {
  for (;;) {
    std::vector<Scalar> c;
    for (int i = 0; i < n; ++i) c.push_back(random_rational(rng));
    try {
      c.push_back(solve_last_cross_ratio(c));
      return c;
    } catch (const Error&) {
    }
  }
}

std::vector<Scalar> random_rescaling(int N, Rng& rng) {
  std::vector<Scalar> l;
  for (int i = 0; i < N; ++i) l.push_back(random_rational(rng));
  return l;
}

std::vector<Scalar> to_complex(const std::vector<Scalar>& v) {
  std::vector<Scalar> out;
  for (const Scalar& s : v) out.push_back(to_kind(s, FieldKind::Complex));
  return out;
}

void check_witness(const Configuration& a, const Configuration& b, const EquivalenceVerdict& v, bool exact) {
  REQUIRE(v.witness.has_value());
  REQUIRE(v.rescaling.has_value());
  const Matrix& t = *v.witness;
  CHECK(is_symplectic(t, FieldContext::complex(1e-8)));
  const Matrix q = opposite_map(a.n(), t.kind());
  for (int i = 0; i < a.size(); ++i) {
    SympVector x = (*v.rescaling)[i] * a.point(i).to_kind(t.kind());
    if (v.kind == VerdictKind::Opposite) x = apply(q, x);
    SympVector y = b.point(i).to_kind(t.kind());
    SympVector tx = apply(t, x);
    if (exact) {
      CHECK(tx == y);
    } else {
      for (int k = 0; k < tx.dim(); ++k) CHECK(approx_eq(tx[k], y[k], FieldContext::complex(1e-7, 1e-9)));
    }
  }
}

}  // namespace

TEST_CASE("canonical trivial configurations") {
  for (int n = 1; n <= 4; ++n) {
    Configuration std_cfg = canonical_trivial(n, 2 * n, 1, FieldKind::Rational);
    CHECK(validate(std_cfg).lagrangian);
    CHECK(validate(std_cfg).spanning);
    for (int eps : {1, -1}) {
      Configuration c = canonical_trivial(n, 2 * n + 1, eps, FieldKind::Rational);
      ValidationReport r = validate(c);
      CHECK(r.lagrangian);
      CHECK(r.generic);
      for (int i = 0; i < 2 * n + 1; ++i) CHECK(c.omega(i, i + n) == q(eps));
      TrivialClass tc = classify_trivial(c);
      CHECK(tc.epsilon == eps);
    }
  }
  CHECK_THROWS_AS(canonical_trivial(2, 6, 1, FieldKind::Rational), Error);
}

TEST_CASE("classify_trivial reduces samples to the canonical form") {
  for (int n = 1; n <= 4; ++n) {
    for (int N : {2 * n, 2 * n + 1}) {
      for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Configuration cfg = random_config(n, N, 500 + seed, FieldKind::Rational);
        TrivialClass tc = classify_trivial(cfg);
        const FieldKind kind = tc.witness.kind();
        CHECK(is_symplectic(tc.witness, FieldContext::complex(1e-8)));
        for (int i = 0; i < N; ++i) {
          SympVector img = apply(tc.witness, tc.rescaling[i] * cfg.point(i).to_kind(kind));
          const SympVector& target = tc.canonical.point(i);
          for (int k = 0; k < 2 * n; ++k) CHECK(approx_eq(img[k], target[k], FieldContext::complex(1e-8, 1e-10)));
        }
        if (N == 2 * n + 1) {
          Scalar p = q(1);
          for (int i = 0; i < N; ++i) p *= cfg.omega(i, i + n);
          CHECK(tc.epsilon == (p.q() > 0 ? 1 : -1));
          CHECK(classify_trivial(opposite(cfg)).epsilon == -tc.epsilon);
        }
      }
    }
  }
  CHECK_THROWS_AS(classify_trivial(random_config(1, 4, 1, FieldKind::Rational)), Error);
}

TEST_CASE("relation examples") {
  CHECK(check_relation(qs({2, 3, 6}), 2) == q(0));
  CHECK(check_relation(qs({1, 1, 1}), 2) == q(-2));
  CHECK_THROWS_AS(check_relation(qs({2, 3, 6}), 3), Error);
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      CHECK(check_relation(diametric_cross_ratios(random_config(n, 2 * n + 2, seed, FieldKind::Rational)), n) == q(0));
}

TEST_CASE("epsilon-c identity on samples") {
  for (int n = 1; n <= 4; ++n) {
    Configuration cfg = random_config(n, 2 * n + 2, 70 + n, FieldKind::Rational);
    auto c = diametric_cross_ratios(cfg);
    Scalar lhs = q(1), diam = q(1), sub = q(1);
    for (const Scalar& s : c) lhs *= s;
    for (int i = 0; i <= n; ++i) diam *= cfg.omega(i, i + n + 1);
    for (int i = 0; i < 2 * n + 2; ++i) sub *= cfg.omega(i, i + n);
    CHECK(lhs == diam * diam / sub);
  }
}

TEST_CASE("solving for the last cross-ratio") {
  CHECK(solve_last_cross_ratio(qs({2})) == q(2));
  CHECK(solve_last_cross_ratio(qs({2, 3})) == q(6));
  CHECK_THROWS_AS(solve_last_cross_ratio(qs({1})), Error);  // 1 - 1/1 = 0: c_1 would be infinite
  Rng rng(3);
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 10; ++t) CHECK(gen_eq_value(random_relation_point(n, rng)) == q(0));
}

TEST_CASE("construction examples") {
  Configuration hex = from_cross_ratios(qs({2, 3, 6}), ConstructionMode::RationalGeneral);
  CHECK(diametric_cross_ratios(hex) == qs({2, 3, 6}));
  CHECK(validate(hex).generic);
  Configuration quad = from_cross_ratios(qs({2, 2}), ConstructionMode::RationalGeneral);
  CHECK(diametric_cross_ratios(quad) == qs({2, 2}));
  // Perfect-square data: diameters (2, 1, 3) with unit subdiameters.
  Configuration even = from_cross_ratios(qs({2, 3, 6}), ConstructionMode::PaperEven);
  for (int i = 0; i < 6; ++i) CHECK(even.omega(i, i + 2) == q(1));
  CHECK(even.omega(0, 3) == q(2));
  CHECK(even.omega(1, 4) == q(1));
  CHECK(even.omega(2, 5) == q(3));
  try {
    (void)from_cross_ratios(qs({1, 1, 1}), ConstructionMode::RationalGeneral);
    FAIL("expected RelationViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RelationViolated);
  }
  try {
    (void)from_cross_ratios(qs({3, 3, 3}), ConstructionMode::PaperEven);
    FAIL("expected RequiresExtension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RequiresExtension);
  }
  try {
    (void)from_cross_ratios(qs({2, 3, 6}), ConstructionMode::PaperOddAsymmetric);
    FAIL("expected WrongParity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongParity);
  }
  CHECK_THROWS_AS(from_cross_ratios(qs({2, 2}), ConstructionMode::PaperEven), Error);
  CHECK_THROWS_AS(from_cross_ratios(qs({2, 0, 6}), ConstructionMode::RationalGeneral), Error);
}

TEST_CASE("rational construction round-trips exactly") {
  Rng rng(5);
  for (int n = 1; n <= 6; ++n) {
    for (int t = 0; t < 15; ++t) {
      std::vector<Scalar> c = random_relation_point(n, rng);
      Configuration cfg = from_cross_ratios(c, ConstructionMode::RationalGeneral);
      CHECK(diametric_cross_ratios(cfg) == c);
      if (n % 2) {
        Configuration asym = from_cross_ratios(c, ConstructionMode::PaperOddAsymmetric);
        CHECK(diametric_cross_ratios(asym) == c);
        EquivalenceVerdict v = equivalent(cfg, asym);
        CHECK(v.kind != VerdictKind::Inequivalent);
      }
    }
  }
}

TEST_CASE("complex constructions round-trip within tolerance") {
  Rng rng(9);
  const FieldContext tol = FieldContext::complex(1e-8, 1e-10);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 6; ++t) {
      std::vector<Scalar> c = to_complex(random_relation_point(n, rng));
      std::vector<ConstructionMode> modes = {ConstructionMode::RationalGeneral};
      if (n % 2 == 0) modes.push_back(ConstructionMode::PaperEven);
      else {
        modes.push_back(ConstructionMode::PaperOddAsymmetric);
        modes.push_back(ConstructionMode::PaperOddSymmetric);
      }
      Configuration ref = from_cross_ratios(c, ConstructionMode::RationalGeneral);
      for (ConstructionMode m : modes) {
        Configuration cfg = from_cross_ratios(c, m);
        auto got = diametric_cross_ratios(cfg);
        for (int i = 0; i <= n; ++i) CHECK(approx_eq(got[i], c[i], tol));
        CHECK(equivalent(ref, cfg).kind != VerdictKind::Inequivalent);
      }
    }
  }
}

TEST_CASE("odd symmetric construction has the symmetric products") {
  Rng rng(10);
  std::vector<Scalar> c = to_complex(random_relation_point(3, rng));
  ProductData d = construction_data(c, ConstructionMode::PaperOddSymmetric, FieldKind::Complex);
  // a_0 a_2 = a_1 a_3 and omega_{i,i+n} alternates mu, 1/mu.
  CHECK(approx_eq(d.diam[0] * d.diam[2], d.diam[1] * d.diam[3]));
  CHECK(approx_eq(d.sub[0] * d.sub[1], z(1)));
  CHECK(approx_eq(pow(d.sub[0], 8), c[0] / c[1] * c[2] / c[3]));
}

TEST_CASE("equivalence: identity, constructed pairs and opposites") {
  Rng rng(11);
  for (int n = 1; n <= 4; ++n) {
    const int N = 2 * n + 2;
    for (int t = 0; t < 12; ++t) {
      Configuration a = random_config(n, N, 900 + 10 * n + t, FieldKind::Rational);
      if (t == 0) {
        EquivalenceVerdict self = equivalent(a, a);
        CHECK(self.kind == VerdictKind::Equivalent);
        CHECK(*self.witness == Matrix::identity(2 * n, FieldKind::Rational));
      }
      Configuration b = transform(rescale(a, random_rescaling(N, rng)), random_symplectic(n, rng, FieldKind::Rational));
      EquivalenceVerdict v = equivalent(a, b);
      CHECK(v.kind == VerdictKind::Equivalent);
      check_witness(a, b, v, true);
      EquivalenceVerdict o = equivalent(a, opposite(b));
      CHECK(o.kind == VerdictKind::Opposite);
      check_witness(a, opposite(b), o, true);
      Configuration other = random_config(n, N, 5000 + 10 * n + t, FieldKind::Rational);
      CHECK(equivalent(a, other).kind == VerdictKind::Inequivalent);
    }
  }
}

TEST_CASE("equivalence over the complex numbers never reports opposite") {
  Rng rng(13);
  for (int n = 1; n <= 4; ++n) {
    const int N = 2 * n + 2;
    Configuration a = random_config(n, N, 40 + n, FieldKind::Complex, false);
    std::vector<Scalar> lambda;
    for (int i = 0; i < N; ++i) lambda.push_back(z(rng.uniform_real(0.5, 2), rng.uniform_real(-1, 1)));
    Configuration b = transform(rescale(a, lambda), random_symplectic(n, rng, FieldKind::Complex));
    EquivalenceVerdict v = equivalent(a, b);
    CHECK(v.kind == VerdictKind::Equivalent);
    check_witness(a, b, v, false);
    EquivalenceVerdict o = equivalent(a, opposite(a));
    CHECK(o.kind == VerdictKind::Equivalent);
    check_witness(a, opposite(a), o, false);
  }
}

TEST_CASE("equivalence preconditions") {
  try {
    (void)equivalent(random_config(2, 7, 1, FieldKind::Rational), random_config(2, 7, 2, FieldKind::Rational));
    FAIL("expected WrongN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongN);
  }
  Configuration degenerate(1, {vec({1, 0}), vec({0, 1}), vec({1, 0}), vec({0, 1})}, true);
  try {
    (void)equivalent(degenerate, degenerate);
    FAIL("expected NotGeneric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotGeneric);
  }
}

TEST_CASE("even complex normalization") {
  // Hexagon (2, 3, 6): c_i = a_i a_{i+1}.
  Configuration hex = from_cross_ratios(qs({2, 3, 6}), ConstructionMode::RationalGeneral);
  NormalizationResult r = normalize(hex, NormalizationScheme::EvenComplex);
  const auto& a = r.diameters;
  CHECK(approx_eq(to_kind(a[0] * a[1], FieldKind::Complex), z(2)));
  CHECK(approx_eq(to_kind(a[1] * a[2], FieldKind::Complex), z(3)));
  CHECK(approx_eq(to_kind(a[2] * a[0], FieldKind::Complex), z(6)));
  for (int n : {2, 4}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Configuration cfg = random_config(n, 2 * n + 2, 60 + seed, FieldKind::Complex, false);
      NormalizationResult nr = normalize(cfg, NormalizationScheme::EvenComplex);
      auto c = diametric_cross_ratios(cfg);
      for (int i = 0; i < 2 * n + 2; ++i) CHECK(approx_eq(nr.config.omega(i, i + n), z(1)));
      for (int i = 0; i <= n; ++i) {
        Scalar sq = z(1);
        for (int j = 0; j <= n; ++j) sq *= (j % 2 == 0) ? c[(i + j) % (n + 1)] : c[(i + j) % (n + 1)].inverse();
        CHECK(approx_eq(nr.diameters[i] * nr.diameters[i], sq, FieldContext::complex(1e-8)));
        CHECK(approx_eq(nr.diameters[i] * nr.diameters[(i + 1) % (n + 1)], c[i], FieldContext::complex(1e-8)));
      }
    }
  }
  try {
    (void)normalize(random_config(3, 8, 1, FieldKind::Rational), NormalizationScheme::EvenComplex);
    FAIL("expected ParityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParityMismatch);
  }
}

TEST_CASE("even real normalization") {
  const FieldContext tol = FieldContext::complex(1e-8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Configuration cfg = random_config(2, 6, 80 + seed, FieldKind::Rational);
    NormalizationResult rr = normalize(cfg, NormalizationScheme::EvenReal);
    NormalizationResult rc = normalize(cfg, NormalizationScheme::EvenComplex);
    CHECK(rr.epsc == rr.eps0 * rr.eps1);
    for (int i = 0; i < 6; ++i) CHECK(real_sign(rr.config.omega(i, i + 2)) == (i % 2 ? rr.eps1 : rr.eps0));
    for (const Scalar& s : rr.diameters) CHECK(is_real_value(s));
    // +-a^R = +-a when eps_c = 1, and +-i a^R otherwise.
    const Scalar factor = rr.epsc == 1 ? z(1) : z(0, 1);
    bool plus = true, minus = true;
    for (int i = 0; i < 3; ++i) {
      Scalar ar = to_kind(rr.diameters[i], FieldKind::Complex) * factor;
      Scalar ac = to_kind(rc.diameters[i], FieldKind::Complex);
      plus = plus && approx_eq(ar, ac, tol);
      minus = minus && approx_eq(ar, -ac, tol);
    }
    CHECK((plus || minus));
  }
  CHECK_THROWS_AS(normalize(random_config(2, 6, 1, FieldKind::Complex, false), NormalizationScheme::EvenReal), Error);
}

TEST_CASE("odd complex normalization") {
  const FieldContext tol = FieldContext::complex(1e-8);
  for (int n : {1, 3}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Configuration cfg = random_config(n, 2 * n + 2, 90 + seed, FieldKind::Complex, false);
      NormalizationResult r = normalize(cfg, NormalizationScheme::OddComplex);
      REQUIRE(r.mu.has_value());
      const Scalar mu = *r.mu;
      Scalar prod = z(1);
      for (int i = 0; i <= n; ++i) prod *= (i % 2 == 0) ? r.diameters[i] : r.diameters[i].inverse();
      CHECK(approx_eq(prod, z(1), tol));
      for (int i = 0; i < 2 * n + 2; ++i)
        CHECK(approx_eq(r.config.omega(i, i + n), i % 2 ? mu.inverse() : mu, tol));
      auto c = diametric_cross_ratios(cfg);
      for (int i = 0; i <= n; ++i) {
        Scalar mu2 = i % 2 ? (mu * mu).inverse() : mu * mu;
        CHECK(approx_eq(c[i], mu2 * r.diameters[i] * r.diameters[(i + 1) % (n + 1)], tol));
      }
    }
  }
}

TEST_CASE("odd real normalization") {
  int positive = 0, failed = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Configuration cfg = random_config(3, 8, 200 + seed, FieldKind::Rational);
    auto c = diametric_cross_ratios(cfg);
    Scalar p = c[0] / c[1] * c[2] / c[3];
    if (p.q() > 0) {
      ++positive;
      NormalizationResult r = normalize(cfg, NormalizationScheme::OddReal);
      REQUIRE(r.mu.has_value());
      CHECK(r.mu->z().real() > 0);
      CHECK(r.refined == ((c[0] * c[2]).q() > 0));
      for (const Scalar& s : r.diameters) CHECK(is_real_value(s));
    } else {
      ++failed;
      try {
        (void)normalize(cfg, NormalizationScheme::OddReal);
        FAIL("expected PositivityFailed");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PositivityFailed);
      }
    }
  }
  CHECK(positive + failed == 20);
}

TEST_CASE("normalization branch counts") {
  for (int n = 1; n <= 4; ++n) {
    Configuration real_cfg = random_config(n, 2 * n + 2, 300 + n, FieldKind::Rational);
    Configuration cx_cfg = random_config(n, 2 * n + 2, 310 + n, FieldKind::Complex, false);
    if (n % 2 == 0) {
      CHECK(enumerate_normalizations(cx_cfg, NormalizationScheme::EvenComplex).size() == 4);
      CHECK(enumerate_normalizations(real_cfg, NormalizationScheme::EvenReal).size() == 4);
    } else {
      CHECK(enumerate_normalizations(cx_cfg, NormalizationScheme::OddComplex).size() == static_cast<std::size_t>(2 * n + 2));
    }
    // N = 2n + 3: 2^gcd(n, N) choices.
    Configuration c23 = random_config(n, 2 * n + 3, 320 + n, FieldKind::Complex, false);
    const std::size_t expected = (n % 3 == 0) ? 8 : 2;
    CHECK(enumerate_normalizations(c23, NormalizationScheme::SubdiametersOne).size() == expected);
  }
}

TEST_CASE("cyclic continuant of normalized diameters") {
  // Diameters (1, 2, 3): c = (2, 6, 3).
  Configuration hex = from_cross_ratios(qs({2, 6, 3}), ConstructionMode::PaperEven);
  Scalar r = continuant_check(hex);
  CHECK(r.is_rational());
  CHECK(r == q(0));
  CHECK(cyclic_continuant(qs({-1, -2, -3})) == q(0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Configuration cfg = random_config(4, 10, 400 + seed, FieldKind::Complex, false);
    CHECK(continuant_check(cfg).abs() < 1e-8);
  }
}
