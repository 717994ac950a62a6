#include <cmath>
#include <set>
#include <string>
#include <functional>

#include "doctest.h"
#include "helpers.hpp"
#include "lagcfg/continuants.hpp"

using namespace lagcfg;
using namespace testing_helpers;

namespace {

TridiagData random_tridiag(int m, Rng& rng, bool nonzero_diag) {
  TridiagData d;
  for (int k = 0; k < m; ++k) d.diag.push_back(random_rational(rng, nonzero_diag));
  for (int k = 0; k + 1 < m; ++k) {
    d.super.push_back(random_rational(rng, false));
    d.sub.push_back(random_rational(rng, false));
  }
  return d;
}

Matrix random_skew(std::size_t m, Rng& rng, FieldKind kind = FieldKind::Rational) {
  Matrix a(m, m, FieldKind::Rational);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      a(i, j) = random_rational(rng, false);
      a(j, i) = -a(i, j);
    }
  return a.to_kind(kind);
}

// Pfaffian by expansion along the first row (oracle for small sizes).
Scalar pfaffian_expansion(const Matrix& a) {
  const std::size_t m = a.rows();
  if (m == 0) return Scalar::one(a.kind());
  if (m % 2) return Scalar::zero(a.kind());
  Scalar acc = Scalar::zero(a.kind());
  for (std::size_t j = 1; j < m; ++j) {
    std::vector<std::size_t> keep;
    for (std::size_t t = 1; t < m; ++t)
      if (t != j) keep.push_back(t);
    Matrix minor(keep.size(), keep.size(), a.kind());
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) minor(r, c) = a(keep[r], keep[c]);
    Scalar term = a(0, j) * pfaffian_expansion(minor);
    acc += (j % 2 == 1) ? term : -term;
  }
  return acc;
}

}  // namespace

TEST_CASE("continuant examples") {
  CHECK(continuant({}) == q(1));
  CHECK(continuant({q(7)}) == q(7));
  CHECK(continuant({q(2), q(5)}) == q(9));
  CHECK(continuant(qs({1, 2, 3})) == q(2));
}

TEST_CASE("continuant equals the determinant of its tridiagonal matrix") {
  Rng rng(2);
  for (int m = 1; m <= 10; ++m) {
    std::vector<Scalar> a;
    for (int k = 0; k < m; ++k) a.push_back(random_rational(rng, false));
    Matrix t(m, m, FieldKind::Rational);
    for (int k = 0; k < m; ++k) {
      t(k, k) = a[k];
      if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = q(1);
    }
    CHECK(continuant(a) == determinant(t));
  }
}

TEST_CASE("cyclic continuant examples") {
  CHECK(cyclic_continuant(qs({1, 2, 3})) == q(0));
  CHECK(cyclic_continuant(qs({1, 1, 1, 1, 1})) == q(1));
  // Displayed R_5 polynomial as oracle.
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> a;
    for (int k = 0; k < 5; ++k) a.push_back(random_rational(rng, false));
    Scalar expected = a[0] * a[1] * a[2] * a[3] * a[4];
    for (int i = 0; i < 5; ++i) expected -= a[i] * a[(i + 1) % 5] * a[(i + 2) % 5];
    for (int i = 0; i < 5; ++i) expected += a[i];
    CHECK(cyclic_continuant(a) == expected);
  }
}

TEST_CASE("cyclic continuant parity and trace form") {
  Rng rng(6);
  for (int m = 1; m <= 12; ++m) {
    for (int t = 0; t < 5; ++t) {
      std::vector<Scalar> a, neg;
      for (int k = 0; k < m; ++k) {
        a.push_back(random_rational(rng, false));
        neg.push_back(-a.back());
      }
      Scalar r = cyclic_continuant(a);
      CHECK(r == cyclic_continuant_trace(a));
      CHECK(cyclic_continuant(neg) == (m % 2 ? -r : r));
    }
  }
}

TEST_CASE("tridiagonal determinant examples") {
  TridiagData d{qs({1, 2, 3}), qs({1, 1}), qs({1, 1})};
  CHECK(tridiag_det(d, TridiagMethod::Direct) == q(2));
  CHECK(tridiag_det(d, TridiagMethod::EulerFormula) == q(2));
  CHECK(tridiag_det(d, TridiagMethod::Direct) == determinant(d.to_matrix()));
  TridiagData tri{qs({4, 5}), qs({7}), qs({0})};
  CHECK(tridiag_det(tri, TridiagMethod::Direct) == q(20));
  CHECK(tridiag_det(tri, TridiagMethod::EulerFormula) == q(20));
  TridiagData zero_diag{qs({0, 5}), qs({1}), qs({1})};
  CHECK(tridiag_det(zero_diag, TridiagMethod::Direct) == q(-1));
  try {
    (void)tridiag_det(zero_diag, TridiagMethod::EulerFormula);
    FAIL("expected EulerFormulaUndefined");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EulerFormulaUndefined);
  }
  CHECK_THROWS_AS(tridiag_det(TridiagData{qs({1, 2}), qs({1}), {}}, TridiagMethod::Direct), Error);
}

TEST_CASE("tridiagonal methods agree on random instances") {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    TridiagData d = random_tridiag(1 + t % 9, rng, true);
    Scalar direct = tridiag_det(d, TridiagMethod::Direct);
    CHECK(direct == tridiag_det(d, TridiagMethod::EulerFormula));
    if (t % 25 == 0) CHECK(direct == determinant(d.to_matrix()));
  }
}

TEST_CASE("pair-replacement expansion reproduces the Euler formula monomials") {
  // Fibonacci count of non-overlapping adjacent pair sets.
  std::vector<std::size_t> fib = {1, 1};
  for (int k = 2; k <= 14; ++k) fib.push_back(fib[k - 1] + fib[k - 2]);
  const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
  for (int m = 1; m <= 10; ++m) {
    auto terms = euler_terms(m);
    CHECK(terms.size() == fib[m]);
    TridiagData d;
    int p = 0;
    for (int k = 0; k < m; ++k) d.diag.push_back(q(primes[p++]));
    for (int k = 0; k + 1 < m; ++k) {
      d.super.push_back(q(primes[p++]));
      d.sub.push_back(q(primes[p++]));
    }
    // Distinct primes make every monomial distinct; the sum is the determinant.
    Scalar sum = q(0);
    std::set<std::string> monomials;
    for (const EulerTerm& t : terms) {
      Scalar v = euler_term_value(d, t);
      CHECK(v.q() * t.sign > 0);
      monomials.insert(mpq_class(abs(v.q())).get_str());
      sum += v;
    }
    CHECK(monomials.size() == terms.size());
    CHECK(sum == tridiag_det(d, TridiagMethod::EulerFormula));
    CHECK(sum == determinant(d.to_matrix()));
  }
}

TEST_CASE("index sets") {
  for (int n = 1; n <= 8; ++n) {
    auto i1 = index_set(n, 1);
    REQUIRE(i1.size() == static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) CHECK(i1[k] == std::vector<int>{k});
  }
  CHECK(index_set(5, 3) == std::vector<std::vector<int>>{{0, 2, 4}, {1, 3, 5}});
  CHECK(index_set(6, 3) == std::vector<std::vector<int>>{{0, 2, 4}, {0, 2, 5}, {0, 3, 5}, {1, 3, 5}, {1, 3, 6}, {1, 4, 6}, {2, 4, 6}});
  CHECK(index_set(4, 2) == std::vector<std::vector<int>>{{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}});
  CHECK_THROWS_AS(index_set(4, 3), Error);
  CHECK_THROWS_AS(index_set(4, 0), Error);
}

TEST_CASE("relation term count matches brute-force enumeration of cyclic independent sets") {
  for (int n = 1; n <= 8; ++n) {
    const int m = n + 1;
    std::size_t count = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        int j = (i + 1) % m;
        if (i != j && (mask >> i & 1) && (mask >> j & 1)) ok = false;
      }
      if (m == 2 && mask == 3) ok = false;
      if (ok) ++count;
    }
    CHECK(gen_eq_term_count(n) == count);
  }
}

TEST_CASE("pfaffian basics") {
  Matrix a(2, 2, FieldKind::Rational);
  a(0, 1) = q(5);
  a(1, 0) = q(-5);
  CHECK(pfaffian(a) == q(5));
  CHECK(pfaffian(Matrix(3, 3, FieldKind::Rational)) == q(0));
  for (int n = 1; n <= 4; ++n) CHECK(pfaffian(standard_form(n, FieldKind::Rational)) == q(n * (n - 1) / 2 % 2 ? -1 : 1));
  Matrix not_skew = Matrix::identity(2, FieldKind::Rational);
  try {
    (void)pfaffian(not_skew);
    FAIL("expected NotSkew");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSkew);
  }
}

TEST_CASE("pfaffian squared is the determinant") {
  Rng rng(10);
  for (std::size_t m = 1; m <= 12; ++m) {
    for (int t = 0; t < 6; ++t) {
      Matrix a = random_skew(m, rng);
      Scalar pf = pfaffian(a);
      CHECK(pf * pf == determinant(a));
      if (m <= 8) CHECK(pf == pfaffian_expansion(a));
      Matrix az = a.to_kind(FieldKind::Complex);
      Scalar pz = pfaffian(az);
      // Odd sizes: the floating determinant of a singular matrix is only roundoff.
      if (m % 2 == 0) CHECK(approx_eq(pz * pz, determinant(az)));
      else CHECK(pz.is_exact_zero());
    }
  }
  // A zero leading row forces pivoting to give 0; a zero first superdiagonal forces a swap.
  Matrix s = random_skew(6, rng);
  s(0, 1) = q(0);
  s(1, 0) = q(0);
  CHECK(pfaffian(s) == pfaffian_expansion(s));
}

TEST_CASE("block Pfaffian identity") {
  Rng rng(12);
  // m = 2 hand oracle: pf = -(ad - bc - xy).
  Matrix a(2, 2, FieldKind::Rational);
  a(0, 0) = q(2);
  a(0, 1) = q(3);
  a(1, 0) = q(5);
  a(1, 1) = q(7);
  BlockPfaffian b = block_pfaffian(a, q(11), q(13));
  CHECK(b.pfaffian == q(-(2 * 7 - 3 * 5 - 11 * 13)));
  CHECK(b.difference == q(0));
  for (int m = 2; m <= 6; ++m) {
    for (int t = 0; t < 10; ++t) {
      Matrix r(m, m, FieldKind::Rational);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(i, j) = random_rational(rng, false);
      Scalar x = random_rational(rng, false), y = random_rational(rng, false);
      BlockPfaffian bp = block_pfaffian(r, x, y);
      CHECK(bp.difference == q(0));
      BlockPfaffian zero = block_pfaffian(r, q(0), q(0));
      CHECK((zero.pfaffian == determinant(r) || zero.pfaffian == -determinant(r)));
    }
  }
}

TEST_CASE("pfaffian of Omega: worked n = 1 example") {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    OmegaData d;
    d.n = 1;
    Scalar w01 = random_rational(rng), w23 = random_rational(rng), w02 = random_rational(rng),
           w13 = random_rational(rng), w03 = random_rational(rng), w12 = random_rational(rng);
    d.first = w01;
    d.last = w23;
    d.band.diag = {w02, w13};
    d.band.super = {w03};
    d.band.sub = {w12};
    Scalar expected = -(w02 * w13 - w03 * w12 - w01 * w23);
    CHECK(pfaffian_omega(d, PfaffianMethod::Formula) == expected);
    CHECK(pfaffian_omega(d, PfaffianMethod::Generic) == expected);
  }
}

TEST_CASE("pfaffian of Omega: formula agrees with elimination") {
  Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 5;
    OmegaData d;
    d.n = n;
    d.first = random_rational(rng);
    d.last = random_rational(rng);
    d.band = random_tridiag(n + 1, rng, true);
    CHECK(pfaffian_omega(d, PfaffianMethod::Formula) == pfaffian_omega(d, PfaffianMethod::Generic));
  }
  OmegaData zero;
  zero.n = 1;
  zero.first = q(1);
  zero.last = q(1);
  zero.band = TridiagData{qs({0, 1}), qs({1}), qs({1})};
  CHECK_THROWS_AS(pfaffian_omega(zero, PfaffianMethod::Formula), Error);
  CHECK(pfaffian_omega(zero, PfaffianMethod::Generic) == q(-1 * (0 - 1 - 1)));
}

TEST_CASE("Omega matrix of a configuration is its Gram matrix and has zero Pfaffian") {
  for (int n = 1; n <= 5; ++n) {
    Configuration cfg = random_config(n, 2 * n + 2, 50 + n, FieldKind::Rational);
    OmegaData d = omega_data(cfg);
    CHECK(omega_matrix(d) == cfg.gram().entries);
    CHECK(pfaffian_omega(d, PfaffianMethod::Generic) == q(0));
    CHECK(pfaffian_omega(d, PfaffianMethod::Formula) == q(0));
  }
}

TEST_CASE("relation value examples") {
  CHECK(gen_eq_value(qs({2, 2})) == q(0));
  CHECK(gen_eq_value(qs({2, 3, 6})) == q(0));
  CHECK(gen_eq_value(qs({1, 1, 1})) == q(-2));
  Scalar c = z(2 + std::sqrt(2.0));
  CHECK(gen_eq_normalized_residual({c, c, c, c}) < 1e-12);
  try {
    (void)gen_eq_value(qs({2, 0, 6}));
    FAIL("expected ZeroCrossRatio");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroCrossRatio);
  }
}

TEST_CASE("relation n = 4 lists the five cyclic pairs") {
  Rng rng(18);
  for (int t = 0; t < 20; ++t) {
    std::vector<Scalar> c;
    for (int i = 0; i < 5; ++i) c.push_back(random_rational(rng));
    Scalar expected = q(1);
    for (int i = 0; i < 5; ++i) expected -= c[i].inverse();
    const int pairs[5][2] = {{0, 2}, {1, 3}, {2, 4}, {3, 0}, {4, 1}};
    for (auto& p : pairs) expected += (c[p[0]] * c[p[1]]).inverse();
    CHECK(gen_eq_value(c) == expected);
  }
}
