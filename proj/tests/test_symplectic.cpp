#include "doctest.h"
#include "helpers.hpp"
#include "lagcfg/symplectic.hpp"

using namespace lagcfg;
using namespace testing_helpers;

namespace {

std::vector<SympVector> standard_basis(int n, FieldKind kind = FieldKind::Rational) {
  std::vector<SympVector> out;
  for (int i = 0; i < n; ++i) out.push_back(SympVector::e(n, i, kind));
  for (int i = 0; i < n; ++i) out.push_back(SympVector::f(n, i, kind));
  return out;
}

SympVector random_vector(int n, Rng& rng) {
  std::vector<Scalar> c;
  for (int k = 0; k < 2 * n; ++k) c.push_back(random_rational(rng, false));
  return SympVector(c);
}

}  // namespace

TEST_CASE("omega on basis vectors") {
  CHECK(omega(vec({1, 0}), vec({0, 1})) == q(1));
  CHECK(omega(vec({1, 1}), vec({1, -1})) == q(-2));
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    SympVector v = random_vector(3, rng);
    CHECK(omega(v, v) == q(0));
  }
  CHECK_THROWS_AS(omega(vec({1, 0}), vec({1, 0, 0, 0})), Error);
  CHECK_THROWS_AS(SympVector(qs({1, 2, 3})), Error);
}

TEST_CASE("omega is bilinear and skew") {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 4;
    SympVector u = random_vector(n, rng), v = random_vector(n, rng), w = random_vector(n, rng);
    Scalar a = random_rational(rng);
    CHECK(omega(a * u + v, w) == a * omega(u, w) + omega(v, w));
    CHECK(omega(u, v) == -omega(v, u));
  }
}

TEST_CASE("gram examples") {
  GramMatrix g = gram({vec({1, 0}), vec({0, 1})});
  CHECK(g.entries(0, 1) == q(1));
  CHECK(g.entries(1, 0) == q(-1));
  CHECK(gram({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}).entries == Matrix(2, 2, FieldKind::Rational));
  for (int n = 1; n <= 4; ++n) {
    CHECK(gram(standard_basis(n)).entries == standard_form(n, FieldKind::Rational));
    CHECK(rank(gram(standard_basis(n)).entries) == static_cast<std::size_t>(2 * n));
  }
  CHECK(rank(gram({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}).entries) == 0);
}

TEST_CASE("Gram rank is at most 2n") {
  Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 3;
    std::vector<SympVector> xs;
    for (int k = 0; k < 2 * n + 3; ++k) xs.push_back(random_vector(n, rng));
    CHECK(rank(gram(xs).entries) <= static_cast<std::size_t>(2 * n));
  }
}

TEST_CASE("is_symplectic examples") {
  CHECK(is_symplectic(Matrix::identity(4, FieldKind::Rational)));
  Matrix d(2, 2, FieldKind::Rational);
  d(0, 0) = q(2);
  d(1, 1) = q(1, 2);
  CHECK(is_symplectic(d));
  d(1, 1) = q(2);
  CHECK_FALSE(is_symplectic(d));
}

TEST_CASE("random_symplectic is deterministic, symplectic and invertible") {
  CHECK(random_symplectic(3, 42, FieldKind::Rational) == random_symplectic(3, 42, FieldKind::Rational));
  CHECK_FALSE(random_symplectic(3, 42, FieldKind::Rational) == random_symplectic(3, 43, FieldKind::Rational));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Matrix s = random_symplectic(2, seed, FieldKind::Rational);
    CHECK(is_symplectic(s));
    CHECK(rank(s) == 4);
  }
  CHECK(is_symplectic(random_symplectic(3, 1, FieldKind::Complex)));
}

TEST_CASE("reconstruct_transform recovers a known symplectic map") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + t % 4;
    Matrix s = random_symplectic(n, rng, FieldKind::Rational);
    // Random basis: a second random symplectic map applied to the standard basis.
    Matrix b = random_symplectic(n, rng, FieldKind::Rational);
    std::vector<SympVector> xs, ys;
    for (const SympVector& e : standard_basis(n)) {
      xs.push_back(apply(b, e));
      ys.push_back(apply(s, xs.back()));
    }
    Matrix t_rec = reconstruct_transform(xs, ys);
    CHECK(t_rec == s);
    CHECK(is_symplectic(t_rec));
  }
  CHECK(reconstruct_transform(standard_basis(2), standard_basis(2)) == Matrix::identity(4, FieldKind::Rational));
}

TEST_CASE("reconstruct_transform rejects mismatched or deficient input") {
  try {
    (void)reconstruct_transform({vec({1, 0}), vec({0, 1})}, {vec({1, 0}), vec({0, 2})});
    FAIL("expected GramMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GramMismatch);
  }
  try {
    (void)reconstruct_transform({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}

TEST_CASE("symplectic_basis puts a nondegenerate skew form into standard shape") {
  Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + t % 4;
    std::vector<SympVector> xs;
    Matrix b = random_symplectic(n, rng, FieldKind::Rational);
    for (const SympVector& e : standard_basis(n)) xs.push_back(apply(b, e));
    Matrix g = gram(xs).entries;
    Matrix p = symplectic_basis(g);
    CHECK(p.transpose() * g * p == standard_form(n, FieldKind::Rational));
    Matrix gc = g.to_kind(FieldKind::Complex);
    Matrix pc = symplectic_basis(gc);
    CHECK(approx_equal(pc.transpose() * gc * pc, standard_form(n, FieldKind::Complex)));
  }
  CHECK_THROWS_AS(symplectic_basis(Matrix(2, 2, FieldKind::Rational)), Error);
}
