#pragma once

#include <vector>

#include "lagcfg/configuration.hpp"
#include "lagcfg/matrix.hpp"

namespace lagcfg {

// K_m(a_1..a_m): determinant of the tridiagonal matrix with diagonal a and unit off-diagonals.
// The empty sequence gives 1.
Scalar continuant(const std::vector<Scalar>& a, FieldKind kind = FieldKind::Rational);
// R_m(a_0..a_{m-1}) = K_m(a_0..a_{m-1}) - K_{m-2}(a_1..a_{m-2}); cross-checked against the
// trace of prod [[a_i, -1], [1, 0]].
Scalar cyclic_continuant(const std::vector<Scalar>& a);
Scalar cyclic_continuant_trace(const std::vector<Scalar>& a);

struct TridiagData {
  std::vector<Scalar> diag;   // a_kk, length m
  std::vector<Scalar> super;  // a_{k,k+1}, length m-1
  std::vector<Scalar> sub;    // a_{k+1,k}, length m-1

  int size() const { return static_cast<int>(diag.size()); }
  Matrix to_matrix() const;
};

void check_tridiag(const TridiagData& d);

enum class TridiagMethod { Direct, EulerFormula };
Scalar tridiag_det(const TridiagData& d, TridiagMethod method);

// One monomial of the pair-replacement expansion: the product of the diagonal with each
// listed adjacent pair (k, k+1) replaced by -a_{k,k+1} a_{k+1,k}.
struct EulerTerm {
  std::vector<int> pairs;  // first index k of each replaced pair, increasing, non-overlapping
  int sign = 1;
};
std::vector<EulerTerm> euler_terms(int m);
Scalar euler_term_value(const TridiagData& d, const EulerTerm& t);

// Strictly increasing r-tuples in {0..n} whose pairwise cyclic distances modulo n+1 exceed 1.
std::vector<std::vector<int>> index_set(int n, int r);

// Pfaffian by skew elimination; pf([[0,a],[-a,0]]) = a. Odd sizes give 0.
Scalar pfaffian(const Matrix& g, const FieldContext& ctx = {});

// Boundary scalars and the tridiagonal band A of the Gram matrix of an (n, 2n+2) configuration.
struct OmegaData {
  int n = 0;
  Scalar first;   // omega_{0,n}
  Scalar last;    // omega_{n+1,2n+1}
  TridiagData band;  // diag omega_{k,k+n+1}; super omega_{k,k+n+2}; sub omega_{k+1,k+n+1}
};

OmegaData omega_data(const Matrix& gram, int n);
OmegaData omega_data(const Configuration& cfg);
Matrix omega_matrix(const OmegaData& d);

enum class PfaffianMethod { Formula, Generic };
Scalar pfaffian_omega(const OmegaData& d, PfaffianMethod method, const FieldContext& ctx = {});

struct BlockPfaffian {
  Scalar pfaffian;  // pf [[x E, A], [-A^T, y E]]
  Scalar closed_form;  // (-1)^{m(m-1)/2} (det A - x y det A_mid)
  Scalar difference;
};
BlockPfaffian block_pfaffian(const Matrix& a, const Scalar& x, const Scalar& y, const FieldContext& ctx = {});

// 1 + sum_r sum_{I in I_n(r)} (-1)^r / (c_{i_1} ... c_{i_r}), with n = c.size() - 1.
Scalar gen_eq_value(const std::vector<Scalar>& c);
// |gen_eq_value| divided by the largest monomial magnitude (at least 1).
double gen_eq_normalized_residual(const std::vector<Scalar>& c);
// Number of monomials of the relation, counted by direct enumeration.
std::size_t gen_eq_term_count(int n);

}  // namespace lagcfg
