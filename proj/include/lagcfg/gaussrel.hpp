#pragma once

#include <string>
#include <vector>

#include "lagcfg/configuration.hpp"
#include "lagcfg/diffop.hpp"

namespace lagcfg {

// N = 2n + 3 with representatives normalized to omega_{i,i+n} = 1.
struct MainDiagonals {
  int n = 0;
  std::vector<Scalar> d;  // d_i = omega_{i,i+n+1}, 2n + 3 values
  // "unique" when 3 does not divide n; otherwise "mod3:s0,s1,s2", the signs applied on
  // the residue classes i mod 3 relative to the principal-root normalization.
  std::string branch;
  Configuration config;   // the normalized representatives
};

// Complex only; rational input is embedded. For 3 | n the branch is pinned so that d_0 and
// d_1 have positive real part (positive imaginary part when the real part vanishes).
MainDiagonals normalize_2n3(const Configuration& cfg, const FieldContext& ctx = {});

// c_i = [x_i, x_{i+1}; x_{i+n+1}, x_{i+n+2}] for i = 0..N-1.
std::vector<Scalar> main_cross_ratios(const Configuration& cfg);

// Coefficients of the normalized operator written in the main diagonals: a^n = 1 and
// a^{n-p}_i = sum over chains 0 = p_0 < .. < p_k = p of prod (-w(p_{s-1}, p_s)), where a step of
// length 1, 2, 3 contributes d_{i-n+p_s-1}, d_{i+p_s}, 1 and longer steps vanish.
DifferenceOperator gauss_operator(const std::vector<Scalar>& d, int n);

// 0 = a^2_i + d_{i+n+1} a^1_i + d_i a^0_i + a^1_{i+1} (a^2 dropped for n = 1).
std::vector<Scalar> gauss_residuals(const std::vector<Scalar>& d, int n);
// Same relation with coefficients taken from an arbitrary operator.
std::vector<Scalar> gauss_residuals(const std::vector<Scalar>& d, const DifferenceOperator& op);

// Left minus right side of the closed cross-ratio identities, n = 1, 2, 3.
std::vector<Scalar> gauss_cross_ratio_residuals(const std::vector<Scalar>& c, int n);

// prod_{i=0..4} [[d_i, 1], [-1, 0]].
Matrix pentagon_matrix_product(const std::vector<Scalar>& d);
bool pentagon_satisfied(const std::vector<Scalar>& d, const FieldContext& ctx = {});

}  // namespace lagcfg
