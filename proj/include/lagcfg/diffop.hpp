#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagcfg/configuration.hpp"

namespace lagcfg {

// Symmetric operator of order 2n with N-periodic coefficients. The equation at index i reads
//   sum_{l=1..n} (a^l_i V_{i-l} + a^l_{i+l} V_{i+l}) + a^0_i V_i = 0.
class DifferenceOperator {
 public:
  DifferenceOperator() = default;
  // coeffs[l][i] = a^l_i, l = 0..n, i = 0..N-1.
  DifferenceOperator(int n, int N, std::vector<std::vector<Scalar>> coeffs);

  int n() const { return n_; }
  int period() const { return N_; }
  FieldKind kind() const { return coeffs_.front().front().kind(); }
  const std::vector<std::vector<Scalar>>& coeffs() const { return coeffs_; }
  // a^l_i for any integer i; negative l uses the symmetry a^{-l}_i = a^l_{i+l}.
  Scalar a(int l, long i) const;
  // Coefficient of V_{i+k} in the equation at i, |k| <= n.
  Scalar coeff(long i, int k) const;

  bool is_degenerate(const FieldContext& ctx = {}) const;
  DifferenceOperator negated() const;
  DifferenceOperator to_kind(FieldKind kind) const;
  bool operator==(const DifferenceOperator& o) const { return n_ == o.n_ && N_ == o.N_ && coeffs_ == o.coeffs_; }

 private:
  int n_ = 0;
  int N_ = 0;
  std::vector<std::vector<Scalar>> coeffs_;
};

bool approx_equal(const DifferenceOperator& a, const DifferenceOperator& b, const FieldContext& ctx = {});

// Values V_lo..V_hi of a kernel element.
struct SolutionWindow {
  long lo = 0;
  std::vector<Scalar> values;

  long hi() const { return lo + static_cast<long>(values.size()) - 1; }
  bool covers(long a, long b) const { return a >= lo && b <= hi(); }
  const Scalar& at(long j) const;
};

// Unique kernel element with V_{i0+1..i0+2n} = init, extended over [lo, hi].
SolutionWindow solve(const DifferenceOperator& op, long i0, const std::vector<Scalar>& init, long lo, long hi);
// Largest residual of the equation over the interior of the window (0 for exact solutions).
double window_residual(const DifferenceOperator& op, const SolutionWindow& w);

// Kernel element with (-1/a^n_i, 0, .., 0, 1/a^n_{i+n}) on [i-n, i+n].
SolutionWindow basis_solution(const DifferenceOperator& op, long i, long lo, long hi);
// Default range [-n, N+n].
SolutionWindow basis_solution(const DifferenceOperator& op, long i);

// Discrete Wronskian evaluated at i; needs both windows on [i+1-n, i+n].
Scalar wronskian(const DifferenceOperator& op, const SolutionWindow& v, const SolutionWindow& w, long i);

// Shift by N on the kernel in the basis V^0..V^{2n-1}: column k holds the coordinates of
// (T^N V^k)_j = V^k_{j-N}.
Matrix monodromy(const DifferenceOperator& op, const FieldContext& ctx = {});

// a^l_i / (lambda_i lambda_{i-l}).
DifferenceOperator rescale(const DifferenceOperator& op, const std::vector<Scalar>& lambda);

// lambda with target = rescale(source, lambda), if one exists; lambda is fixed up to a global sign.
std::optional<std::vector<Scalar>> recover_rescaling(const DifferenceOperator& source,
                                                     const DifferenceOperator& target,
                                                     const FieldContext& ctx = {});

// Top coefficient 1/omega_{i-n,i}; lower ones from the linear relation among x_{i-n..i+n},
// cross-checked against the closed subset-sum formula.
DifferenceOperator operator_from_config(const Configuration& cfg, const FieldContext& ctx = {});
// Closed-form coefficient a^{n-p}_i, 0 <= p <= n.
Scalar closed_form_coefficient(const Configuration& cfg, int p, long i);

struct MembershipReport {
  bool nondegenerate = false;
  bool periodic = false;   // coefficient tables have length N
  bool symmetric = false;  // stored in symmetric form
  bool monodromy_minus_identity = false;
  std::vector<std::string> reasons;

  bool ok() const { return nondegenerate && periodic && symmetric && monodromy_minus_identity; }
};

MembershipReport is_in_E(const DifferenceOperator& op, const FieldContext& ctx = {});

// Gram nu_ij = V^i_j for 0 <= i, j < N.
Matrix kernel_gram(const DifferenceOperator& op);
// Coordinates of V^0..V^{N-1} under a symplectic identification of the kernel with K^{2n}.
Configuration config_from_operator(const DifferenceOperator& op, bool real = true, const FieldContext& ctx = {});

}  // namespace lagcfg
