#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lagcfg/symplectic.hpp"

namespace lagcfg {

// N points in K^{2n}, indexed 0..N-1 and extended by x_{i+N} = -x_i. The Gram matrix is
// computed once at construction.
class Configuration {
 public:
  Configuration(int n, std::vector<SympVector> points, bool real);

  int n() const { return n_; }
  int size() const { return static_cast<int>(points_.size()); }
  FieldKind kind() const { return points_.front().kind(); }
  bool is_real() const { return real_; }

  const std::vector<SympVector>& points() const { return points_; }
  const SympVector& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
  SympVector point_ext(long i) const;
  Scalar omega(long i, long j) const;
  // Scale used for zero tests on omega(i, j).
  double omega_scale(long i, long j) const;
  const GramMatrix& gram() const { return gram_; }

  Configuration to_kind(FieldKind kind) const;

 private:
  int n_;
  std::vector<SympVector> points_;
  bool real_;
  GramMatrix gram_;
  std::vector<double> norms_;
};

// Reduces i modulo N into [0, N) and returns the sign picked up by antiperiodicity.
std::pair<int, int> reduce_index(long i, int N);
int cyclic_distance(long i, long j, int N);

// Flags are computed independently of each other.
struct ValidationReport {
  bool lagrangian = false;  // omega_ij = 0 whenever |i-j|_N < n
  bool spanning = false;    // omega(x_i, x_{i+n}) != 0 for all i
  bool generic = false;     // omega_ij != 0 whenever |i-j|_N >= n
  std::vector<std::pair<int, int>> non_isotropic;  // breaks the Lagrangian condition
  std::vector<std::pair<int, int>> degenerate;     // zero omega(x_i, x_{i+n})
  std::vector<std::pair<int, int>> non_generic;
};

ValidationReport validate(const Configuration& cfg, const FieldContext& ctx = {});
bool is_zero_omega(const Configuration& cfg, long i, long j, const FieldContext& ctx = {});

Configuration transform(const Configuration& cfg, const Matrix& t);
// Replaces x_i by lambda_i x_i; every lambda_i must be nonzero.
Configuration rescale(const Configuration& cfg, const std::vector<Scalar>& lambda);
Configuration opposite(const Configuration& cfg);

// [x1, x2; y1, y2] = w(x1,y1) w(x2,y2) / (w(x1,y2) w(x2,y1)).
Scalar cross_ratio(const SympVector& x1, const SympVector& x2, const SympVector& y1, const SympVector& y2);
Scalar cross_ratio(const Configuration& cfg, long i1, long i2, long j1, long j2);
Scalar gamma_ratio(const Configuration& cfg, long i, long j);
// c_0..c_n for N = 2n + 2.
std::vector<Scalar> diametric_cross_ratios(const Configuration& cfg);

// Sign of the product of omega over the given index pairs. Each index must occur an even
// number of times modulo N so the sign is a rescaling invariant.
int sign_of_pairs(const Configuration& cfg, const std::vector<std::pair<long, long>>& pairs,
                  const FieldContext& ctx = {});
// Sign of prod_s omega(x_{j_{s-1}}, x_{j_s}) along a path closed modulo N.
int sign_invariant(const Configuration& cfg, const std::vector<long>& path, const FieldContext& ctx = {});

struct StandardForm {
  Configuration config;
  Matrix witness;                // sends lambda_i x_i to config.point(i)
  std::vector<Scalar> rescaling;  // lambda
};

// Equivalent configuration with x_i = e_{i+1} for i < n, x_n = f_1 and
// x_{n+j} = f_{j+1} + (combination of f_1..f_j).
StandardForm standardize(const Configuration& cfg, const FieldContext& ctx = {});

// Sequential sampler: each point is drawn with small integer (or Gaussian integer)
// coefficients from the subspace cut out by the isotropy constraints, then a random
// symplectic map is applied (a {-1,0,1} shear pair in Rational mode). Generic by construction.
Configuration random_config(int n, int N, std::uint64_t seed, FieldKind kind, bool real = true,
                            const FieldContext& ctx = {});

}  // namespace lagcfg
