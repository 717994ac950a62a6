#pragma once

#include <vector>

#include "lagcfg/matrix.hpp"
#include "lagcfg/rng.hpp"

namespace lagcfg {

// Coordinates in the basis (e_1..e_n, f_1..f_n).
class SympVector {
 public:
  SympVector() = default;
  explicit SympVector(std::vector<Scalar> coords);
  static SympVector zero(int n, FieldKind kind);
  static SympVector e(int n, int i, FieldKind kind);  // e_{i+1}, i is 0-based
  static SympVector f(int n, int i, FieldKind kind);  // f_{i+1}

  int half_dim() const { return static_cast<int>(coords_.size() / 2); }
  int dim() const { return static_cast<int>(coords_.size()); }
  FieldKind kind() const { return coords_.front().kind(); }
  const Scalar& operator[](int k) const { return coords_[k]; }
  Scalar& operator[](int k) { return coords_[k]; }
  const std::vector<Scalar>& coords() const { return coords_; }

  SympVector operator-() const;
  SympVector& operator+=(const SympVector& o);
  friend SympVector operator+(SympVector a, const SympVector& b) { return a += b; }
  friend SympVector operator-(SympVector a, const SympVector& b) { return a += -b; }
  friend SympVector operator*(const Scalar& s, const SympVector& v);

  bool is_exact_zero() const;
  double norm() const;  // max-abs norm
  SympVector to_kind(FieldKind kind) const;
  bool operator==(const SympVector& o) const { return coords_ == o.coords_; }

 private:
  std::vector<Scalar> coords_;
};

// omega(u, v) = sum_i (u_{e_i} v_{f_i} - u_{f_i} v_{e_i}).
Scalar omega(const SympVector& u, const SympVector& v);

struct GramMatrix {
  int n = 0;
  Matrix entries;
  int size() const { return static_cast<int>(entries.rows()); }
};

GramMatrix gram(const std::vector<SympVector>& vectors);
std::size_t rank(const std::vector<SympVector>& vectors, const FieldContext& ctx = {});
// Columns are the vectors.
Matrix as_columns(const std::vector<SympVector>& vectors);
SympVector apply(const Matrix& t, const SympVector& v);

Matrix standard_form(int n, FieldKind kind);  // matrix of omega
bool is_symplectic(const Matrix& t, const FieldContext& ctx = {});
// Q = diag(Id, -Id); it negates omega.
Matrix opposite_map(int n, FieldKind kind);

// The unique linear map sending xs[i] to ys[i]. Needs equal Gram matrices and full span.
Matrix reconstruct_transform(const std::vector<SympVector>& xs, const std::vector<SympVector>& ys,
                             const FieldContext& ctx = {});

// Product of diagonal maps d + d^{-1} and symmetric shears with entries in [-3, 3].
Matrix random_symplectic(int n, Rng& rng, FieldKind kind);
Matrix random_symplectic(int n, std::uint64_t seed, FieldKind kind);

// Columns of the result express a symplectic basis (u_1..u_n, w_1..w_n) in the basis whose
// skew Gram matrix is `g`: P^T g P equals standard_form. Throws RankDeficient.
Matrix symplectic_basis(const Matrix& g, const FieldContext& ctx = {});

// Whether a + a^T vanishes, up to tolerance relative to the largest entry.
bool is_skew(const Matrix& a, const FieldContext& ctx = {});

}  // namespace lagcfg
