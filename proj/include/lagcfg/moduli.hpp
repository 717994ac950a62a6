#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagcfg/configuration.hpp"

namespace lagcfg {

// ---------------------------------------------------------------------------
// N = 2n and N = 2n + 1

struct TrivialClass {
  Configuration canonical;
  Matrix witness;                  // sends rescaling_i * x_i to canonical.point(i)
  std::vector<Scalar> rescaling;
  int epsilon = 1;                 // sign class for N = 2n + 1 over the reals, else 1
};

// The canonical representative is the standard basis (N = 2n), or, for N = 2n + 1,
// (e_1..e_n, eps f_1, eps(f_1+f_2), .., eps(f_{n-1}+f_n), eps f_n + sum_i (-1)^i e_i).
Configuration canonical_trivial(int n, int N, int epsilon, FieldKind kind);
TrivialClass classify_trivial(const Configuration& cfg, const FieldContext& ctx = {});

// ---------------------------------------------------------------------------
// N = 2n + 2: relation and construction

// Relation value for c_0..c_n; n is checked against the length.
Scalar check_relation(const std::vector<Scalar>& c, int n);
// The relation is affine in 1/c_n; returns the c_n completing c_0..c_{n-1}.
Scalar solve_last_cross_ratio(const std::vector<Scalar>& head);

enum class ConstructionMode { PaperEven, PaperOddAsymmetric, PaperOddSymmetric, RationalGeneral };
const char* mode_name(ConstructionMode mode);
ConstructionMode parse_mode(const std::string& name);

// Prescribed products for a (n, 2n+2) configuration: sub[i] = omega_{i,i+n} for i < 2n+2
// and diam[i] = omega_{i,i+n+1} for i <= n.
struct ProductData {
  int n = 0;
  std::vector<Scalar> sub;
  std::vector<Scalar> diam;
};

ProductData construction_data(const std::vector<Scalar>& c, ConstructionMode mode, FieldKind kind,
                              const FieldContext& ctx = {});
// Full N x N Gram matrix determined by the products and the Lagrangian condition.
Matrix gram_from_products(const ProductData& d);
// Points with x_1..x_n = e_1..e_n, banded f-combinations, and the two closing points from
// tridiagonal minors. Cross-checked against a direct linear solve and the full Gram.
Configuration realize_products(const ProductData& d, bool real, const FieldContext& ctx = {});

Configuration from_cross_ratios(const std::vector<Scalar>& c, ConstructionMode mode,
                                const FieldContext& ctx = {});

// ---------------------------------------------------------------------------
// Equivalence

enum class VerdictKind { Equivalent, Opposite, Inequivalent };
const char* verdict_name(VerdictKind kind);

struct EquivalenceVerdict {
  VerdictKind kind = VerdictKind::Inequivalent;
  // Equivalent: witness * (rescaling_i a_i) = b_i. Opposite: witness * Q (rescaling_i a_i) = b_i.
  std::optional<Matrix> witness;
  std::optional<std::vector<Scalar>> rescaling;
};

EquivalenceVerdict equivalent(const Configuration& a, const Configuration& b, const FieldContext& ctx = {});

// ---------------------------------------------------------------------------
// Normalization

enum class NormalizationScheme { EvenComplex, EvenReal, OddComplex, OddReal, SubdiametersOne };
const char* scheme_name(NormalizationScheme s);
NormalizationScheme parse_scheme(const std::string& name);

struct NormalizationResult {
  NormalizationScheme scheme = NormalizationScheme::EvenComplex;
  Configuration config;
  std::vector<Scalar> rescaling;  // config.point(i) = rescaling_i * input.point(i)
  // omega_{i,i+n+1}: n+1 values for N = 2n+2, N values for subdiameters_one.
  std::vector<Scalar> diameters;
  int eps0 = 0, eps1 = 0, epsc = 0;  // even_real only
  std::optional<Scalar> mu;          // odd schemes
  bool refined = true;               // odd_real: whether the diameter product was made 1
};

NormalizationResult normalize(const Configuration& cfg, NormalizationScheme scheme, const FieldContext& ctx = {});

// All representative tuples meeting the scheme's conditions, found by exhaustive search over
// candidate rescalings of a normalized tuple (sign vectors for the even schemes, 4n+4-th roots
// of unity for odd_complex). Duplicates are removed.
std::vector<Configuration> enumerate_normalizations(const Configuration& cfg, NormalizationScheme scheme,
                                                    const FieldContext& ctx = {});

// Cyclic continuant of the even_complex diameters.
Scalar continuant_check(const Configuration& cfg, const FieldContext& ctx = {});

}  // namespace lagcfg
