#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lagcfg/configuration.hpp"
#include "lagcfg/continuants.hpp"
#include "lagcfg/diffop.hpp"
#include "lagcfg/gaussrel.hpp"
#include "lagcfg/moduli.hpp"

namespace lagcfg::json_io {

using Json = nlohmann::ordered_json;

// Rational as "p/q" in lowest terms; Complex as [re, im].
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
Json to_json(const std::vector<Scalar>& v);
std::vector<Scalar> scalars_from_json(const Json& j);
// All entries converted to the kind of the first; mixing is only allowed for integers and
// rationals next to complex values, which are promoted.
std::vector<Scalar> unify_kinds(std::vector<Scalar> v);

Json to_json(const Matrix& m);  // array of rows
Matrix matrix_from_json(const Json& j);

// {"field","real","n","N","points"}
Json to_json(const Configuration& cfg);
Configuration config_from_json(const Json& j);

// {"n","N","entries"}
Json to_json(const GramMatrix& g);
GramMatrix gram_from_json(const Json& j);

// {"n","N","coeffs"}
Json to_json(const DifferenceOperator& op);
DifferenceOperator operator_from_json(const Json& j);

// {"n","d","branch"}; reading gives the diagonals without representatives.
struct DiagonalData {
  int n = 0;
  std::vector<Scalar> d;
  std::string branch;
};
Json to_json(const MainDiagonals& md);
DiagonalData diagonals_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const NormalizationResult& r);
Json to_json(const EquivalenceVerdict& v);
Json to_json(const MembershipReport& r);

Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace lagcfg::json_io
