#include "lagcfg/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lagcfg::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

FieldKind parse_field(const std::string& name) {
  if (name == "rational") return FieldKind::Rational;
  if (name == "complex") return FieldKind::Complex;
  bad("unknown field '" + name + "'");
}

std::vector<Scalar> as_kind(std::vector<Scalar> v, FieldKind kind) {
  for (Scalar& s : v) {
    if (kind == FieldKind::Rational && !s.is_rational()) throw Error(ErrorCode::MixedFieldKinds, "complex entry in rational data");
    s = to_kind(s, kind);
  }
  return v;
}

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_rational()) return s.to_string();
  const auto z = s.z();
  return Json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return Scalar(parse_rational(j.get<std::string>()));
    } catch (const Error&) {
      bad("malformed rational '" + j.get<std::string>() + "'");
    }
  }
  if (j.is_number_integer()) return Scalar::rational(j.get<long>());
  if (j.is_number_float()) return Scalar::complex(j.get<double>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    const double re = j[0].get<double>(), im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) bad("non-finite complex entry");
    return Scalar::complex(re, im);
  }
  bad("malformed scalar " + j.dump());
}

Json to_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const Scalar& s : v) out.push_back(to_json(s));
  return out;
}

std::vector<Scalar> unify_kinds(std::vector<Scalar> v) {
  bool any_complex = false;
  for (const Scalar& s : v) any_complex = any_complex || !s.is_rational();
  return as_kind(std::move(v), any_complex ? FieldKind::Complex : FieldKind::Rational);
}

std::vector<Scalar> scalars_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of scalars");
  std::vector<Scalar> out;
  for (const Json& e : j) out.push_back(scalar_from_json(e));
  return unify_kinds(std::move(out));
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty array of rows");
  std::vector<Scalar> flat;
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != cols) bad("matrix rows must be arrays of equal length");
    for (const Json& e : row) flat.push_back(scalar_from_json(e));
  }
  flat = unify_kinds(std::move(flat));
  Matrix m(j.size(), cols, flat.empty() ? FieldKind::Rational : flat.front().kind());
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = flat[i * cols + k];
  return m;
}

Json to_json(const Configuration& cfg) {
  Json pts = Json::array();
  for (const SympVector& p : cfg.points()) pts.push_back(to_json(p.coords()));
  return Json{{"field", field_name(cfg.kind())},
              {"real", cfg.is_real()},
              {"n", cfg.n()},
              {"N", cfg.size()},
              {"points", std::move(pts)}};
}

Configuration config_from_json(const Json& j) {
  const FieldKind kind = parse_field(field(j, "field").get<std::string>());
  const Json& real = field(j, "real");
  if (!real.is_boolean()) bad("field 'real' must be a boolean");
  const int n = int_field(j, "n"), N = int_field(j, "N");
  const Json& pts = field(j, "points");
  if (!pts.is_array() || static_cast<int>(pts.size()) != N) bad("expected N points");
  std::vector<SympVector> points;
  for (const Json& p : pts) {
    if (!p.is_array() || static_cast<int>(p.size()) != 2 * n) bad("each point needs 2n coordinates");
    std::vector<Scalar> coords;
    for (const Json& e : p) coords.push_back(scalar_from_json(e));
    points.emplace_back(as_kind(std::move(coords), kind));
  }
  return Configuration(n, std::move(points), real.get<bool>());
}

Json to_json(const GramMatrix& g) {
  return Json{{"n", g.n}, {"N", g.size()}, {"entries", to_json(g.entries)}};
}

GramMatrix gram_from_json(const Json& j) {
  GramMatrix g;
  g.n = int_field(j, "n");
  g.entries = matrix_from_json(field(j, "entries"));
  const int N = int_field(j, "N");
  if (static_cast<int>(g.entries.rows()) != N || static_cast<int>(g.entries.cols()) != N) bad("entries must be N x N");
  return g;
}

Json to_json(const DifferenceOperator& op) {
  Json rows = Json::array();
  for (const auto& row : op.coeffs()) rows.push_back(to_json(row));
  return Json{{"n", op.n()}, {"N", op.period()}, {"coeffs", std::move(rows)}};
}

DifferenceOperator operator_from_json(const Json& j) {
  const int n = int_field(j, "n"), N = int_field(j, "N");
  const Json& rows = field(j, "coeffs");
  if (!rows.is_array()) bad("coeffs must be an array");
  std::vector<Scalar> flat;
  std::vector<std::size_t> sizes;
  for (const Json& row : rows) {
    if (!row.is_array()) bad("coeffs rows must be arrays");
    sizes.push_back(row.size());
    for (const Json& e : row) flat.push_back(scalar_from_json(e));
  }
  flat = unify_kinds(std::move(flat));
  std::vector<std::vector<Scalar>> coeffs;
  std::size_t at = 0;
  for (std::size_t len : sizes) {
    coeffs.emplace_back(flat.begin() + static_cast<long>(at), flat.begin() + static_cast<long>(at + len));
    at += len;
  }
  return DifferenceOperator(n, N, std::move(coeffs));
}

Json to_json(const MainDiagonals& md) { return Json{{"n", md.n}, {"d", to_json(md.d)}, {"branch", md.branch}}; }

DiagonalData diagonals_from_json(const Json& j) {
  DiagonalData out;
  out.n = int_field(j, "n");
  out.d = scalars_from_json(field(j, "d"));
  if (j.contains("branch")) out.branch = j.at("branch").get<std::string>();
  if (out.n < 1 || static_cast<int>(out.d.size()) != 2 * out.n + 3) throw Error(ErrorCode::LengthMismatch, "expected 2n + 3 diagonals");
  return out;
}

Json to_json(const ValidationReport& r) {
  auto pairs = [](const std::vector<std::pair<int, int>>& v) {
    Json out = Json::array();
    for (const auto& [i, k] : v) out.push_back(Json::array({i, k}));
    return out;
  };
  return Json{{"lagrangian", r.lagrangian},
              {"spanning", r.spanning},
              {"generic", r.generic},
              {"non_isotropic", pairs(r.non_isotropic)},
              {"degenerate", pairs(r.degenerate)},
              {"non_generic", pairs(r.non_generic)}};
}

Json to_json(const NormalizationResult& r) {
  Json out{{"scheme", scheme_name(r.scheme)},
           {"diameters", to_json(r.diameters)},
           {"rescaling", to_json(r.rescaling)},
           {"config", to_json(r.config)}};
  if (r.scheme == NormalizationScheme::EvenReal) out["signs"] = Json{{"eps0", r.eps0}, {"eps1", r.eps1}, {"epsc", r.epsc}};
  if (r.mu) out["mu"] = to_json(*r.mu);
  if (r.scheme == NormalizationScheme::OddReal) out["refined"] = r.refined;
  return out;
}

Json to_json(const EquivalenceVerdict& v) {
  Json out{{"verdict", verdict_name(v.kind)}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (v.rescaling) out["rescaling"] = to_json(*v.rescaling);
  return out;
}

Json to_json(const MembershipReport& r) {
  return Json{{"in_E", r.ok()},
              {"nondegenerate", r.nondegenerate},
              {"periodic", r.periodic},
              {"symmetric", r.symmetric},
              {"monodromy_minus_identity", r.monodromy_minus_identity},
              {"reasons", r.reasons}};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace lagcfg::json_io
