#include "lagcfg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lagcfg/acceptance.hpp"
#include "lagcfg/json_io.hpp"

namespace lagcfg::cli {

namespace {

using json_io::Json;

FieldContext context_for(FieldKind kind) { return FieldContext::from_env(kind); }

Scalar parse_loose_scalar(const std::string& text) {
  try {
    return Scalar(parse_rational(text));
  } catch (const Error&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::InvalidInput, "malformed number '" + text + "'");
  return Scalar::complex(v);
}

std::vector<Scalar> parse_list(const std::string& text) {
  std::vector<Scalar> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_loose_scalar(item));
  if (text.back() == ',') throw Error(ErrorCode::InvalidInput, "trailing comma in list");
  return json_io::unify_kinds(std::move(out));
}

// Returns the payload; writes it to `path` as well when one is given.
Json emit(Json j, const std::string& path) {
  if (!path.empty()) json_io::write_file(path, j);
  return j;
}

double worst(const std::vector<Scalar>& v) {
  double w = 0.0;
  for (const Scalar& s : v) w = std::max(w, s.abs());
  return w;
}

bool all_real(const DifferenceOperator& op, const FieldContext& ctx) {
  for (const auto& row : op.coeffs())
    for (const Scalar& s : row)
      if (!is_real_value(s, ctx)) return false;
  return true;
}

std::string error_json(const std::string& code, const std::string& message) {
  return Json{{"error", {{"code", code}, {"message", message}}}}.dump() + "\n";
}

std::string table(const std::vector<acceptance::Result>& results) {
  std::ostringstream s;
  for (const auto& r : results)
    s << "criterion " << std::setw(2) << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << std::fixed
      << std::setprecision(2) << std::setw(7) << r.seconds << "s  " << r.title << "  [" << r.detail << "]\n";
  return s.str();
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Lagrangian configurations, cross-ratios and difference operators", "lagcfg"};
  app.require_subcommand(1);

  int n = 0, N = 0;
  std::string field = "rational", output, file, file2, c_json, cfg_file, mode = "rational_general", scheme, method = "formula", list;
  std::uint64_t seed = 1;
  bool real = false, cyclic = false;
  acceptance::Options st;
  st.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<int> only;

  auto* gen = app.add_subcommand("gen", "sample a generic configuration");
  gen->add_option("--n", n, "half dimension")->required()->check(CLI::Range(1, 16));
  gen->add_option("--N", N, "number of points")->required()->check(CLI::PositiveNumber);
  gen->add_option("--field", field, "rational or complex")->check(CLI::IsMember({"rational", "complex"}));
  gen->add_option("--seed", seed, "random seed");
  gen->add_flag("--real", real, "complex field only: sample a real configuration");
  gen->add_option("-o,--output", output, "also write the configuration here");

  auto* validate_cmd = app.add_subcommand("validate", "Lagrangian, spanning and genericity report");
  validate_cmd->add_option("file", file)->required();

  auto* cross = app.add_subcommand("cross-ratios", "diametric (N = 2n+2) or main (N = 2n+3) cross-ratios");
  cross->add_option("file", file)->required();

  auto* relation = app.add_subcommand("relation", "value of the N = 2n+2 relation");
  relation->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  auto* rel_cfg = relation->add_option("--cfg", cfg_file, "configuration file");
  auto* rel_c = relation->add_option("--c", c_json, "JSON array of n+1 cross-ratios");
  rel_cfg->excludes(rel_c);
  rel_c->excludes(rel_cfg);

  auto* construct = app.add_subcommand("construct", "configuration with prescribed diametric cross-ratios");
  construct->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  construct->add_option("--c", c_json, "JSON array of n+1 cross-ratios")->required();
  construct->add_option("--mode", mode)->check(
      CLI::IsMember({"paper_even", "paper_odd_asymmetric", "paper_odd_symmetric", "rational_general"}));
  construct->add_option("-o,--output", output);

  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two configurations");
  equiv->add_option("file1", file)->required();
  equiv->add_option("file2", file2)->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "normalized representatives");
  normalize_cmd->add_option("file", file)->required();
  normalize_cmd->add_option("--scheme", scheme)
      ->required()
      ->check(CLI::IsMember({"even_complex", "even_real", "odd_complex", "odd_real", "subdiameters_one", "main_diagonals"}));

  auto* to_op = app.add_subcommand("to-op", "difference operator of a configuration");
  to_op->add_option("file", file)->required();
  to_op->add_option("-o,--output", output);

  auto* from_op = app.add_subcommand("from-op", "configuration of an operator with monodromy -Id");
  from_op->add_option("file", file)->required();
  from_op->add_option("-o,--output", output);

  auto* pf = app.add_subcommand("pfaffian", "Pfaffian of the Gram matrix of an N = 2n+2 configuration");
  pf->add_option("file", file, "configuration or Gram matrix")->required();
  pf->add_option("--method", method)->check(CLI::IsMember({"formula", "generic"}));

  auto* cont = app.add_subcommand("continuant", "continuant of a comma-separated list");
  cont->add_flag("--cyclic", cyclic, "cyclic continuant");
  cont->add_option("values", list, "a0,a1,...")->required();

  auto* gauss = app.add_subcommand("gauss", "N = 2n+3 main diagonals and relation residuals");
  gauss->add_option("file", file, "configuration or main-diagonal data")->required();

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--n-max", st.n_max)->check(CLI::Range(1, 16));
  selftest->add_option("--trials", st.trials, "samples per case; 0 for the full counts")->check(CLI::NonNegativeNumber);
  selftest->add_option("--seed", st.seed);
  selftest->add_option("--jobs", st.jobs)->check(CLI::PositiveNumber);
  selftest->add_option("--only", only, "criterion ids")->check(CLI::Range(1, acceptance::kCriteria))->delimiter(',');

  CommandResult result;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return {Ok, out.str(), err.str()};
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return {UsageError, "", out.str() + err.str()};
  }
  if (relation->parsed() && cfg_file.empty() && c_json.empty())
    return {UsageError, "", "relation: one of --cfg or --c is required\n" + relation->help()};

  try {
    Json payload;
    if (gen->parsed()) {
      const FieldKind kind = field == "complex" ? FieldKind::Complex : FieldKind::Rational;
      const Configuration cfg = random_config(n, N, seed, kind, kind == FieldKind::Rational || real, context_for(kind));
      payload = emit(json_io::to_json(cfg), output);
    } else if (validate_cmd->parsed()) {
      const Configuration cfg = json_io::config_from_json(json_io::read_file(file));
      payload = json_io::to_json(validate(cfg, context_for(cfg.kind())));
    } else if (cross->parsed()) {
      const Configuration cfg = json_io::config_from_json(json_io::read_file(file));
      if (cfg.size() == 2 * cfg.n() + 2)
        payload = Json{{"kind", "diametric"}, {"c", json_io::to_json(diametric_cross_ratios(cfg))}};
      else if (cfg.size() == 2 * cfg.n() + 3)
        payload = Json{{"kind", "main"}, {"c", json_io::to_json(main_cross_ratios(cfg))}};
      else
        throw Error(ErrorCode::WrongN, "cross-ratios are defined here for N = 2n+2 and N = 2n+3");
    } else if (relation->parsed()) {
      std::vector<Scalar> c;
      if (!cfg_file.empty()) {
        const Configuration cfg = json_io::config_from_json(json_io::read_file(cfg_file));
        if (cfg.n() != n) throw Error(ErrorCode::WrongN, "--n differs from the configuration");
        c = diametric_cross_ratios(cfg);
      } else {
        c = json_io::scalars_from_json(json_io::parse(c_json));
      }
      const Scalar value = check_relation(c, n);
      payload = Json{{"residual", json_io::to_json(value)}};
      if (!value.is_rational()) payload["normalized_residual"] = gen_eq_normalized_residual(c);
    } else if (construct->parsed()) {
      const std::vector<Scalar> c = json_io::scalars_from_json(json_io::parse(c_json));
      if (static_cast<int>(c.size()) != n + 1) throw Error(ErrorCode::LengthMismatch, "--c needs n + 1 values");
      const Configuration cfg = from_cross_ratios(c, parse_mode(mode), context_for(c.front().kind()));
      payload = emit(json_io::to_json(cfg), output);
    } else if (equiv->parsed()) {
      const Configuration a = json_io::config_from_json(json_io::read_file(file));
      const Configuration b = json_io::config_from_json(json_io::read_file(file2));
      const FieldKind kind = a.kind() == FieldKind::Complex || b.kind() == FieldKind::Complex ? FieldKind::Complex
                                                                                              : FieldKind::Rational;
      payload = json_io::to_json(equivalent(a, b, context_for(kind)));
    } else if (normalize_cmd->parsed()) {
      const Configuration cfg = json_io::config_from_json(json_io::read_file(file));
      if (scheme == "main_diagonals")
        payload = json_io::to_json(normalize_2n3(cfg, context_for(FieldKind::Complex)));
      else
        payload = json_io::to_json(normalize(cfg, parse_scheme(scheme), context_for(cfg.kind())));
    } else if (to_op->parsed()) {
      const Configuration cfg = json_io::config_from_json(json_io::read_file(file));
      payload = emit(json_io::to_json(operator_from_config(cfg, context_for(cfg.kind()))), output);
    } else if (from_op->parsed()) {
      const DifferenceOperator op = json_io::operator_from_json(json_io::read_file(file));
      const FieldContext ctx = context_for(op.kind());
      payload = emit(json_io::to_json(config_from_operator(op, all_real(op, ctx), ctx)), output);
    } else if (pf->parsed()) {
      const Json j = json_io::read_file(file);
      OmegaData d;
      FieldKind kind = FieldKind::Rational;
      if (j.contains("entries")) {
        const GramMatrix g = json_io::gram_from_json(j);
        kind = g.entries.kind();
        d = omega_data(g.entries, g.n);
      } else {
        const Configuration cfg = json_io::config_from_json(j);
        kind = cfg.kind();
        d = omega_data(cfg);
      }
      const PfaffianMethod m = method == "generic" ? PfaffianMethod::Generic : PfaffianMethod::Formula;
      payload = Json{{"method", method}, {"pfaffian", json_io::to_json(pfaffian_omega(d, m, context_for(kind)))}};
    } else if (cont->parsed()) {
      const std::vector<Scalar> a = parse_list(list);
      if (cyclic && a.empty()) throw Error(ErrorCode::InvalidInput, "cyclic continuant needs at least one value");
      const Scalar v = cyclic ? cyclic_continuant(a) : continuant(a, a.empty() ? FieldKind::Rational : a.front().kind());
      payload = Json{{"cyclic", cyclic}, {"value", json_io::to_json(v)}};
    } else if (gauss->parsed()) {
      const Json j = json_io::read_file(file);
      Json extra;
      json_io::DiagonalData dd;
      if (j.contains("points")) {
        const Configuration cfg = json_io::config_from_json(j);
        const MainDiagonals md = normalize_2n3(cfg, context_for(FieldKind::Complex));
        dd = {md.n, md.d, md.branch};
        if (md.n <= 3) {
          const std::vector<Scalar> cr = gauss_cross_ratio_residuals(main_cross_ratios(cfg), md.n);
          extra = Json{{"cross_ratio_residuals", json_io::to_json(cr)}, {"max_cross_ratio_residual", worst(cr)}};
        }
      } else {
        dd = json_io::diagonals_from_json(j);
      }
      const std::vector<Scalar> res = gauss_residuals(dd.d, dd.n);
      payload = Json{{"n", dd.n},
                     {"d", json_io::to_json(dd.d)},
                     {"branch", dd.branch},
                     {"residuals", json_io::to_json(res)},
                     {"max_residual", worst(res)}};
      if (dd.n == 1) payload["pentagon_product"] = json_io::to_json(pentagon_matrix_product(dd.d));
      if (!extra.is_null()) payload.update(extra);
    } else if (selftest->parsed()) {
      (void)context_for(FieldKind::Complex);  // rejects a malformed LAGCFG_EPS up front
      const std::vector<acceptance::Result> results = acceptance::run_all(st, only);
      Json rows = Json::array();
      bool all = true;
      for (const auto& r : results) {
        all = all && r.pass;
        rows.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", r.checks},
                            {"failures", r.failures}, {"detail", r.detail}});
      }
      payload = Json{{"seed", st.seed}, {"n_max", st.n_max}, {"trials", st.trials}, {"criteria", rows}, {"pass", all}};
      err << table(results);
      if (!all) {
        err << Json{{"error", {{"code", "AcceptanceFailed"}, {"message", "some criteria failed"}}}, {"report", payload}}.dump()
            << "\n";
        return {DomainError, "", err.str()};
      }
    }
    result.out = payload.dump(2) + "\n";
    result.err = err.str();
    return result;
  } catch (const Error& e) {
    return {DomainError, "", err.str() + error_json(error_name(e.code()), e.what())};
  } catch (const nlohmann::json::exception& e) {
    return {DomainError, "", err.str() + error_json("InvalidInput", e.what())};
  } catch (const std::exception& e) {
    return {DomainError, "", err.str() + error_json("InternalCheckFailed", e.what())};
  }
}

}  // namespace lagcfg::cli
