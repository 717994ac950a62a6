#include "lagcfg/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "lagcfg/continuants.hpp"
#include "lagcfg/diffop.hpp"
#include "lagcfg/gaussrel.hpp"
#include "lagcfg/moduli.hpp"

namespace lagcfg::acceptance {

namespace {

constexpr double kTol = 1e-8;

class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ == 0) first_ = what();
  }
  // Runs body and records any library error as a failure.
  void guard(const std::string& where, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, [&] { return where + ": " + e.what(); });
    }
  }
  long checks() const { return checks_; }
  long failures() const { return failures_; }
  const std::string& first() const { return first_; }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
};

std::string label(const std::string& what, int n, long t) {
  return what + " (n=" + std::to_string(n) + ", sample " + std::to_string(t) + ")";
}

int count(const Options& o, int full) { return o.trials > 0 ? o.trials : full; }
int cap(const Options& o, int hi) { return std::min(hi, std::max(1, o.n_max)); }

Scalar small_rational(Rng& rng, bool nonzero = true) {
  const long p = nonzero ? rng.uniform_nonzero(-9, 9) : rng.uniform(-9, 9);
  return Scalar::rational(p, rng.uniform(1, 5));
}

std::vector<Scalar> small_rationals(int len, Rng& rng, bool nonzero = true) {
  std::vector<Scalar> v;
  for (int i = 0; i < len; ++i) v.push_back(small_rational(rng, nonzero));
  return v;
}

// Random c_0..c_{n-1}; c_n completes the relation.
std::vector<Scalar> relation_point(int n, Rng& rng) {
  for (;;) {
    std::vector<Scalar> c = small_rationals(n, rng);
    try {
      c.push_back(solve_last_cross_ratio(c));
      return c;
    } catch (const Error&) {
    }
  }
}

bool images_match(const Matrix& t, const std::vector<Scalar>& rescaling, const Configuration& a, const Configuration& b,
                  bool through_opposite) {
  const FieldKind kind = t.kind();
  const Matrix q = opposite_map(a.n(), kind);
  const FieldContext tol = FieldContext::complex(1e-7, 1e-9);
  for (int i = 0; i < a.size(); ++i) {
    SympVector x = to_kind(rescaling[i], kind) * a.point(i).to_kind(kind);
    if (through_opposite) x = apply(q, x);
    const SympVector img = apply(t, x), target = b.point(i).to_kind(kind);
    if (kind == FieldKind::Rational) {
      if (!(img == target)) return false;
    } else {
      for (int k = 0; k < img.dim(); ++k)
        if (!approx_eq(img[k], target[k], tol)) return false;
    }
  }
  return true;
}

bool grams_equal(const Configuration& a, const Configuration& b) { return a.gram().entries == b.gram().entries; }

// Same Gram after rescaling by lambda, and a symplectic map realizing it.
bool same_class_exact(const Configuration& a, const Configuration& b) {
  if (!grams_equal(a, b)) return false;
  return is_symplectic(reconstruct_transform(a.points(), b.points()));
}

// 1. The relation vanishes on diametric cross-ratios.
void relation_identity(const Options& o, Rng& rng, Tally& tally) {
  const auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= cap(o, 6); ++n) {
    const int N = 2 * n + 2;
    for (int t = 0; t < count(o, 200); ++t) {
      tally.guard(label("sampler", n, t), [&] {
        const Configuration cfg = random_config(n, N, rng.next_u64(), FieldKind::Rational);
        tally.check(gen_eq_value(diametric_cross_ratios(cfg)).is_exact_zero(), [&] { return label("sampler residual", n, t); });
      });
      tally.guard(label("rational_general", n, t), [&] {
        const Configuration cfg = from_cross_ratios(relation_point(n, rng), ConstructionMode::RationalGeneral);
        tally.check(gen_eq_value(diametric_cross_ratios(cfg)).is_exact_zero(),
                    [&] { return label("rational_general residual", n, t); });
      });
      tally.guard(label("complex sampler", n, t), [&] {
        const Configuration cfg = random_config(n, N, rng.next_u64(), FieldKind::Complex, false);
        const double r = gen_eq_normalized_residual(diametric_cross_ratios(cfg));
        tally.check(r < kTol, [&] { return label("complex residual " + std::to_string(r), n, t); });
      });
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  tally.check(seconds < 60.0, [&] { return "runtime " + std::to_string(seconds) + " s exceeds 60 s"; });
}

// 2. Construction from relation-satisfying cross-ratios returns them exactly.
void round_trip(const Options& o, Rng& rng, Tally& tally) {
  for (int n = 1; n <= cap(o, 6); ++n) {
    for (int t = 0; t < count(o, 200); ++t) {
      tally.guard(label("round trip", n, t), [&] {
        const std::vector<Scalar> c = relation_point(n, rng);
        const Configuration cfg = from_cross_ratios(c, ConstructionMode::RationalGeneral);
        tally.check(diametric_cross_ratios(cfg) == c, [&] { return label("round trip differs", n, t); });
      });
    }
  }
}

// 3. Equivalent pairs are recognized with exact witnesses; real opposites are not equivalent.
void completeness(const Options& o, Rng& rng, Tally& tally) {
  for (int n = 1; n <= cap(o, 4); ++n) {
    const int N = 2 * n + 2;
    for (int t = 0; t < count(o, 100); ++t) {
      tally.guard(label("equivalence", n, t), [&] {
        const Configuration a = random_config(n, N, rng.next_u64(), FieldKind::Rational);
        const Configuration b =
            transform(rescale(a, small_rationals(N, rng)), random_symplectic(n, rng, FieldKind::Rational));
        const EquivalenceVerdict v = equivalent(a, b);
        tally.check(v.kind == VerdictKind::Equivalent, [&] { return label("pair not equivalent", n, t); });
        if (v.kind == VerdictKind::Equivalent) {
          const bool exact = v.witness->kind() == FieldKind::Rational && is_symplectic(*v.witness);
          tally.check(exact && images_match(*v.witness, *v.rescaling, a, b, false),
                      [&] { return label("witness fails", n, t); });
        }
        const EquivalenceVerdict op = equivalent(a, opposite(a));
        tally.check(op.kind == VerdictKind::Opposite, [&] {
          return label(std::string("opposite reported as ") + verdict_name(op.kind), n, t);
        });
        if (op.kind == VerdictKind::Opposite)
          tally.check(is_symplectic(*op.witness) && images_match(*op.witness, *op.rescaling, a, opposite(a), true),
                      [&] { return label("opposite witness fails", n, t); });
      });
    }
  }
}

// 4. Pfaffian formula, block identity and pf^2 = det.
void pfaffians(const Options& o, Rng& rng, Tally& tally) {
  const int per_n = std::max(1, count(o, 500) / 5);
  for (int n = 1; n <= cap(o, 5); ++n) {
    for (int t = 0; t < per_n; ++t) {
      tally.guard(label("band", n, t), [&] {
        OmegaData d;
        d.n = n;
        d.first = small_rational(rng);
        d.last = small_rational(rng);
        d.band.diag = small_rationals(n + 1, rng);
        d.band.super = small_rationals(n, rng);
        d.band.sub = small_rationals(n, rng);
        tally.check(pfaffian_omega(d, PfaffianMethod::Formula) == pfaffian_omega(d, PfaffianMethod::Generic),
                    [&] { return label("formula and elimination differ", n, t); });
      });
    }
  }
  for (int m = 2; m <= 6; ++m) {
    for (int t = 0; t < std::max(1, count(o, 20)); ++t) {
      tally.guard(label("block", m, t), [&] {
        Matrix a(m, m, FieldKind::Rational);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) a(i, j) = small_rational(rng, false);
        const BlockPfaffian bp = block_pfaffian(a, small_rational(rng, false), small_rational(rng, false));
        tally.check(bp.difference.is_exact_zero() && bp.pfaffian == bp.closed_form,
                    [&] { return label("block identity fails, m", m, t); });
      });
    }
  }
  for (int size = 1; size <= 12; ++size) {
    for (int t = 0; t < std::max(1, count(o, 20)); ++t) {
      Matrix s(size, size, FieldKind::Rational);
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) {
          s(i, j) = small_rational(rng, false);
          s(j, i) = -s(i, j);
        }
      const Scalar pf = pfaffian(s);
      tally.check(pf * pf == determinant(s), [&] { return label("pf^2 != det, size", size, t); });
    }
  }
}

// 5. Cyclic continuant of normalized diameters.
void continuant_theorem(const Options& o, Rng& rng, Tally& tally) {
  for (int n : {2, 4, 6}) {
    if (n > cap(o, 6)) break;
    for (int t = 0; t < count(o, 100); ++t) {
      tally.guard(label("continuant", n, t), [&] {
        const Configuration cfg = random_config(n, 2 * n + 2, rng.next_u64(), FieldKind::Complex, false);
        const double r = continuant_check(cfg).abs();
        tally.check(r < kTol, [&] { return label("continuant " + std::to_string(r), n, t); });
      });
    }
  }
  const std::vector<Scalar> a = {Scalar::rational(1), Scalar::rational(2), Scalar::rational(3)};
  const Scalar by_hand = a[0] * a[1] * a[2] - a[0] - a[1] - a[2];
  tally.check(by_hand.is_exact_zero() && cyclic_continuant(a).is_exact_zero(), [] { return std::string("hexagon (1,2,3)"); });
  // Diameters (1, 2, 3) come from c = (2, 6, 3).
  tally.guard("hexagon construction", [&] {
    const Configuration hex = from_cross_ratios({Scalar::rational(2), Scalar::rational(6), Scalar::rational(3)},
                                                ConstructionMode::PaperEven);
    const Scalar r = continuant_check(hex);
    tally.check(r.is_rational() && r.is_exact_zero(), [] { return std::string("hexagon continuant not exactly 0"); });
  });
}

// 6. Operators of configurations lie in E and project back to the class.
void operator_correspondence(const Options& o, Rng& rng, Tally& tally) {
  for (int n = 1; n <= cap(o, 3); ++n) {
    for (int N = 2 * n + 2; N <= 2 * n + 4; ++N) {
      for (int t = 0; t < count(o, 50); ++t) {
        tally.guard(label("operator, N=" + std::to_string(N), n, t), [&] {
          const Configuration cfg = random_config(n, N, rng.next_u64(), FieldKind::Rational);
          const DifferenceOperator op = operator_from_config(cfg);
          const auto where = [&](const std::string& s) { return [=] { return label(s + ", N=" + std::to_string(N), n, t); }; };
          tally.check(is_in_E(op).ok(), where("not in E"));
          tally.check(monodromy(op) == Scalar::rational(-1) * Matrix::identity(2 * n, FieldKind::Rational),
                      where("monodromy is not exactly -Id"));
          bool entries = true;
          for (int i = 0; i < N && entries; ++i) {
            const SolutionWindow v = basis_solution(op, i, -N, 2 * N);
            for (long j = -N; j <= 2 * N; ++j) entries = entries && v.at(j) == cfg.omega(i, j);
          }
          tally.check(entries, where("V^i_j differs from omega_ij"));
          const Configuration back = config_from_operator(op);
          tally.check(same_class_exact(cfg, back), where("P(A) not equivalent to the configuration"));
          if (N == 2 * n + 2)
            tally.check(equivalent(cfg, back).kind == VerdictKind::Equivalent, where("equivalence test on P(A)"));
          // Rescaled operators project to rescaled configurations.
          const std::vector<Scalar> lambda = small_rationals(N, rng);
          const Configuration fiber = config_from_operator(rescale(op, lambda));
          tally.check(same_class_exact(rescale(back, lambda), fiber), where("P(rescaled A) not in the class"));
          // Equivalent configurations give operators related by a rescaling.
          const Configuration other =
              transform(rescale(cfg, small_rationals(N, rng)), random_symplectic(n, rng, FieldKind::Rational));
          const DifferenceOperator op2 = operator_from_config(other);
          const auto rec = recover_rescaling(op, op2);
          tally.check(rec.has_value() && rescale(op, *rec) == op2, where("rescaling between fibers not recovered"));
        });
      }
    }
  }
}

DifferenceOperator random_operator(int n, int N, Rng& rng) {
  std::vector<std::vector<Scalar>> c(n + 1);
  for (int l = 0; l <= n; ++l) c[l] = small_rationals(N, rng, l == n);
  return DifferenceOperator(n, N, c);
}

// 7. The discrete Wronskian does not depend on the evaluation point.
void wronskian_invariance(const Options& o, Rng& rng, Tally& tally) {
  for (int t = 0; t < count(o, 100); ++t) {
    const int n = 1 + t % cap(o, 4), N = 2 * n + 1 + t % 5;
    tally.guard(label("wronskian", n, t), [&] {
      const DifferenceOperator op = random_operator(n, N, rng);
      const SolutionWindow x = solve(op, 0, small_rationals(2 * n, rng, false), -20, 30);
      const SolutionWindow y = solve(op, 0, small_rationals(2 * n, rng, false), -20, 30);
      const Scalar w0 = wronskian(op, x, y, 0);
      bool same = true;
      for (long i : {-7L, -2L, 3L, 9L, 17L}) same = same && wronskian(op, x, y, i) == w0;
      tally.check(same, [&] { return label("Wronskian depends on i", n, t); });
      bool top = true;
      for (int j = 0; j < N; ++j) {
        const SolutionWindow vj = basis_solution(op, j, -20, 30), vjn = basis_solution(op, j - n, -20, 30);
        top = top && wronskian(op, vjn, vj, 2) == op.a(n, j).inverse();
      }
      tally.check(top, [&] { return label("W(V^{j-n}, V^j) != 1/a^n_j", n, t); });
    });
  }
}

// 8. Solutions of the three-term equation are continuants.
void sturm_liouville(const Options& o, Rng& rng, Tally& tally) {
  for (int t = 0; t < count(o, 50); ++t) {
    tally.guard(label("continuant bridge", 1, t), [&] {
      const std::vector<Scalar> a = small_rationals(21, rng, false);
      std::vector<Scalar> mid;
      for (const Scalar& s : a) mid.push_back(-s);
      const DifferenceOperator op(1, 21, {mid, std::vector<Scalar>(21, Scalar::rational(1))});
      const SolutionWindow v = solve(op, -2, {Scalar::rational(0), Scalar::rational(1)}, -1, 20);
      bool ok = true;
      for (int m = 0; m <= 20; ++m) ok = ok && v.at(m) == continuant(std::vector<Scalar>(a.begin(), a.begin() + m));
      tally.check(ok, [&] { return label("V_m differs from the continuant", 1, t); });
    });
  }
}

double worst(const std::vector<Scalar>& v) {
  double w = 0.0;
  for (const Scalar& s : v) w = std::max(w, s.abs());
  return w;
}

// 9. Gauss relations for pentagons, heptagons and nonagons.
void gauss_relations(const Options& o, Rng& rng, Tally& tally) {
  for (int n = 1; n <= cap(o, 3); ++n) {
    for (int t = 0; t < count(o, 50); ++t) {
      tally.guard(label("gauss", n, t), [&] {
        const bool complex = t % 2 == 1;
        const Configuration cfg = random_config(n, 2 * n + 3, rng.next_u64(),
                                                complex ? FieldKind::Complex : FieldKind::Rational, !complex);
        const MainDiagonals md = normalize_2n3(cfg);
        tally.check(worst(gauss_residuals(md.d, n)) < kTol, [&] { return label("main-diagonal residual", n, t); });
        const std::vector<Scalar> cr = gauss_cross_ratio_residuals(main_cross_ratios(cfg), n);
        bool cr_ok = true;
        for (const Scalar& r : cr) cr_ok = cr_ok && (r.is_rational() ? r.is_exact_zero() : r.abs() < kTol);
        tally.check(cr_ok, [&] { return label("cross-ratio residual", n, t); });
        if (n == 1)
          tally.check(pentagon_satisfied(md.d, FieldContext::complex(kTol)), [&] { return label("pentagon product", n, t); });
        const DifferenceOperator direct = operator_from_config(md.config);
        tally.check(approx_equal(gauss_operator(md.d, n), direct, FieldContext::complex(kTol)),
                    [&] { return label("closed-form coefficients differ", n, t); });
        tally.check(worst(gauss_residuals(md.d, direct)) < kTol, [&] { return label("operator residual", n, t); });
      });
    }
  }
}

// 10. N = 2n and 2n + 1 reduce to canonical forms; two sign classes over the reals.
void trivial_moduli(const Options& o, Rng& rng, Tally& tally) {
  for (int n = 1; n <= cap(o, 4); ++n) {
    for (int N : {2 * n, 2 * n + 1}) {
      std::set<int> classes;
      for (int t = 0; t < count(o, 50); ++t) {
        tally.guard(label("trivial, N=" + std::to_string(N), n, t), [&] {
          const Configuration sample = random_config(n, N, rng.next_u64(), FieldKind::Rational);
          int eps[2] = {0, 0};
          for (int side = 0; side < 2; ++side) {
            const Configuration cfg = side == 0 ? sample : opposite(sample);
            const TrivialClass tc = classify_trivial(cfg);
            const FieldContext ctx = tc.witness.kind() == FieldKind::Rational ? FieldContext{} : FieldContext::complex(kTol);
            tally.check(is_symplectic(tc.witness, ctx) && images_match(tc.witness, tc.rescaling, cfg, tc.canonical, false),
                        [&] { return label("witness fails, N=" + std::to_string(N), n, t); });
            if (N == 2 * n + 1) {
              // The class is read off the sign of the product of the subdiameters.
              Scalar p = Scalar::rational(1);
              for (int i = 0; i < N; ++i) p *= cfg.omega(i, i + n);
              tally.check(tc.epsilon == (p.q() > 0 ? 1 : -1),
                          [&] { return label("epsilon differs from the sign invariant", n, t); });
              classes.insert(tc.epsilon);
            }
            eps[side] = tc.epsilon;
          }
          if (N == 2 * n + 1)
            tally.check(eps[0] == -eps[1] && (eps[0] == 1 || eps[0] == -1),
                        [&] { return label("opposite stays in its class", n, t); });
        });
      }
      if (N == 2 * n + 1) tally.check(classes == std::set<int>{-1, 1}, [&] { return label("sign classes", n, 0); });
    }
  }
}

// 11. Branch counts of the normalizations.
void normalization_counts(const Options& o, Rng& rng, Tally& tally) {
  for (int n = 1; n <= cap(o, 4); ++n) {
    const int N = 2 * n + 2;
    for (int t = 0; t < count(o, 10); ++t) {
      tally.guard(label("normalization count", n, t), [&] {
        if (n % 2 == 0) {
          const Configuration cx = random_config(n, N, rng.next_u64(), FieldKind::Complex, false);
          const Configuration re = random_config(n, N, rng.next_u64(), FieldKind::Rational);
          const std::size_t a = enumerate_normalizations(cx, NormalizationScheme::EvenComplex).size();
          const std::size_t b = enumerate_normalizations(re, NormalizationScheme::EvenReal).size();
          tally.check(a == 4, [&] { return label("even_complex count " + std::to_string(a), n, t); });
          tally.check(b == 4, [&] { return label("even_real count " + std::to_string(b), n, t); });
        } else {
          const Configuration cx = random_config(n, N, rng.next_u64(), FieldKind::Complex, false);
          const std::size_t c = enumerate_normalizations(cx, NormalizationScheme::OddComplex).size();
          tally.check(c == static_cast<std::size_t>(N), [&] { return label("odd_complex count " + std::to_string(c), n, t); });
        }
      });
    }
  }
}

struct Criterion {
  const char* title;
  void (*body)(const Options&, Rng&, Tally&);
};

const Criterion kTable[kCriteria] = {
    {"relation identity on diametric cross-ratios", relation_identity},
    {"construction round trip", round_trip},
    {"equivalence completeness and opposites", completeness},
    {"Pfaffian machinery", pfaffians},
    {"cyclic continuant of normalized diameters", continuant_theorem},
    {"operator correspondence", operator_correspondence},
    {"Wronskian invariance", wronskian_invariance},
    {"Sturm-Liouville solutions are continuants", sturm_liouville},
    {"Gauss relations", gauss_relations},
    {"trivial moduli", trivial_moduli},
    {"normalization branch counts", normalization_counts},
};

}  // namespace

Result run_criterion(int id, const Options& opts) {
  if (id < 1 || id > kCriteria) throw Error(ErrorCode::RangeError, "no acceptance criterion " + std::to_string(id));
  const Criterion& c = kTable[id - 1];
  Result r;
  r.id = id;
  r.title = c.title;
  Rng rng = Rng(opts.seed).split(static_cast<std::uint64_t>(id));
  Tally tally;
  const auto start = std::chrono::steady_clock::now();
  tally.guard(c.title, [&] { c.body(opts, rng, tally); });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.checks = tally.checks();
  r.failures = tally.failures();
  r.pass = tally.failures() == 0 && tally.checks() > 0;
  if (r.failures > 0) {
    r.detail = tally.first();
  } else {
    std::ostringstream s;
    s << r.checks << " checks";
    r.detail = s.str();
  }
  return r;
}

std::vector<Result> run_all(const Options& opts, const std::vector<int>& ids_in) {
  std::vector<int> ids = ids_in;
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  std::vector<Result> out(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < ids.size(); k = next++) out[k] = run_criterion(ids[k], opts);
  };
  const int jobs = std::clamp(opts.jobs, 1, static_cast<int>(ids.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return out;
}

}  // namespace lagcfg::acceptance
