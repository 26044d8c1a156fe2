#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "pberg/errors.hpp"
#include "pberg/numerics.hpp"
#include "pberg/verify.hpp"

namespace pberg {

namespace {

struct Env {
  QuadratureRule rule;
  std::shared_ptr<const Basis> basis;
};

Env make_env(const VerifyOptions& o) {
  Env e;
  e.rule = build_quadrature(o.domain, o.radial, o.angular);
  e.basis = Basis::standard(e.rule, o.degree);
  return e;
}

VerifyOptions doubled(const VerifyOptions& o) {
  VerifyOptions d = o;
  d.radial *= 2;
  d.angular *= 2;
  return d;
}

using CaseFn =
    std::function<std::vector<VerificationReport>(const Env&, const VerifyOptions&)>;

/// Runs independent cases; a case whose reports fail is re-run once at
/// doubled quadrature resolution (same tolerances) before its verdicts stand.
std::vector<VerificationReport> run_cases(const std::vector<CaseFn>& cases,
                                          const VerifyOptions& opts) {
  Env env = make_env(opts);
  std::optional<Env> env_hi;
  const VerifyOptions opts_hi = doubled(opts);

  std::vector<VerificationReport> all;
  for (const auto& c : cases) {
    auto reps = c(env, opts);
    if (count_failures(reps) > 0 && opts.retry_doubled) {
      if (!env_hi) env_hi = make_env(opts_hi);
      reps = c(*env_hi, opts_hi);
      for (auto& r : reps) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "retried at doubled resolution";
      }
    }
    all.insert(all.end(), reps.begin(), reps.end());
  }
  return all;
}

std::vector<double> ps_or(const VerifyOptions& o, std::vector<double> def) {
  if (!o.ps.empty()) return o.ps;
  return def;
}

int count_or(const VerifyOptions& o, int def) { return o.count > 0 ? o.count : def; }

std::uint64_t suite_seed(const VerifyOptions& o, std::uint64_t salt) {
  return o.seed ^ (salt * 0x9e3779b97f4a7c15ULL);
}

/// Random element of the truncated space with geometrically decaying
/// coefficients, normalized to unit p-norm against the given rule.
CoefFunction random_unit_function(const std::shared_ptr<const Basis>& basis,
                                  const QuadratureRule& rule, double p, Rng& rng,
                                  double decay = 0.6) {
  Eigen::VectorXcd c(basis->size());
  double scale = 1.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    c(k) = Complex(rng.normal(), rng.normal()) * scale;
    scale *= decay;
  }
  CoefFunction f{basis, std::move(c)};
  f.coef /= lp_norm(f, rule, p);
  return f;
}

void require_disk(const VerifyOptions& o, const char* suite) {
  if (!o.domain.is_disk())
    throw ParameterError(std::string(suite) + " suite requires the disk domain");
}

/// Point compactly inside the domain, away from realized-basis trouble near
/// the boundary.
Point random_point(const Domain& d, Rng& rng) {
  switch (d.kind()) {
    case Domain::Kind::Disk:
      return point1(rng.uniform_disk(0.55));
    case Domain::Kind::Annulus: {
      const double r0 = d.inner_radius();
      const double radius = r0 + (1.0 - r0) * rng.uniform(0.25, 0.75);
      return point1(std::polar(radius, rng.uniform(0.0, 2.0 * M_PI)));
    }
    case Domain::Kind::Product: {
      const Point l = random_point(d.left(), rng);
      const Point r = random_point(d.right(), rng);
      Point out(l.size() + r.size());
      out << l, r;
      return out;
    }
  }
  throw ParameterError("random_point: unknown domain kind");
}

// ---- individual suites -------------------------------------------------

std::vector<VerificationReport> taylor_suite(const VerifyOptions& opts) {
  const auto ps = ps_or(opts, {1.5, 2.0, 3.0, 4.7});
  const int count = count_or(opts, 1000);
  Rng rng(suite_seed(opts, 1));
  std::vector<VerificationReport> all;
  for (double p : ps) {
    for (int i = 0; i < count; ++i) {
      const Complex a = rng.uniform_disk(2.0);
      const Complex b = rng.uniform_disk(2.0);
      auto reps = check_taylor_inequalities(a, b, p, 1e-10);
      all.insert(all.end(), reps.begin(), reps.end());
    }
  }
  return all;
}

std::vector<VerificationReport> constants_suite(const VerifyOptions&) {
  std::vector<VerificationReport> all;
  std::vector<double> grid;
  for (double p = 2.05; p <= 10.0 + 1e-12; p += 0.25) grid.push_back(p);

  std::optional<AppendixConstants> prev;
  for (double p : grid) {
    const AppendixConstants c = appendix_constants(p);
    all.push_back(make_report("appendix-cp-positive", p, "scalar", {}, 0.0, c.c_p, 0.0));
    all.push_back(make_report("appendix-Cp-positive", p, "scalar", {}, 0.0, c.C_p, 0.0));
    if (prev) {
      const double dp = p - prev->p;
      all.push_back(make_report("appendix-cp-continuity", p, "scalar", {},
                                std::abs(c.c_p - prev->c_p), 1.0 * dp, 0.0));
      all.push_back(make_report("appendix-Cp-continuity", p, "scalar", {},
                                std::abs(c.C_p - prev->C_p), 30.0 * dp, 0.0));
    }
    // Two-sided consistency on the full distance range: c_p x^p <= C_p x^2.
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = 2.0 * i / 40.0;
      worst = std::max(worst, c.c_p * std::pow(x, p) - c.C_p * x * x);
    }
    all.push_back(make_report("two-sided-consistency", p, "scalar", {}, worst, 0.0, 0.0));
    prev = c;
  }
  return all;
}

std::vector<VerificationReport> metric_axioms_suite(const VerifyOptions& opts) {
  const auto ps = ps_or(opts, {1.5, 2.0, 4.0});
  const int n_triples = count_or(opts, 1000);
  const int pool_n = 48;

  Rng rng(suite_seed(opts, 2));
  std::vector<Point> pool;
  pool.reserve(pool_n);
  for (int i = 0; i < pool_n; ++i) pool.push_back(random_point(opts.domain, rng));
  std::vector<std::array<int, 3>> triples(n_triples);
  for (auto& t : triples) {
    t[0] = static_cast<int>(rng.next_u64() % pool_n);
    do t[1] = static_cast<int>(rng.next_u64() % pool_n);
    while (t[1] == t[0]);
    do t[2] = static_cast<int>(rng.next_u64() % pool_n);
    while (t[2] == t[0] || t[2] == t[1]);
  }

  std::vector<VerificationReport> all;
  const std::string dname = domain_name(opts.domain);
  Env env = make_env(opts);
  std::optional<Env> env_hi;

  for (double p : ps) {
    std::map<int, std::pair<Eigen::VectorXcd, double>> ucache;
    const auto values = [&](int i) -> const Eigen::VectorXcd& {
      auto it = ucache.find(i);
      if (it == ucache.end())
        it = ucache
                 .emplace(i, normalized_minimizer_values(opts.domain, env.basis, env.rule,
                                                         p, pool[i], opts.solver))
                 .first;
      return it->second.first;
    };
    std::map<std::pair<int, int>, double> dcache;
    const auto rho = [&](int i, int j) {
      const auto key = std::make_pair(i, j);
      auto it = dcache.find(key);
      if (it == dcache.end()) {
        const double d =
            projective_distance_values(values(i), values(j), env.rule, p, opts.phase)
                .distance;
        it = dcache.emplace(key, d).first;
      }
      return it->second;
    };

    // Full re-solve of one triple, typically at the doubled resolution.
    const auto triple_fresh = [&](const Env& e, int i, int j, int k,
                                  std::vector<VerificationReport>& out,
                                  const std::string& note) {
      const auto ui = normalized_minimizer_values(opts.domain, e.basis, e.rule, p,
                                                  pool[i], opts.solver).first;
      const auto uj = normalized_minimizer_values(opts.domain, e.basis, e.rule, p,
                                                  pool[j], opts.solver).first;
      const auto uk = normalized_minimizer_values(opts.domain, e.basis, e.rule, p,
                                                  pool[k], opts.solver).first;
      const double dij = projective_distance_values(ui, uj, e.rule, p, opts.phase).distance;
      const double dji = projective_distance_values(uj, ui, e.rule, p, opts.phase).distance;
      const double djk = projective_distance_values(uj, uk, e.rule, p, opts.phase).distance;
      const double dik = projective_distance_values(ui, uk, e.rule, p, opts.phase).distance;
      std::vector<Complex> pts;
      for (int idx : {i, j, k})
        for (Eigen::Index c = 0; c < pool[idx].size(); ++c) pts.push_back(pool[idx](c));
      out.push_back(make_report("metric-symmetry", p, dname, pts, std::abs(dij - dji),
                                0.0, 1e-9, note));
      out.push_back(
          make_report("metric-triangle", p, dname, pts, dik, dij + djk, 1e-8, note));
    };

    for (const auto& t : triples) {
      std::vector<VerificationReport> reps;
      const double dij = rho(t[0], t[1]);
      const double dji = rho(t[1], t[0]);
      const double djk = rho(t[1], t[2]);
      const double dik = rho(t[0], t[2]);
      std::vector<Complex> pts;
      for (int idx : t)
        for (Eigen::Index c = 0; c < pool[idx].size(); ++c) pts.push_back(pool[idx](c));
      reps.push_back(
          make_report("metric-symmetry", p, dname, pts, std::abs(dij - dji), 0.0, 1e-9));
      reps.push_back(make_report("metric-triangle", p, dname, pts, dik, dij + djk, 1e-8));
      if (count_failures(reps) > 0 && opts.retry_doubled) {
        reps.clear();
        if (!env_hi) env_hi = make_env(doubled(opts));
        triple_fresh(*env_hi, t[0], t[1], t[2], reps, "retried at doubled resolution");
      }
      all.insert(all.end(), reps.begin(), reps.end());
    }

    for (const auto& [i, uv] : ucache) {
      const double dii =
          projective_distance_values(uv.first, uv.first, env.rule, p, opts.phase).distance;
      std::vector<Complex> pts;
      for (Eigen::Index c = 0; c < pool[i].size(); ++c) pts.push_back(pool[i](c));
      all.push_back(make_report("metric-identity", p, dname, pts, dii, 0.0, 1e-8));
    }
  }
  return all;
}

std::vector<VerificationReport> main_inequality_suite(const VerifyOptions& opts) {
  const auto ps = ps_or(opts, {3.0, 4.0});
  const int count = count_or(opts, 50);
  Rng rng(suite_seed(opts, 3));

  std::vector<CaseFn> cases;
  for (double p : ps) {
    for (int i = 0; i < count; ++i) {
      const Complex z = rng.uniform_disk(0.5);
      std::vector<Complex> raw;
      double scale = 1.0;
      for (int k = 0; k < 25; ++k) {  // padded/truncated to the basis size
        raw.push_back(Complex(rng.normal(), rng.normal()) * scale);
        scale *= 0.6;
      }
      cases.push_back([p, z, raw](const Env& env, const VerifyOptions& o) {
        Eigen::VectorXcd c(env.basis->size());
        for (Eigen::Index k = 0; k < c.size(); ++k)
          c(k) = k < static_cast<Eigen::Index>(raw.size()) ? raw[k] : Complex(0.0);
        CoefFunction f{env.basis, std::move(c)};
        f.coef /= lp_norm(f, env.rule, p);
        auto pair = check_main_inequality(o.domain, env.basis, env.rule, p, point1(z), f,
                                          o.tolerance, o.solver, o.phase);
        return std::vector<VerificationReport>{pair[0], pair[1]};
      });
    }
  }
  return run_cases(cases, opts);
}

std::vector<VerificationReport> application_suite(const VerifyOptions& opts) {
  const auto ps = ps_or(opts, {3.0});
  const int count = count_or(opts, 50);
  Rng rng(suite_seed(opts, 4));

  std::vector<CaseFn> cases;
  for (double p : ps) {
    for (int i = 0; i < count; ++i) {
      const Complex z = rng.uniform_disk(0.5);
      const Complex w = rng.uniform_disk(0.5);
      cases.push_back([p, z, w](const Env& env, const VerifyOptions& o) {
        return std::vector<VerificationReport>{
            check_application_inequality(o.domain, env.basis, env.rule, p, point1(z),
                                         point1(w), o.tolerance, o.solver, o.phase)};
      });
    }
  }
  return run_cases(cases, opts);
}

std::vector<VerificationReport> invariance_suite(const VerifyOptions& opts) {
  require_disk(opts, "invariance");
  const auto ps = ps_or(opts, {2.0, 4.0});
  const int count = count_or(opts, 10);
  Rng rng(suite_seed(opts, 5));

  std::vector<CaseFn> cases;
  for (int i = 0; i < count; ++i) {
    const Complex a = rng.uniform_disk(0.25);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const Complex z = rng.uniform_disk(0.35);
    const Complex w = rng.uniform_disk(0.35);
    for (double p : ps) {
      cases.push_back([p, a, phi, z, w](const Env& env, const VerifyOptions& o) {
        auto pair = check_invariance(env.basis, env.rule, p, z, w, a, phi, 1e-3, 1e-4,
                                     o.solver, o.phase);
        return std::vector<VerificationReport>{pair[0], pair[1]};
      });
    }
  }
  return run_cases(cases, opts);
}

std::vector<VerificationReport> holder_suite(const VerifyOptions& opts) {
  const auto ps = ps_or(opts, {4.0, 1.5});
  const int n_pairs = count_or(opts, 10);
  const std::uint64_t seed = suite_seed(opts, 6);

  std::vector<CaseFn> cases;
  for (double p : ps) {
    cases.push_back([p, n_pairs, seed](const Env& env, const VerifyOptions& o) {
      return check_holder(o.domain, env.basis, env.rule, p, Complex(0.0), 0.2, n_pairs,
                          seed, o.solver, o.phase);
    });
  }
  return run_cases(cases, opts);
}

std::vector<VerificationReport> boundary_suite(const VerifyOptions& opts) {
  require_disk(opts, "boundary");
  const auto ps = ps_or(opts, {2.0});
  std::vector<CaseFn> cases;
  for (double p : ps) {
    cases.push_back([p](const Env& env, const VerifyOptions& o) {
      const auto cross_basis =
          o.degree >= 32 ? env.basis : Basis::disk(env.rule, 32);
      return boundary_diagnostics(p, Complex(0.0), 8, 1e-2, nullptr, cross_basis,
                                  &env.rule, o.solver);
    });
  }
  return run_cases(cases, opts);
}

std::vector<VerificationReport> p_continuity_suite(const VerifyOptions& opts) {
  std::vector<CaseFn> cases;
  cases.push_back([](const Env& env, const VerifyOptions& o) {
    return p_continuity_sweep(o.domain, env.basis, env.rule, point1(Complex(0.0)),
                              point1(Complex(0.5)), 2.0,
                              {1.8, 1.9, 1.95, 2.05, 2.1, 2.2}, 0.05, o.solver, o.phase);
  });
  return run_cases(cases, opts);
}

std::vector<VerificationReport> reproducing_suite(const VerifyOptions& opts) {
  const auto ps = ps_or(opts, {1.5, 2.0, 3.0});
  const int count = count_or(opts, 10);
  const std::uint64_t seed = suite_seed(opts, 7);

  std::vector<CaseFn> cases;
  for (double p : ps) {
    for (Complex z0 : {Complex(0.0), Complex(0.3)}) {
      cases.push_back([p, z0, count, seed](const Env& env, const VerifyOptions& o) {
        Rng rng(seed ^ std::hash<double>{}(p + z0.real()));
        const MinimizerSolution sol =
            solve_minimizer(o.domain, env.basis, env.rule, p, point1(z0), o.solver);
        std::vector<VerificationReport> reps;
        for (int i = 0; i < count; ++i) {
          const CoefFunction f = random_unit_function(env.basis, env.rule, p, rng);
          const double res = reproducing_residual(f, sol, env.rule, point1(z0));
          std::ostringstream note;
          note << "test function " << i;
          reps.push_back(make_report("reproducing-residual", p, domain_name(o.domain),
                                     {z0}, res, 0.0, 1e-5, note.str()));
        }
        return reps;
      });
    }
  }
  return run_cases(cases, opts);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "taylor",     "constants",  "metric-axioms", "main-inequality",
      "application-inequality",   "invariance",    "holder",
      "boundary",   "p-continuity", "reproducing"};
  return names;
}

std::vector<VerificationReport> run_suite(const std::string& suite,
                                          const VerifyOptions& opts) {
  if (suite == "all") {
    std::vector<VerificationReport> all;
    for (const auto& name : suite_names()) {
      auto reps = run_suite(name, opts);
      all.insert(all.end(), reps.begin(), reps.end());
    }
    return all;
  }
  if (suite == "taylor") return taylor_suite(opts);
  if (suite == "constants") return constants_suite(opts);
  if (suite == "metric-axioms") return metric_axioms_suite(opts);
  if (suite == "main-inequality") return main_inequality_suite(opts);
  if (suite == "application-inequality") return application_suite(opts);
  if (suite == "invariance") return invariance_suite(opts);
  if (suite == "holder") return holder_suite(opts);
  if (suite == "boundary") return boundary_suite(opts);
  if (suite == "p-continuity") return p_continuity_suite(opts);
  if (suite == "reproducing") return reproducing_suite(opts);

  std::string msg = "unknown suite '" + suite + "'; valid suites:";
  for (const auto& name : suite_names()) msg += " " + name;
  msg += " all";
  throw ParameterError(msg);
}

}  // namespace pberg
