#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "pberg/errors.hpp"
#include "pberg/numerics.hpp"
#include "pberg/verify.hpp"

namespace pberg {

VerificationReport make_report(std::string check, double p, std::string domain,
                               std::vector<Complex> points, double lhs, double rhs,
                               double tolerance, std::string note) {
  VerificationReport r;
  r.check = std::move(check);
  r.p = p;
  r.domain = std::move(domain);
  r.points = std::move(points);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.verdict = r.margin >= -tolerance ? Verdict::Pass : Verdict::Fail;
  r.note = std::move(note);
  return r;
}

VerificationReport make_degenerate(std::string check, double p, std::string domain,
                                   std::vector<Complex> points, double lhs,
                                   std::string note) {
  VerificationReport r;
  r.check = std::move(check);
  r.p = p;
  r.domain = std::move(domain);
  r.points = std::move(points);
  r.lhs = lhs;
  r.rhs = lhs;
  r.margin = 0.0;
  r.tolerance = 0.0;
  r.verdict = Verdict::Degenerate;
  r.note = std::move(note);
  return r;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Degenerate:
      return "degenerate";
  }
  return "?";
}

std::string reports_to_jsonl(const std::vector<VerificationReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    nlohmann::json j;
    j["check"] = r.check;
    j["p"] = r.p;
    j["domain"] = r.domain;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& z : r.points) pts.push_back({z.real(), z.imag()});
    j["points"] = pts;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["tolerance"] = r.tolerance;
    j["verdict"] = verdict_name(r.verdict);
    j["note"] = r.note;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string reports_summary(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  int pass = 0, fail = 0, degen = 0;
  for (const auto& r : reports) {
    switch (r.verdict) {
      case Verdict::Pass:
        ++pass;
        break;
      case Verdict::Fail:
        ++fail;
        break;
      case Verdict::Degenerate:
        ++degen;
        break;
    }
  }
  os << "check                              p       margin        tol     verdict\n";
  os << "------------------------------------------------------------------------\n";
  char line[160];
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Pass) continue;  // table shows only exceptions
    std::snprintf(line, sizeof(line), "%-32s %5.3g %12.4e %10.2e  %-10s %s\n",
                  r.check.c_str(), r.p, r.margin, r.tolerance,
                  verdict_name(r.verdict).c_str(), r.note.c_str());
    os << line;
  }
  std::snprintf(line, sizeof(line), "total %zu: %d pass, %d fail, %d degenerate\n",
                reports.size(), pass, fail, degen);
  os << line;
  return os.str();
}

int count_failures(const std::vector<VerificationReport>& reports) {
  int n = 0;
  for (const auto& r : reports)
    if (r.verdict == Verdict::Fail) ++n;
  return n;
}

AppendixConstants appendix_constants(double p) {
  if (!(p > 2.0)) throw ParameterError("appendix_constants: requires p > 2");
  const double tol = 1e-13;
  const double I1 = adaptive_integrate(
      [p](double t) { return (1.0 - t) * std::pow(0.5 - t, p - 2.0); }, 0.0, 0.25, tol);
  const double I2 = adaptive_integrate(
      [p](double t) { return (1.0 - t) * std::pow(t - 0.5, p - 2.0); }, 0.75, 1.0, tol);
  AppendixConstants c;
  c.p = p;
  c.I1 = I1;
  c.I2 = I2;
  c.c_p = p * std::min(I1, I2);
  c.C_p = p * (p - 1.0) * std::pow(3.0, (p - 2.0) / p) / 2.0;
  return c;
}

std::array<VerificationReport, 2> check_main_inequality(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, const Point& z, const CoefFunction& f,
    double tolerance, const SolverOptions& solver, const PhaseSearchOptions& phase) {
  if (!(p > 2.0)) throw ParameterError("check_main_inequality: requires p > 2");
  const double fnorm = lp_norm(f, rule, p);
  if (std::abs(fnorm - 1.0) > 1e-8)
    throw ParameterError("check_main_inequality: f must have unit p-norm");

  const MinimizerSolution sol = solve_minimizer(domain, basis, rule, p, z, solver);
  const PhaseMinimum pm = projective_distance_values(values_at_nodes(sol.minimizer),
                                                     values_at_nodes(f), rule, p, phase);
  const double d = pm.distance;
  const double middle = 1.0 - std::abs(evaluate(f, z)) * sol.m_value;
  const AppendixConstants c = appendix_constants(p);

  std::vector<Complex> pts(z.data(), z.data() + z.size());
  return {make_report("main-inequality-lower", p, domain_name(domain), pts,
                      c.c_p * std::pow(d, p), middle, tolerance),
          make_report("main-inequality-upper", p, domain_name(domain), pts, middle,
                      c.C_p * d * d, tolerance)};
}

VerificationReport check_application_inequality(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, const Point& z, const Point& w,
    double tolerance, const SolverOptions& solver, const PhaseSearchOptions& phase) {
  if (!(p > 2.0)) throw ParameterError("check_application_inequality: requires p > 2");

  double m_zw_abs, m_w, m_z;
  if (domain.is_disk()) {
    m_zw_abs = std::abs(disk_closed_form(z(0), w(0), p));
    m_w = disk_closed_form_mass(w(0), p);
    m_z = disk_closed_form_mass(z(0), p);
  } else {
    const MinimizerSolution sw = solve_minimizer(domain, basis, rule, p, w, solver);
    const MinimizerSolution sz = solve_minimizer(domain, basis, rule, p, z, solver);
    m_zw_abs = std::abs(evaluate(sw.minimizer, z));
    m_w = sw.m_value;
    m_z = sz.m_value;
  }
  const double rho = skw_distance(domain, basis, rule, p, z, w, solver, phase).rho;
  const double rhs =
      (m_w / m_z) * (1.0 - std::pow(rho, p) / (p * std::pow(4.0, p + 3.0)));

  std::vector<Complex> pts;
  for (Eigen::Index i = 0; i < z.size(); ++i) pts.push_back(z(i));
  for (Eigen::Index i = 0; i < w.size(); ++i) pts.push_back(w(i));
  return make_report("application-inequality", p, domain_name(domain), pts, m_zw_abs,
                     rhs, tolerance);
}

std::array<VerificationReport, 2> check_invariance(
    const std::shared_ptr<const Basis>& basis, const QuadratureRule& rule, double p,
    Complex z, Complex w, Complex mobius_a, double rotation, double distance_tolerance,
    double law_tolerance, const SolverOptions& solver, const PhaseSearchOptions& phase) {
  if (!rule.domain.is_disk())
    throw ParameterError("check_invariance: disk domain required");
  if (std::abs(mobius_a) >= 1.0)
    throw ParameterError("check_invariance: |a| must be < 1");

  const Complex rot = std::polar(1.0, rotation);
  const auto mobius = [&](Complex zeta) {
    return rot * (zeta - mobius_a) / (1.0 - std::conj(mobius_a) * zeta);
  };
  const auto jacobian = [&](Complex zeta) {
    const Complex den = 1.0 - std::conj(mobius_a) * zeta;
    return rot * (1.0 - std::norm(mobius_a)) / (den * den);
  };

  const Domain domain = rule.domain;
  const Complex fz = mobius(z), fw = mobius(w);
  const auto [uz, mz] = normalized_minimizer_values(domain, basis, rule, p, point1(z), solver);
  const auto [uw, mw] = normalized_minimizer_values(domain, basis, rule, p, point1(w), solver);
  const auto [ufz, mfz] =
      normalized_minimizer_values(domain, basis, rule, p, point1(fz), solver);
  const auto [ufw, mfw] =
      normalized_minimizer_values(domain, basis, rule, p, point1(fw), solver);

  const double rho = projective_distance_values(uz, uw, rule, p, phase).distance;
  const double rho_f = projective_distance_values(ufz, ufw, rule, p, phase).distance;

  // m_p(w) = m_p(F(w)) |J_F(w)|^{-2/p}
  const double law_rhs = mfw * std::pow(std::abs(jacobian(w)), -2.0 / p);
  const double law_err = std::abs(mw - law_rhs) / mw;

  std::vector<Complex> pts{z, w, mobius_a, Complex(rotation, 0.0)};
  return {make_report("rho-invariance", p, "disk", pts, std::abs(rho - rho_f), 0.0,
                      distance_tolerance),
          make_report("mass-transformation", p, "disk", pts, law_err, 0.0,
                      law_tolerance)};
}

std::vector<VerificationReport> check_holder(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, Complex z0, double radius, int n_pairs,
    std::uint64_t seed, const SolverOptions& solver, const PhaseSearchOptions& phase) {
  if (!(p > 1.0)) throw ParameterError("check_holder: requires p > 1");
  if (!domain.contains(point1(z0), radius))
    throw ParameterError("check_holder: ball not compactly inside domain");

  const double alpha = p > 2.0 ? 1.0 / p : 0.5;
  const std::vector<double> separations{1e-2, 1e-3, 1e-4};
  Rng rng(seed);

  std::vector<VerificationReport> reports;
  std::vector<double> bound;
  for (double sep : separations) {
    double worst = 0.0;
    for (int i = 0; i < n_pairs; ++i) {
      const double rr = 0.7 * radius * std::sqrt(rng.uniform());
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      const Complex z = z0 + std::polar(rr, phi);
      const Complex w = z + std::polar(sep, rng.uniform(0.0, 2.0 * M_PI));
      if (z == w) {
        reports.push_back(make_degenerate("holder-ratio", p, domain_name(domain),
                                          {z, w}, 0.0, "coincident pair skipped"));
        continue;
      }
      const double rho =
          skw_distance(domain, basis, rule, p, point1(z), point1(w), solver, phase).rho;
      worst = std::max(worst, rho / std::pow(sep, alpha));
    }
    bound.push_back(worst);
    std::ostringstream note;
    note << "separation=" << sep << " alpha=" << alpha;
    reports.push_back(make_degenerate("holder-ratio", p, domain_name(domain), {z0},
                                      worst, note.str()));
  }
  // Separation drops 10x per step = log2(10) halvings; allow 2x per halving.
  for (std::size_t j = 0; j + 1 < bound.size(); ++j) {
    std::ostringstream note;
    note << "scale " << separations[j] << " -> " << separations[j + 1];
    reports.push_back(make_report("holder-growth", p, domain_name(domain), {z0},
                                  bound[j + 1], 10.0 * bound[j], 1e-9, note.str()));
  }
  return reports;
}

std::vector<VerificationReport> boundary_diagnostics(
    double p, Complex z, int k_max, double final_threshold, const CoefFunction* f,
    const std::shared_ptr<const Basis>& basis, const QuadratureRule* rule,
    const SolverOptions& solver) {
  if (std::abs(z) >= 1.0)
    throw ParameterError("boundary_diagnostics: z must lie in the unit disk");
  if (k_max < 1) throw ParameterError("boundary_diagnostics: k_max >= 1");

  std::vector<double> r_min(k_max + 1, 0.0), r_fun(k_max + 1, 0.0);
  std::vector<VerificationReport> reports;
  for (int k = 1; k <= k_max; ++k) {
    const double wk = 1.0 - std::pow(2.0, -k);
    const double mass = disk_closed_form_mass(wk, p);
    r_min[k] = std::abs(disk_closed_form(z, wk, p)) / mass;
    double fwk_abs;
    if (f) {
      fwk_abs = std::abs(evaluate(*f, point1(wk)));
    } else {
      fwk_abs = std::pow(M_PI, -1.0 / p);  // unit-norm constant
    }
    // |f(w_k)|^p / K_p(w_k) with K_p = mass^-p.
    r_fun[k] = std::pow(fwk_abs * mass, p);

    std::ostringstream note;
    note << "k=" << k << " w_k=" << wk;
    if (k <= 3) {
      reports.push_back(
          make_degenerate("boundary-minimizer-ratio", p, "disk", {z}, r_min[k], note.str()));
      reports.push_back(
          make_degenerate("boundary-function-ratio", p, "disk", {z}, r_fun[k], note.str()));
    } else {
      reports.push_back(make_report("boundary-minimizer-ratio", p, "disk", {z},
                                    r_min[k], r_min[k - 1], 0.0, note.str()));
      reports.push_back(make_report("boundary-function-ratio", p, "disk", {z},
                                    r_fun[k], r_fun[k - 1], 0.0, note.str()));
    }
  }
  reports.push_back(make_report("boundary-minimizer-ratio-final", p, "disk", {z},
                                r_min[k_max], final_threshold, 0.0));
  reports.push_back(make_report("boundary-function-ratio-final", p, "disk", {z},
                                r_fun[k_max], final_threshold, 0.0));

  if (basis && rule) {
    for (int k = 1; k <= std::min(2, k_max); ++k) {
      const double wk = 1.0 - std::pow(2.0, -k);
      const MinimizerSolution sol =
          solve_minimizer(rule->domain, basis, *rule, p, point1(wk), solver);
      const double num = std::abs(evaluate(sol.minimizer, point1(z))) / sol.m_value;
      std::ostringstream note;
      note << "k=" << k << " solver vs closed form";
      reports.push_back(make_report("boundary-solver-crosscheck", p, "disk", {z},
                                    std::abs(num - r_min[k]) / r_min[k], 0.0, 1e-3,
                                    note.str()));
    }
  }
  return reports;
}

std::vector<VerificationReport> p_continuity_sweep(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, const Point& z, const Point& w, double p_center,
    const std::vector<double>& q_grid, double gap_tolerance,
    const SolverOptions& solver, const PhaseSearchOptions& phase) {
  for (double q : q_grid)
    if (q < 1.0) throw ParameterError("p_continuity_sweep: all q must be >= 1");

  const double rho_c =
      skw_distance(domain, basis, rule, p_center, z, w, solver, phase).rho;

  std::vector<std::pair<double, double>> below, above;  // (q, gap)
  std::vector<VerificationReport> reports;
  std::vector<Complex> pts;
  for (Eigen::Index i = 0; i < z.size(); ++i) pts.push_back(z(i));
  for (Eigen::Index i = 0; i < w.size(); ++i) pts.push_back(w(i));

  for (double q : q_grid) {
    const double rho_q =
        q == p_center ? rho_c
                      : skw_distance(domain, basis, rule, q, z, w, solver, phase).rho;
    const double gap = std::abs(rho_q - rho_c);
    std::ostringstream note;
    note << "q=" << q << " rho_p=" << rho_c << " (lhs=gap, rhs=rho_q)";
    VerificationReport data =
        make_degenerate("p-continuity-gap", q, domain_name(domain), pts, gap, note.str());
    data.rhs = rho_q;
    reports.push_back(std::move(data));
    if (q < p_center) below.emplace_back(q, gap);
    if (q > p_center) above.emplace_back(q, gap);
  }
  std::sort(below.begin(), below.end());
  std::sort(above.begin(), above.end());

  // Below p: gaps must shrink as q increases toward p.
  for (std::size_t i = 0; i + 1 < below.size(); ++i) {
    std::ostringstream note;
    note << "q " << below[i].first << " -> " << below[i + 1].first;
    reports.push_back(make_report("p-continuity-monotone", p_center,
                                  domain_name(domain), pts, below[i + 1].second,
                                  below[i].second, 1e-9, note.str()));
  }
  // Above p: gaps must shrink as q decreases toward p.
  for (std::size_t i = 0; i + 1 < above.size(); ++i) {
    std::ostringstream note;
    note << "q " << above[i + 1].first << " -> " << above[i].first;
    reports.push_back(make_report("p-continuity-monotone", p_center,
                                  domain_name(domain), pts, above[i].second,
                                  above[i + 1].second, 1e-9, note.str()));
  }
  double nearest = 0.0;
  if (!below.empty()) nearest = std::max(nearest, below.back().second);
  if (!above.empty()) nearest = std::max(nearest, above.front().second);
  reports.push_back(make_report("p-continuity-final-gap", p_center,
                                domain_name(domain), pts, nearest, gap_tolerance, 0.0));
  return reports;
}

namespace {

double weighted_power_term(Complex a, Complex other, double p) {
  const double mag = std::abs(a);
  if (mag == 0.0) return 0.0;
  return std::pow(mag, p - 2.0) * (std::conj(a) * other).real();
}

}  // namespace

std::vector<VerificationReport> check_taylor_inequalities(Complex a, Complex b,
                                                          double p, double tolerance) {
  if (p < 1.0) throw ParameterError("check_taylor_inequalities: requires p >= 1");

  const Complex diff = b - a;
  const double d2 = std::norm(diff);

  double J = 0.0;
  bool divergent = false;
  if (d2 > 0.0) {
    const auto integrand = [&](double t) {
      const Complex v = a + t * diff;
      return (1.0 - t) * std::pow(std::norm(v), 0.5 * (p - 2.0)) * d2;
    };
    // Vertex of |a + t(b-a)|^2 = d2 (t - t*)^2 + q_min (t* unclamped).
    const double t_star = -(std::conj(a) * diff).real() / d2;
    const double q_min = std::norm(a + t_star * diff);
    const double t_near = std::clamp(t_star, 0.0, 1.0);
    const double q_near = std::norm(a + t_near * diff);
    if (t_star >= 0.0 && t_star <= 1.0 && q_min <= 1e-28 * d2) {
      // Segment passes through 0: |a + t(b-a)| = |t - t*| |b-a|, and the
      // t-integral has the closed form below (divergent exactly at p = 1).
      if (p == 1.0) {
        divergent = true;
      } else {
        const double left = (1.0 - t_star) * std::pow(t_star, p - 1.0) / (p - 1.0) +
                            std::pow(t_star, p) / p;
        const double right = std::pow(1.0 - t_star, p) / (p * (p - 1.0));
        J = std::pow(d2, 0.5 * p) * (left + right);
      }
    } else if (p < 2.0 && q_near < 1e-2 * d2) {
      // Near-crossing with a negative exponent: the dip width sqrt(q_min/d2)
      // can be arbitrarily small. Substituting t = t* + delta sinh(s) turns
      // the integrand into the smooth (1 - t(s)) cosh(s)^{p-1}, uniformly
      // cheap at any dip depth.
      const double q_reg = std::max(q_min, 1e-30 * d2);
      const double delta = std::sqrt(q_reg / d2);
      const double prefactor = d2 * std::pow(q_reg, 0.5 * (p - 2.0)) * delta;
      const auto smooth = [&](double s) {
        const double t = t_star + delta * std::sinh(s);
        return (1.0 - t) * std::pow(std::cosh(s), p - 1.0);
      };
      const double s0 = std::asinh((0.0 - t_star) / delta);
      const double s1 = std::asinh((1.0 - t_star) / delta);
      J = prefactor * adaptive_integrate(smooth, s0, s1, 5e-14 / prefactor);
    } else if (t_star > 0.0 && t_star < 1.0) {
      // Interior dip: split so the minimum sits at an endpoint.
      J = adaptive_integrate(integrand, 0.0, t_star, 5e-14) +
          adaptive_integrate(integrand, t_star, 1.0, 5e-14);
    } else {
      J = adaptive_integrate(integrand, 0.0, 1.0, 1e-13);
    }
  }

  const double ap = std::pow(std::abs(a), p);
  const double bp = std::pow(std::abs(b), p);
  const double linear = p * weighted_power_term(a, diff, p);
  const double lo = p * std::min(1.0, p - 1.0) * J;
  const double hi = p * std::max(1.0, p - 1.0) * J;

  std::vector<VerificationReport> out;
  out.push_back(make_report("taylor-lower", p, "scalar", {a, b}, ap + linear + lo, bp, tolerance));
  if (divergent) {
    out.push_back(make_degenerate("taylor-upper", p, "scalar", {a, b}, bp,
                                  "t-integral diverges at p = 1 with a zero crossing"));
  } else {
    out.push_back(make_report("taylor-upper", p, "scalar", {a, b}, bp, ap + linear + hi, tolerance));
  }

  if (p >= 2.0) {
    const double cross = weighted_power_term(b, a, p) + weighted_power_term(a, b, p);
    out.push_back(make_report("pointwise-diff-upper", p, "scalar", {a, b}, std::pow(d2, 0.5 * p),
                              std::pow(2.0, p - 1.0) * (bp + ap - cross), tolerance));
  } else if (p > 1.0) {
    const double cross = weighted_power_term(b, a, p) + weighted_power_term(a, b, p);
    const double sum_mag = std::abs(a) + std::abs(b);
    const double lhs =
        d2 == 0.0 ? 0.0 : (p - 1.0) * d2 * std::pow(sum_mag, p - 2.0);
    out.push_back(
        make_report("pointwise-diff-lower", p, "scalar", {a, b}, lhs, bp + ap - cross, tolerance));
  }
  return out;
}

}  // namespace pberg
