#include "pberg/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pberg/distance.hpp"
#include "pberg/errors.hpp"
#include "pberg/verify.hpp"

namespace pberg {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ParameterError("cannot create output directory '" + dir + "'");
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << content;
  files.push_back(path);
}

std::string point_headers(const char* prefix, int dim) {
  std::string h;
  for (int i = 0; i < dim; ++i) {
    if (!h.empty()) h += ",";
    if (dim == 1) {
      h += std::string(prefix) + "_re," + prefix + "_im";
    } else {
      h += std::string(prefix) + std::to_string(i) + "_re," + prefix +
           std::to_string(i) + "_im";
    }
  }
  return h;
}

std::string point_csv(const Point& z) {
  std::string s;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!s.empty()) s += ",";
    s += g17(z(i).real()) + "," + g17(z(i).imag());
  }
  return s;
}

std::vector<double> ps_or_default(const RunConfig& c, std::vector<double> def) {
  if (!c.ps.empty()) return c.ps;
  return def;
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.domain = c.domain;
  o.degree = c.degree;
  o.radial = c.radial;
  o.angular = c.angular;
  o.solver = c.solver;
  o.seed = c.seed;
  o.count = c.count;
  o.ps = c.ps;
  o.tolerance = c.tolerance;
  return o;
}

}  // namespace

CommandResult cmd_kernel(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config.out_dir);
  const auto ps = ps_or_default(config, {2.0});

  const QuadratureRule rule = build_quadrature(config.domain, config.radial, config.angular);
  const auto basis = Basis::standard(rule, config.degree);

  std::ostringstream csv;
  csv << "p," << point_headers("z", config.domain.dimension())
      << ",m_value,K_p,iterations,gradient_residual,smoothing_final,status\n";
  std::string coef_dump;
  int errors = 0;

  for (double p : ps) {
    for (const auto& z0 : config.points) {
      MinimizerSolution sol;
      std::string status = "ok";
      try {
        sol = solve_minimizer(config.domain, basis, rule, p, z0, config.solver);
        if (sol.smoothed) status = "smoothed";
      } catch (const ConvergenceError& e) {
        sol = e.best();
        sol.z0 = z0;
        status = "convergence-error";
        ++errors;
      }
      csv << g17(p) << "," << point_csv(z0) << "," << g17(sol.m_value) << ","
          << g17(kernel_diag(sol)) << "," << sol.iterations << ","
          << g17(sol.gradient_residual) << "," << g17(sol.smoothing_final) << ","
          << status << "\n";
      if (config.dump_coefficients && sol.minimizer.basis) {
        coef_dump += solution_to_json(sol) + "\n";
      }
    }
  }

  CommandResult res;
  write_file(config.out_dir + "/kernel.csv", csv.str(), res.files);
  if (config.dump_coefficients)
    write_file(config.out_dir + "/kernel_coefficients.jsonl", coef_dump, res.files);
  std::ostringstream sum;
  sum << "kernel: " << ps.size() * config.points.size() << " rows ("
      << errors << " convergence errors)";
  res.summary = sum.str();
  res.exit_code = 0;  // per-row errors are reported in the table, not fatal
  return res;
}

CommandResult cmd_distance(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config.out_dir);
  const auto ps = ps_or_default(config, {2.0});

  const QuadratureRule rule = build_quadrature(config.domain, config.radial, config.angular);
  const auto basis = Basis::standard(rule, config.degree);

  std::ostringstream csv;
  csv << point_headers("z", config.domain.dimension()) << ","
      << point_headers("w", config.domain.dimension()) << ",p,rho,theta_opt\n";
  int errors = 0;

  for (double p : ps) {
    std::vector<Eigen::VectorXcd> cache(config.points.size());
    std::vector<bool> have(config.points.size(), false);
    const auto values = [&](std::size_t i) -> const Eigen::VectorXcd& {
      if (!have[i]) {
        cache[i] = normalized_minimizer_values(config.domain, basis, rule, p,
                                               config.points[i], config.solver)
                       .first;
        have[i] = true;
      }
      return cache[i];
    };
    for (std::size_t i = 0; i < config.points.size(); ++i) {
      for (std::size_t j = 0; j < config.points.size(); ++j) {
        try {
          const PhaseMinimum pm = projective_distance_values(values(i), values(j), rule, p);
          csv << point_csv(config.points[i]) << "," << point_csv(config.points[j]) << ","
              << g17(p) << "," << g17(pm.distance) << "," << g17(pm.theta) << "\n";
        } catch (const std::exception& e) {
          csv << point_csv(config.points[i]) << "," << point_csv(config.points[j]) << ","
              << g17(p) << ",nan,nan\n";
          ++errors;
        }
      }
    }
  }

  CommandResult res;
  write_file(config.out_dir + "/distance.csv", csv.str(), res.files);
  std::ostringstream sum;
  sum << "distance: " << ps.size() * config.points.size() * config.points.size()
      << " pairs (" << errors << " errors)";
  res.summary = sum.str();
  res.exit_code = 0;
  return res;
}

CommandResult cmd_verify(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config.out_dir);

  const auto reports = run_suite(config.suite, verify_options(config));
  const int failures = count_failures(reports);

  CommandResult res;
  write_file(config.out_dir + "/report.jsonl", reports_to_jsonl(reports), res.files);
  write_file(config.out_dir + "/summary.txt", reports_summary(reports), res.files);
  res.summary = reports_summary(reports);
  res.exit_code = failures > 0 ? 1 : 0;
  return res;
}

CommandResult cmd_sweep(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config.out_dir);

  Point z, w;
  if (config.points.size() >= 2) {
    z = config.points[0];
    w = config.points[1];
  } else if (config.domain.is_disk()) {
    z = point1(Complex(0.0));
    w = point1(Complex(0.5));
  } else {
    throw ParameterError("sweep: need two points in the config for this domain");
  }
  const double center = config.ps.empty() ? 2.0 : config.ps[0];
  std::vector<double> grid;
  for (double off : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) {
    const double q = center + off;
    if (q >= 1.0) grid.push_back(q);
  }

  const QuadratureRule rule = build_quadrature(config.domain, config.radial, config.angular);
  const auto basis = Basis::standard(rule, config.degree);
  const auto reports = p_continuity_sweep(config.domain, basis, rule, z, w, center, grid,
                                          0.05, config.solver);

  std::ostringstream csv;
  csv << "q,rho_q,gap\n";
  for (const auto& r : reports) {
    if (r.check != "p-continuity-gap") continue;
    csv << g17(r.p) << "," << g17(r.rhs) << "," << g17(r.lhs) << "\n";
  }

  CommandResult res;
  write_file(config.out_dir + "/sweep.csv", csv.str(), res.files);
  write_file(config.out_dir + "/sweep_report.jsonl", reports_to_jsonl(reports), res.files);
  res.summary = reports_summary(reports);
  res.exit_code = count_failures(reports) > 0 ? 1 : 0;
  return res;
}

CommandResult cmd_constants(const RunConfig& config) {
  config.validate();
  ensure_out_dir(config.out_dir);

  std::vector<double> ps = config.ps;
  if (ps.empty())
    for (double p = 2.25; p <= 6.0 + 1e-12; p += 0.25) ps.push_back(p);
  for (double p : ps)
    if (!(p > 2.0)) throw ParameterError("constants: all p values must be > 2");

  std::ostringstream csv;
  csv << "p,I1,I2,c_p,C_p\n";
  for (double p : ps) {
    const AppendixConstants c = appendix_constants(p);
    csv << g17(p) << "," << g17(c.I1) << "," << g17(c.I2) << "," << g17(c.c_p) << ","
        << g17(c.C_p) << "\n";
  }

  CommandResult res;
  write_file(config.out_dir + "/constants.csv", csv.str(), res.files);
  res.summary = "constants: " + std::to_string(ps.size()) + " rows";
  res.exit_code = 0;
  return res;
}

}  // namespace pberg
