#include "pberg/minimizer.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "pberg/errors.hpp"

namespace pberg {

void SolverOptions::validate() const {
  if (max_iterations < 1) throw ParameterError("SolverOptions: max_iterations < 1");
  if (!(gradient_tol > 0)) throw ParameterError("SolverOptions: gradient_tol <= 0");
  if (!(smoothing_initial > 0) || !(smoothing_final > 0) ||
      smoothing_final > smoothing_initial)
    throw ParameterError("SolverOptions: bad smoothing schedule");
  if (!(smoothing_decay > 0 && smoothing_decay < 1))
    throw ParameterError("SolverOptions: smoothing decay must lie in (0,1)");
}

namespace {

Eigen::VectorXcd real_to_complex(const Eigen::VectorXd& x) {
  Eigen::VectorXcd y(x.size() / 2);
  for (Eigen::Index j = 0; j < y.size(); ++j) y(j) = Complex(x(2 * j), x(2 * j + 1));
  return y;
}

Eigen::VectorXd complex_to_real(const Eigen::VectorXcd& y) {
  Eigen::VectorXd x(2 * y.size());
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    x(2 * j) = y(j).real();
    x(2 * j + 1) = y(j).imag();
  }
  return x;
}

/// Smoothed objective F(y) = sum_q w_q (|v0_q + (M y)_q|^2 + eps^2)^(p/2)
/// over the eliminated parameterization, with its Wirtinger gradient.
class SmoothedObjective {
 public:
  SmoothedObjective(Eigen::VectorXcd v0, Eigen::MatrixXcd M, const Eigen::VectorXd& w,
                    double p)
      : v0_(std::move(v0)), M_(std::move(M)), w_(w), p_(p) {}

  double value(const Eigen::VectorXd& x, double eps) const {
    const Eigen::VectorXcd v = v0_ + M_ * real_to_complex(x);
    const double e2 = eps * eps, hp = 0.5 * p_;
    double acc = 0.0;
    for (Eigen::Index q = 0; q < v.size(); ++q)
      acc += w_(q) * std::pow(std::norm(v(q)) + e2, hp);
    return acc;
  }

  double value_and_gradient(const Eigen::VectorXd& x, double eps,
                            Eigen::VectorXd& grad) const {
    const Eigen::VectorXcd v = v0_ + M_ * real_to_complex(x);
    const double e2 = eps * eps, hp = 0.5 * p_;
    Eigen::VectorXcd s(v.size());
    double acc = 0.0;
    for (Eigen::Index q = 0; q < v.size(); ++q) {
      const double u = std::norm(v(q)) + e2;
      acc += w_(q) * std::pow(u, hp);
      s(q) = w_(q) * hp * std::pow(u, hp - 1.0) * v(q);
    }
    const Eigen::VectorXcd gy = M_.adjoint() * s;
    grad = 2.0 * complex_to_real(gy);
    return acc;
  }

  Eigen::VectorXcd node_values(const Eigen::VectorXd& x) const {
    return v0_ + M_ * real_to_complex(x);
  }

  Eigen::Index dim() const { return 2 * M_.cols(); }

 private:
  Eigen::VectorXcd v0_;
  Eigen::MatrixXcd M_;
  const Eigen::VectorXd& w_;
  double p_;
};

struct BfgsStage {
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// One annealing stage of BFGS with Armijo backtracking. H is carried across
/// stages by the caller.
BfgsStage bfgs_minimize(const SmoothedObjective& obj, double eps, Eigen::VectorXd& x,
                        Eigen::MatrixXd& H, const SolverOptions& opts) {
  const Eigen::Index n = obj.dim();
  Eigen::VectorXd g(n), g_new(n);
  double f = obj.value_and_gradient(x, eps, g);

  BfgsStage stage;
  bool h_is_fresh = true;
  for (int it = 0; it < opts.max_iterations; ++it) {
    stage.gradient_norm = g.norm();
    if (stage.gradient_norm <= opts.gradient_tol) {
      stage.converged = true;
      return stage;
    }

    Eigen::VectorXd d = -(H * g);
    double gd = g.dot(d);
    if (gd >= 0) {  // H lost positive definiteness; restart from steepest descent
      H.setIdentity();
      h_is_fresh = true;
      d = -g;
      gd = g.dot(d);
    }

    // Armijo with a rounding allowance: near the optimum the true decrease
    // falls below machine epsilon of f, while the analytic gradient is still
    // accurate; the allowance lets BFGS keep reducing the gradient.
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f));
    double t = 1.0;
    double f_new = 0.0;
    bool ok = false;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      f_new = obj.value(x + t * d, eps);
      if (f_new <= f + opts.armijo_c * t * gd + noise) {
        ok = true;
        break;
      }
      t *= opts.backtrack;
    }
    if (!ok) {
      if (!h_is_fresh) {  // retry the step with a reset Hessian approximation
        H.setIdentity();
        h_is_fresh = true;
        continue;
      }
      return stage;  // genuine stall; caller decides
    }

    const Eigen::VectorXd x_new = x + t * d;
    f_new = obj.value_and_gradient(x_new, eps, g_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-14 * s.norm() * yv.norm()) {
      if (h_is_fresh) {
        H *= sy / yv.squaredNorm();
        h_is_fresh = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = H * yv;
      const double yHy = yv.dot(Hy);
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      H.noalias() -= rho * (Hy * s.transpose());
      H.noalias() -= rho * (s * Hy.transpose());
      H.noalias() += (rho * rho * yHy + rho) * (s * s.transpose());
    }
    x = x_new;
    f = f_new;
    g.swap(g_new);
    ++stage.iterations;
  }
  stage.gradient_norm = g.norm();
  stage.converged = stage.gradient_norm <= opts.gradient_tol;
  return stage;
}

}  // namespace

namespace {

/// p = 2 is a linearly constrained least-squares problem; solve it through
/// the Gram matrix alone (no node-value materialization, exact minimizer).
ConstrainedSolve solve_p2_linear(const std::shared_ptr<const Basis>& basis,
                                 const Eigen::MatrixXcd& A,
                                 const Eigen::VectorXcd& b) {
  const Eigen::Index n = basis->size();
  const Eigen::Index m = A.rows();
  const Eigen::MatrixXcd G = basis->gram();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A.adjoint());
  qr.setThreshold(1e-12);
  if (qr.rank() < m)
    throw RankError("solve_constrained_lp: constraint rows are rank deficient");
  const Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd Z = Q.rightCols(n - m);
  const Eigen::VectorXcd c0 =
      A.adjoint() * (A * A.adjoint()).partialPivLu().solve(b);

  const Eigen::MatrixXcd ZGZ = Z.adjoint() * G * Z;
  const Eigen::VectorXcd y = ZGZ.ldlt().solve(-(Z.adjoint() * (G * c0)));

  ConstrainedSolve out;
  out.coef = c0 + Z * y;
  out.value = std::sqrt(std::max(0.0, (out.coef.adjoint() * G * out.coef)(0).real()));
  out.gradient_residual = 2.0 * (Z.adjoint() * (G * out.coef)).norm();
  return out;
}

}  // namespace

ConstrainedSolve solve_constrained_lp(const std::shared_ptr<const Basis>& basis,
                                      const QuadratureRule& rule, double p,
                                      const Eigen::MatrixXcd& constraints,
                                      const Eigen::VectorXcd& rhs,
                                      const SolverOptions& opts) {
  opts.validate();
  if (p < 1.0) throw ParameterError("solve_constrained_lp: requires p >= 1");
  if (basis->node_count() != rule.size())
    throw ParameterError("solve_constrained_lp: basis and rule node counts differ");
  const Eigen::Index n = basis->size();
  const Eigen::Index m = constraints.rows();
  if (constraints.cols() != n || rhs.size() != m)
    throw ParameterError("solve_constrained_lp: constraint shape mismatch");
  if (m >= n) throw ParameterError("solve_constrained_lp: too many constraints");

  if (p == 2.0) return solve_p2_linear(basis, constraints, rhs);

  // Optional preconditioner: c = B u with B = L^-H from gram = L L^H, so the
  // working basis is orthonormal in the quadrature inner product.
  Eigen::MatrixXcd B;
  if (opts.precondition) {
    const Eigen::MatrixXcd G = basis->gram();
    Eigen::LLT<Eigen::MatrixXcd> llt(G);
    if (llt.info() == Eigen::Success) {
      B = llt.matrixL().adjoint().solve(Eigen::MatrixXcd::Identity(n, n));
    }
  }
  const bool use_b = B.size() > 0;

  const Eigen::MatrixXcd A = use_b ? Eigen::MatrixXcd(constraints * B) : constraints;

  // Rank check + null-space basis from a QR of A^H.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A.adjoint());
  qr.setThreshold(1e-12);
  if (qr.rank() < m)
    throw RankError("solve_constrained_lp: constraint rows are rank deficient");
  const Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd Z = Q.rightCols(n - m);

  // Minimum-norm particular solution u0 = A^H (A A^H)^-1 rhs.
  const Eigen::MatrixXcd AAh = A * A.adjoint();
  const Eigen::VectorXcd u0 = A.adjoint() * AAh.partialPivLu().solve(rhs);

  // Composite operator: node values v = v0 + M y.
  const Eigen::VectorXcd c_part = use_b ? Eigen::VectorXcd(B * u0) : u0;
  Eigen::VectorXcd v0 = basis->eval_at_nodes(c_part);
  Eigen::MatrixXcd M(basis->node_count(), n - m);
  for (Eigen::Index j = 0; j < n - m; ++j) {
    const Eigen::VectorXcd zc = use_b ? Eigen::VectorXcd(B * Z.col(j)) : Z.col(j);
    M.col(j) = basis->eval_at_nodes(zc);
  }

  // Warm start at the p = 2 solution: (M^H W M) y = -M^H W v0.
  const Eigen::VectorXd& w = basis->node_weights();
  const Eigen::MatrixXcd MWM = M.adjoint() * w.asDiagonal() * M;
  const Eigen::VectorXcd rhs2 = -(M.adjoint() * (w.asDiagonal() * v0));
  Eigen::VectorXcd y2 = MWM.ldlt().solve(rhs2);
  Eigen::VectorXd x = complex_to_real(y2);

  SmoothedObjective obj(std::move(v0), std::move(M), w, p);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(obj.dim(), obj.dim());

  const double eps_final = (p == 1.0) ? opts.smoothing_final_p1 : opts.smoothing_final;
  ConstrainedSolve out;
  out.smoothed = p == 1.0;

  double eps = std::max(opts.smoothing_initial, eps_final);
  bool last = false;
  BfgsStage stage;
  while (true) {
    stage = bfgs_minimize(obj, eps, x, H, opts);
    out.iterations += stage.iterations;
    out.gradient_residual = stage.gradient_norm;
    out.smoothing_final = eps;
    if (!stage.converged) break;
    if (last || eps <= eps_final) break;
    eps = std::max(eps * opts.smoothing_decay, eps_final);
    last = eps <= eps_final;
  }

  const Eigen::VectorXcd y = real_to_complex(x);
  Eigen::VectorXcd u = u0 + Z * y;
  out.coef = use_b ? Eigen::VectorXcd(B * u) : u;
  out.value = lp_norm_values(obj.node_values(x), rule, p);

  if (!stage.converged) {
    ConstrainedSolve best = out;
    throw ConvergenceError(
        "solve_constrained_lp: gradient tolerance not reached (residual " +
            std::to_string(stage.gradient_norm) + ")",
        MinimizerSolution{Point(), p, best.value,
                          CoefFunction{basis, best.coef}, best.iterations,
                          best.gradient_residual, best.smoothing_final, best.smoothed});
  }
  return out;
}

MinimizerSolution solve_minimizer(const Domain& domain,
                                  const std::shared_ptr<const Basis>& basis,
                                  const QuadratureRule& rule, double p, const Point& z0,
                                  const SolverOptions& opts) {
  if (!(basis->domain() == domain) || !(rule.domain == domain))
    throw ParameterError("solve_minimizer: domain mismatch");
  if (!domain.contains(z0)) throw ParameterError("solve_minimizer: z0 outside domain");

  Eigen::MatrixXcd A(1, basis->size());
  A.row(0) = basis->row(z0);
  Eigen::VectorXcd b(1);
  b(0) = 1.0;

  ConstrainedSolve s;
  try {
    s = solve_constrained_lp(basis, rule, p, A, b, opts);
  } catch (const ConvergenceError& e) {
    MinimizerSolution best = e.best();
    best.z0 = z0;
    throw ConvergenceError(e.what(), std::move(best));
  }

  MinimizerSolution sol;
  sol.z0 = z0;
  sol.p = p;
  sol.m_value = s.value;
  sol.minimizer = CoefFunction{basis, std::move(s.coef)};
  sol.iterations = s.iterations;
  sol.gradient_residual = s.gradient_residual;
  sol.smoothing_final = s.smoothing_final;
  sol.smoothed = s.smoothed;
  return sol;
}

double kernel_diag(const MinimizerSolution& sol) {
  return std::pow(sol.m_value, -sol.p);
}

double reproducing_residual(const CoefFunction& f, const MinimizerSolution& sol,
                            const QuadratureRule& rule, const Point& z) {
  const Eigen::VectorXcd mv = values_at_nodes(sol.minimizer);
  const Eigen::VectorXcd fv = values_at_nodes(f);
  if (mv.size() != rule.size())
    throw ParameterError("reproducing_residual: rule does not match basis");
  const double p = sol.p;
  Complex integral(0.0);
  for (Eigen::Index q = 0; q < mv.size(); ++q) {
    const double a = std::abs(mv(q));
    if (a == 0.0) continue;
    integral += rule.weights(q) * std::pow(a, p - 2.0) * std::conj(mv(q)) * fv(q);
  }
  const Complex fz = evaluate(f, z);
  return std::abs(fz - std::pow(sol.m_value, -p) * integral);
}

Complex disk_closed_form(Complex zeta, Complex w, double p) {
  const Complex base = (1.0 - std::norm(w)) / (1.0 - zeta * std::conj(w));
  return std::pow(base, 4.0 / p);
}

double disk_closed_form_mass(Complex w, double p) {
  const double s = 1.0 - std::norm(w);
  return std::pow(M_PI * s * s, 1.0 / p);
}

std::string solution_to_json(const MinimizerSolution& sol) {
  nlohmann::json j;
  nlohmann::json z0 = nlohmann::json::array();
  for (Eigen::Index i = 0; i < sol.z0.size(); ++i) {
    z0.push_back(sol.z0(i).real());
    z0.push_back(sol.z0(i).imag());
  }
  j["z0"] = z0;
  j["p"] = sol.p;
  j["m_value"] = sol.m_value;
  j["coefficients"] = nlohmann::json::parse(coefficients_to_json(sol.minimizer));
  j["iterations"] = sol.iterations;
  j["gradient_residual"] = sol.gradient_residual;
  j["smoothing_final"] = sol.smoothing_final;
  j["smoothed"] = sol.smoothed;
  return j.dump();
}

}  // namespace pberg
