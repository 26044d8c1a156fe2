#pragma once

#include <memory>
#include <stdexcept>

#include "pberg/function_space.hpp"
#include "pberg/geometry.hpp"

namespace pberg {

struct SolverOptions {
  int max_iterations = 600;  // per annealing stage
  // Tolerance on the eliminated-parameterization gradient. The objective is
  // O(1), so values below ~1e-8 are under the line-search noise floor; the
  // minimum value is accurate to O(tol^2).
  double gradient_tol = 1e-7;
  double smoothing_initial = 1e-2;
  double smoothing_decay = 0.1;    // in (0,1)
  double smoothing_final = 1e-10;
  double smoothing_final_p1 = 1e-6;  // p == 1 never anneals past this
  bool precondition = true;  // orthonormalize the basis against the quadrature
                             // inner product (Cholesky of the Gram matrix)
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int max_line_search = 60;

  void validate() const;
};

/// Result of the variational problem at a base point: the minimal norm
/// m_p(z0), the minimizer function m_p(., z0), and solver diagnostics.
struct MinimizerSolution {
  Point z0;
  double p = 2.0;
  double m_value = 0.0;       // = m_p(z0)
  CoefFunction minimizer;     // m_p(., z0), satisfies minimizer(z0) = 1
  int iterations = 0;
  double gradient_residual = 0.0;
  double smoothing_final = 0.0;
  bool smoothed = false;  // annealing stopped early (p == 1 path)
};

/// Thrown when a descent stage cannot reach the gradient tolerance; carries
/// the best iterate found so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, MinimizerSolution best)
      : std::runtime_error(what),
        best_(std::make_shared<MinimizerSolution>(std::move(best))) {}
  const MinimizerSolution& best() const { return *best_; }

 private:
  std::shared_ptr<MinimizerSolution> best_;
};

/// Generic engine: minimize the smoothed discrete p-norm objective
///   F(c) = sum_q w_q (|f_c(q)|^2 + eps^2)^(p/2)
/// over the affine slice {c : A c = b}, annealing eps per the options.
/// Constraint elimination (c = c0 + Z y, Z a null-space basis of A) plus
/// BFGS descent in y; initialized at the p = 2 solution.
struct ConstrainedSolve {
  Eigen::VectorXcd coef;
  double value = 0.0;  // exact (unsmoothed) discrete p-norm of the solution
  int iterations = 0;
  double gradient_residual = 0.0;
  double smoothing_final = 0.0;
  bool smoothed = false;
};

ConstrainedSolve solve_constrained_lp(const std::shared_ptr<const Basis>& basis,
                                      const QuadratureRule& rule, double p,
                                      const Eigen::MatrixXcd& constraints,
                                      const Eigen::VectorXcd& rhs,
                                      const SolverOptions& opts = {});

/// Solves m_p(z0) = min{ ||f||_p : f(z0) = 1 } over the truncated space.
MinimizerSolution solve_minimizer(const Domain& domain,
                                  const std::shared_ptr<const Basis>& basis,
                                  const QuadratureRule& rule, double p, const Point& z0,
                                  const SolverOptions& opts = {});

/// Diagonal p-Bergman kernel K_p(z0) = m_p(z0)^(-p).
double kernel_diag(const MinimizerSolution& sol);

/// First-order optimality check: |f(z) - m^-p * sum_q w_q |m_q|^(p-2)
/// conj(m_q) f_q| with m the solution minimizer. Small at z = sol.z0 for any
/// f in the truncated space.
double reproducing_residual(const CoefFunction& f, const MinimizerSolution& sol,
                            const QuadratureRule& rule, const Point& z);

/// Unit-disk closed form of the minimizer function,
/// [(1-|w|^2)/(1 - zeta*conj(w))]^(4/p), principal branch.
Complex disk_closed_form(Complex zeta, Complex w, double p);

/// Unit-disk closed form of the minimum value, [pi (1-|w|^2)^2]^(1/p).
/// Note the square: direct integration of the closed-form minimizer yields
/// (1-|w|^2)^2 under the pi, and the solver agrees; see the verify suite.
double disk_closed_form_mass(Complex w, double p);

/// JSON object {z0, p, m_value, coefficients, iterations, gradient_residual,
/// smoothing_final, smoothed}.
std::string solution_to_json(const MinimizerSolution& sol);

}  // namespace pberg
