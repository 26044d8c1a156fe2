#pragma once

#include <memory>
#include <utility>

#include "pberg/minimizer.hpp"

namespace pberg {

struct PhaseSearchOptions {
  int grid_size = 64;   // coarse seeding grid over [0, 2pi)
  double tol = 1e-10;   // golden-section bracket width in t
};

/// rho_p(z, w) together with the optimal phase and search diagnostics.
struct DistanceResult {
  double rho = 0.0;
  double theta_opt = 0.0;  // in [0, 2pi)
  Point z, w;
  double p = 2.0;
  int phase_grid_size = 0;
  int refinement_iterations = 0;
};

/// B_p(z0; X) and the auxiliary constrained minimum behind it.
struct MetricResult {
  Point z0;
  Eigen::VectorXcd direction;
  double p = 2.0;
  double b_value = 0.0;
  double dual_m_value = 0.0;  // mu = min{ ||f||_p : f(z0)=0, Xf(z0)=1 }
};

/// min over t in [0,2pi) of || e^{it} u/||u|| - v/||v|| ||_p for node-value
/// vectors, by grid seeding plus golden-section refinement. Returns
/// (distance, optimal t, refinement iteration count).
struct PhaseMinimum {
  double distance;
  double theta;
  int refinement_iterations;
};
PhaseMinimum projective_distance_values(const Eigen::VectorXcd& u,
                                        const Eigen::VectorXcd& v,
                                        const QuadratureRule& rule, double p,
                                        const PhaseSearchOptions& opts = {});

/// Distance between the projective classes [f], [g]. Throws ParameterError
/// on a zero function.
std::pair<double, double> projective_distance(const CoefFunction& f,
                                              const CoefFunction& g,
                                              const QuadratureRule& rule, double p,
                                              const PhaseSearchOptions& opts = {});

/// Node values of m_p(., z)/m_p(z) over the rule, plus m_p(z). On product
/// domains the minimizer is assembled from factor solves by the product rule
/// m_{p,Omega} = m_{p,Omega1} * m_{p,Omega2}.
std::pair<Eigen::VectorXcd, double> normalized_minimizer_values(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, const Point& z,
    const SolverOptions& opts = {});

/// The p-Skwarczynski distance rho_p(z, w).
DistanceResult skw_distance(const Domain& domain,
                            const std::shared_ptr<const Basis>& basis,
                            const QuadratureRule& rule, double p, const Point& z,
                            const Point& w, const SolverOptions& solver_opts = {},
                            const PhaseSearchOptions& phase_opts = {});

/// Exact rho_2 on the unit disk from the Bergman kernel ratio,
/// rho_2^2 = 2 (1 - |K_2(z,w)| / sqrt(K_2(z) K_2(w))).
double skw_distance_p2_oracle(Complex z, Complex w);

/// p-Bergman metric B_p(z0; X) = K_p(z0)^{-1/p} sup{ |Xf(z0)| : f(z0)=0,
/// ||f||_p=1 }, computed through the equivalent constrained minimum
/// mu = min{ ||f||_p : f(z0)=0, Xf(z0)=1 } as b_value = m_p(z0)/mu.
MetricResult bergman_metric(const Domain& domain,
                            const std::shared_ptr<const Basis>& basis,
                            const QuadratureRule& rule, double p, const Point& z0,
                            const Eigen::VectorXcd& direction,
                            const SolverOptions& opts = {});

}  // namespace pberg
