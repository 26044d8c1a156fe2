#include "pberg/distance.hpp"

#include <cmath>

#include "pberg/errors.hpp"
#include "pberg/numerics.hpp"

namespace pberg {

namespace {

double wrap_theta(double t) {
  const double two_pi = 2.0 * M_PI;
  t = std::fmod(t, two_pi);
  return t < 0 ? t + two_pi : t;
}

}  // namespace

PhaseMinimum projective_distance_values(const Eigen::VectorXcd& u,
                                        const Eigen::VectorXcd& v,
                                        const QuadratureRule& rule, double p,
                                        const PhaseSearchOptions& opts) {
  if (opts.grid_size < 4) throw ParameterError("phase search: grid_size too small");
  const double nu = lp_norm_values(u, rule, p);
  const double nv = lp_norm_values(v, rule, p);
  if (nu <= 0.0 || nv <= 0.0)
    throw ParameterError("projective_distance: zero function input");

  const Eigen::VectorXcd un = u / nu;
  const Eigen::VectorXcd vn = v / nv;
  const double half_p = 0.5 * p;

  // p-th power of the phase objective; same argmin, cheaper.
  const auto objective = [&](double t) {
    const Complex phase = std::polar(1.0, t);
    double acc = 0.0;
    if (p == 2.0) {
      for (Eigen::Index q = 0; q < un.size(); ++q)
        acc += rule.weights(q) * std::norm(phase * un(q) - vn(q));
      return acc;
    }
    for (Eigen::Index q = 0; q < un.size(); ++q)
      acc += rule.weights(q) * std::pow(std::norm(phase * un(q) - vn(q)), half_p);
    return acc;
  };

  const double step = 2.0 * M_PI / opts.grid_size;
  double best_t = 0.0, best_f = objective(0.0);
  for (int j = 1; j < opts.grid_size; ++j) {
    const double f = objective(step * j);
    if (f < best_f) {
      best_f = f;
      best_t = step * j;
    }
  }

  const auto [t_min, f_min] =
      golden_section_min(objective, best_t - step, best_t + step, opts.tol);

  PhaseMinimum out;
  out.distance = std::pow(std::min(f_min, best_f), 1.0 / p);
  out.theta = wrap_theta(f_min <= best_f ? t_min : best_t);
  out.refinement_iterations = static_cast<int>(
      std::ceil(std::log(2.0 * step / opts.tol) / std::log(1.0 / 0.6180339887498949)));
  return out;
}

std::pair<double, double> projective_distance(const CoefFunction& f,
                                              const CoefFunction& g,
                                              const QuadratureRule& rule, double p,
                                              const PhaseSearchOptions& opts) {
  const PhaseMinimum m =
      projective_distance_values(values_at_nodes(f), values_at_nodes(g), rule, p, opts);
  return {m.distance, m.theta};
}

std::pair<Eigen::VectorXcd, double> normalized_minimizer_values(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, const Point& z, const SolverOptions& opts) {
  if (domain.kind() == Domain::Kind::Product) {
    if (!basis->is_product() || !rule.left || !rule.right)
      throw ParameterError("normalized_minimizer_values: product domain needs tensor basis/rule");
    const int dl = domain.left().dimension();
    auto [lv, lm] = normalized_minimizer_values(domain.left(), basis->left_ptr(),
                                                *rule.left, p, z.head(dl), opts);
    auto [rv, rm] = normalized_minimizer_values(domain.right(), basis->right_ptr(),
                                                *rule.right, p, z.tail(z.size() - dl), opts);
    Eigen::VectorXcd v(lv.size() * rv.size());
    for (Eigen::Index i = 0; i < lv.size(); ++i)
      v.segment(i * rv.size(), rv.size()) = lv(i) * rv;
    return {std::move(v), lm * rm};
  }

  const MinimizerSolution sol = solve_minimizer(domain, basis, rule, p, z, opts);
  Eigen::VectorXcd values = values_at_nodes(sol.minimizer);
  const double norm = lp_norm_values(values, rule, p);
  values /= norm;
  return {std::move(values), norm};
}

DistanceResult skw_distance(const Domain& domain,
                            const std::shared_ptr<const Basis>& basis,
                            const QuadratureRule& rule, double p, const Point& z,
                            const Point& w, const SolverOptions& solver_opts,
                            const PhaseSearchOptions& phase_opts) {
  if (!domain.contains(z) || !domain.contains(w))
    throw ParameterError("skw_distance: points must lie inside the domain");

  const auto [uz, mz] = normalized_minimizer_values(domain, basis, rule, p, z, solver_opts);
  const auto [uw, mw] = normalized_minimizer_values(domain, basis, rule, p, w, solver_opts);
  const PhaseMinimum m = projective_distance_values(uz, uw, rule, p, phase_opts);

  DistanceResult out;
  out.rho = m.distance;
  out.theta_opt = m.theta;
  out.z = z;
  out.w = w;
  out.p = p;
  out.phase_grid_size = phase_opts.grid_size;
  out.refinement_iterations = m.refinement_iterations;
  return out;
}

double skw_distance_p2_oracle(Complex z, Complex w) {
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
    throw ParameterError("skw_distance_p2_oracle: points must lie in the unit disk");
  const double ratio =
      (1.0 - std::norm(z)) * (1.0 - std::norm(w)) / std::norm(1.0 - z * std::conj(w));
  return std::sqrt(2.0 * std::max(0.0, 1.0 - ratio));
}

MetricResult bergman_metric(const Domain& domain,
                            const std::shared_ptr<const Basis>& basis,
                            const QuadratureRule& rule, double p, const Point& z0,
                            const Eigen::VectorXcd& direction,
                            const SolverOptions& opts) {
  if (!domain.contains(z0)) throw ParameterError("bergman_metric: z0 outside domain");
  if (direction.size() != domain.dimension() || direction.norm() == 0.0)
    throw ParameterError("bergman_metric: direction must be nonzero of matching dimension");

  Eigen::MatrixXcd A(2, basis->size());
  A.row(0) = basis->row(z0);
  A.row(1).setZero();
  for (int j = 0; j < domain.dimension(); ++j)
    A.row(1) += direction(j) * basis->derivative_row(z0, j);
  Eigen::VectorXcd b(2);
  b << Complex(0.0), Complex(1.0);

  const ConstrainedSolve s = solve_constrained_lp(basis, rule, p, A, b, opts);

  // m_p(z0) from the one-constraint problem at the same point.
  const MinimizerSolution base = solve_minimizer(domain, basis, rule, p, z0, opts);

  MetricResult out;
  out.z0 = z0;
  out.direction = direction;
  out.p = p;
  out.dual_m_value = s.value;
  out.b_value = base.m_value / s.value;
  return out;
}

}  // namespace pberg
