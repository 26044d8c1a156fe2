#pragma once

#include <memory>
#include <string>

#include "pberg/geometry.hpp"

namespace pberg {

/// A truncated holomorphic basis over a domain together with its evaluation
/// table at the nodes of a quadrature rule. Monomials zeta^k on the disk,
/// Laurent monomials zeta^k (k in [laurent_min, laurent_max]) on an annulus,
/// tensor products on product domains. Immutable after construction.
class Basis {
 public:
  /// Monomials 1, zeta, ..., zeta^max_power on the unit disk.
  static std::shared_ptr<const Basis> disk(const QuadratureRule& rule, int max_power);
  /// Laurent monomials zeta^k, laurent_min <= k <= laurent_max, on an annulus.
  static std::shared_ptr<const Basis> annulus(const QuadratureRule& rule,
                                              int laurent_min, int laurent_max);
  /// Tensor product of two factor bases over a tensor quadrature rule.
  static std::shared_ptr<const Basis> product(const QuadratureRule& rule,
                                              std::shared_ptr<const Basis> left,
                                              std::shared_ptr<const Basis> right);
  /// Default basis for a domain: disk -> powers 0..degree, annulus ->
  /// Laurent range -degree..degree, products built recursively.
  /// degree 0 selects the per-domain default (24 for disks, 16 for annuli).
  static std::shared_ptr<const Basis> standard(const QuadratureRule& rule, int degree = 0);

  const Domain& domain() const { return domain_; }
  Eigen::Index size() const { return size_; }
  Eigen::Index node_count() const { return weights_.size(); }
  const Eigen::VectorXd& node_weights() const { return weights_; }
  bool is_product() const { return static_cast<bool>(left_); }
  const Basis& left() const { return *left_; }
  const Basis& right() const { return *right_; }
  std::shared_ptr<const Basis> left_ptr() const { return left_; }
  std::shared_ptr<const Basis> right_ptr() const { return right_; }

  /// Row vector (phi_k(z))_k.
  Eigen::RowVectorXcd row(const Point& z) const;

  /// Derivative row (d/dz_j phi_k(z))_k in coordinate direction j.
  Eigen::RowVectorXcd derivative_row(const Point& z, int coordinate) const;

  /// Values of sum_k coef_k phi_k at every quadrature node (E * coef),
  /// exploiting the tensor structure on product domains.
  Eigen::VectorXcd eval_at_nodes(const Eigen::VectorXcd& coef) const;

  /// Adjoint of eval_at_nodes: E^H * s for a node vector s.
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& s) const;

  /// Gram matrix E^H W E of the basis in the quadrature inner product.
  Eigen::MatrixXcd gram() const;

  /// Explicit evaluation table (node_count x size). For product bases this
  /// materializes the tensor table; intended for small cross-check solves.
  Eigen::MatrixXcd table() const;

 private:
  Basis() = default;

  Domain domain_ = Domain::disk();
  Eigen::Index size_ = 0;
  Eigen::VectorXd weights_;
  Eigen::MatrixXcd table_;  // dim-1 only
  int power_min_ = 0;       // dim-1: phi_k = zeta^(power_min_ + k)
  std::shared_ptr<const Basis> left_, right_;
};

/// A function in the truncated space, stored as complex coefficients.
struct CoefFunction {
  std::shared_ptr<const Basis> basis;
  Eigen::VectorXcd coef;
};

/// Pointwise evaluation f(z) = sum_k c_k phi_k(z) at each point.
/// Throws ParameterError if a point lies outside the domain.
Eigen::VectorXcd evaluate(const CoefFunction& f, const std::vector<Point>& points);

/// Single-point convenience overload.
Complex evaluate(const CoefFunction& f, const Point& z);

/// Values of f at every node of the basis' quadrature rule.
Eigen::VectorXcd values_at_nodes(const CoefFunction& f);

/// Discrete L^p norm (sum_q w_q |f(node_q)|^p)^(1/p). Requires p >= 1 and a
/// rule with the same node count as the basis table.
double lp_norm(const CoefFunction& f, const QuadratureRule& rule, double p);

/// Norm of explicit node values against a rule.
double lp_norm_values(const Eigen::VectorXcd& values, const QuadratureRule& rule, double p);

/// Coefficients as a JSON array of [re, im] pairs.
std::string coefficients_to_json(const CoefFunction& f);

}  // namespace pberg
