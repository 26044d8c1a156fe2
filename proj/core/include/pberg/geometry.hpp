#pragma once

#include <Eigen/Core>
#include <complex>
#include <memory>
#include <string>

namespace pberg {

using Complex = std::complex<double>;
/// A point of the ambient space, one complex entry per dimension.
using Point = Eigen::VectorXcd;

inline Point point1(Complex z) {
  Point p(1);
  p(0) = z;
  return p;
}

inline Point point2(Complex z1, Complex z2) {
  Point p(2);
  p(0) = z1;
  p(1) = z2;
  return p;
}

/// A model domain: the unit disk, an annulus r < |z| < 1, or a finite
/// product of those. Immutable after construction.
class Domain {
 public:
  enum class Kind { Disk, Annulus, Product };

  static Domain disk();
  static Domain annulus(double inner_radius);
  static Domain product(const Domain& left, const Domain& right);

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }
  bool is_disk() const { return kind_ == Kind::Disk; }

  /// Inner radius of an annulus; throws for other kinds.
  double inner_radius() const;
  const Domain& left() const;
  const Domain& right() const;

  /// True if z lies inside the domain with the given boundary margin
  /// (margin > 0 shrinks the domain).
  bool contains(const Point& z, double margin = 0.0) const;

  /// Lebesgue area/volume of the domain.
  double volume() const;

  bool operator==(const Domain& other) const;

 private:
  Domain(Kind kind, double inner_radius, int dim, std::shared_ptr<const Domain> left,
         std::shared_ptr<const Domain> right)
      : kind_(kind), inner_radius_(inner_radius), dim_(dim),
        left_(std::move(left)), right_(std::move(right)) {}

  Kind kind_;
  double inner_radius_;
  int dim_;
  std::shared_ptr<const Domain> left_, right_;
};

/// Nodes and positive weights realizing the area integral over a domain.
/// Product rules are tensor rules of their factor rules; node q of a product
/// decomposes as q = q_left * right.size() + q_right, and the factor rules
/// are retained for structure-exploiting evaluation.
struct QuadratureRule {
  Domain domain = Domain::disk();
  Eigen::MatrixXcd nodes;   // one row per node, dimension() columns
  Eigen::VectorXd weights;  // area-measure units, all positive

  std::shared_ptr<const QuadratureRule> left, right;  // null for 1-d rules
  int radial_n = 0, angular_n = 0;                    // 1-d resolution

  Eigen::Index size() const { return weights.size(); }
  Point node(Eigen::Index q) const { return nodes.row(q).transpose(); }
};

/// Builds a polar tensor rule: Gauss-Legendre in radius (mapped to [0,1] for
/// the disk, [r,1] for an annulus), uniform trapezoid in angle, weight
/// including the polar Jacobian r. Products tensor the factor rules with the
/// same (radial_n, angular_n) per factor. Deterministic for fixed inputs.
QuadratureRule build_quadrature(const Domain& domain, int radial_n, int angular_n);

/// Returns sum_q weight_q * value_q. Throws on length mismatch.
Complex quad_integrate(const QuadratureRule& rule, const Eigen::VectorXcd& values);

/// Short printable name: "disk", "annulus(r=0.5)", "(disk x disk)".
std::string domain_name(const Domain& domain);

}  // namespace pberg
