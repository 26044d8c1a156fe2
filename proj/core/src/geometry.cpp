#include "pberg/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "pberg/errors.hpp"
#include "pberg/numerics.hpp"

namespace pberg {

Domain Domain::disk() { return Domain(Kind::Disk, 0.0, 1, nullptr, nullptr); }

Domain Domain::annulus(double inner_radius) {
  if (!(inner_radius > 0.0 && inner_radius < 1.0))
    throw ParameterError("annulus inner radius must lie in (0,1)");
  return Domain(Kind::Annulus, inner_radius, 1, nullptr, nullptr);
}

Domain Domain::product(const Domain& left, const Domain& right) {
  return Domain(Kind::Product, 0.0, left.dimension() + right.dimension(),
                std::make_shared<Domain>(left), std::make_shared<Domain>(right));
}

double Domain::inner_radius() const {
  if (kind_ != Kind::Annulus) throw ParameterError("inner_radius: not an annulus");
  return inner_radius_;
}

const Domain& Domain::left() const {
  if (kind_ != Kind::Product) throw ParameterError("left: not a product domain");
  return *left_;
}

const Domain& Domain::right() const {
  if (kind_ != Kind::Product) throw ParameterError("right: not a product domain");
  return *right_;
}

bool Domain::contains(const Point& z, double margin) const {
  if (z.size() != dim_) return false;
  switch (kind_) {
    case Kind::Disk:
      return std::abs(z(0)) < 1.0 - margin;
    case Kind::Annulus: {
      const double r = std::abs(z(0));
      return r > inner_radius_ + margin && r < 1.0 - margin;
    }
    case Kind::Product:
      return left_->contains(z.head(left_->dimension()), margin) &&
             right_->contains(z.tail(right_->dimension()), margin);
  }
  return false;
}

double Domain::volume() const {
  switch (kind_) {
    case Kind::Disk:
      return M_PI;
    case Kind::Annulus:
      return M_PI * (1.0 - inner_radius_ * inner_radius_);
    case Kind::Product:
      return left_->volume() * right_->volume();
  }
  return 0.0;
}

bool Domain::operator==(const Domain& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Disk:
      return true;
    case Kind::Annulus:
      return inner_radius_ == other.inner_radius_;
    case Kind::Product:
      return *left_ == *other.left_ && *right_ == *other.right_;
  }
  return false;
}

namespace {

QuadratureRule polar_rule(const Domain& domain, double r0, int radial_n, int angular_n) {
  std::vector<double> rn, rw;
  gauss_legendre(radial_n, r0, 1.0, rn, rw);

  QuadratureRule rule;
  rule.domain = domain;
  rule.radial_n = radial_n;
  rule.angular_n = angular_n;
  const Eigen::Index total = static_cast<Eigen::Index>(radial_n) * angular_n;
  rule.nodes.resize(total, 1);
  rule.weights.resize(total);

  const double dtheta = 2.0 * M_PI / angular_n;
  for (int i = 0; i < radial_n; ++i) {
    const double r = rn[i];
    const double wr = rw[i] * r * dtheta;  // polar Jacobian r
    for (int j = 0; j < angular_n; ++j) {
      const double theta = dtheta * j;
      const Eigen::Index q = static_cast<Eigen::Index>(i) * angular_n + j;
      rule.nodes(q, 0) = Complex(r * std::cos(theta), r * std::sin(theta));
      rule.weights(q) = wr;
    }
  }
  return rule;
}

}  // namespace

QuadratureRule build_quadrature(const Domain& domain, int radial_n, int angular_n) {
  if (radial_n < 2 || angular_n < 4)
    throw ParameterError("build_quadrature: need radial_n >= 2 and angular_n >= 4");

  switch (domain.kind()) {
    case Domain::Kind::Disk:
      return polar_rule(domain, 0.0, radial_n, angular_n);
    case Domain::Kind::Annulus:
      return polar_rule(domain, domain.inner_radius(), radial_n, angular_n);
    case Domain::Kind::Product: {
      auto left = std::make_shared<QuadratureRule>(
          build_quadrature(domain.left(), radial_n, angular_n));
      auto right = std::make_shared<QuadratureRule>(
          build_quadrature(domain.right(), radial_n, angular_n));

      QuadratureRule rule;
      rule.domain = domain;
      const Eigen::Index nl = left->size(), nr = right->size();
      const int dl = domain.left().dimension(), dr = domain.right().dimension();
      rule.nodes.resize(nl * nr, dl + dr);
      rule.weights.resize(nl * nr);
      for (Eigen::Index i = 0; i < nl; ++i) {
        for (Eigen::Index j = 0; j < nr; ++j) {
          const Eigen::Index q = i * nr + j;
          rule.nodes.block(q, 0, 1, dl) = left->nodes.row(i);
          rule.nodes.block(q, dl, 1, dr) = right->nodes.row(j);
          rule.weights(q) = left->weights(i) * right->weights(j);
        }
      }
      rule.left = std::move(left);
      rule.right = std::move(right);
      return rule;
    }
  }
  throw ParameterError("build_quadrature: unknown domain kind");
}

Complex quad_integrate(const QuadratureRule& rule, const Eigen::VectorXcd& values) {
  if (values.size() != rule.weights.size())
    throw ParameterError("quad_integrate: values length does not match node count");
  return (rule.weights.cast<Complex>().array() * values.array()).sum();
}

std::string domain_name(const Domain& domain) {
  switch (domain.kind()) {
    case Domain::Kind::Disk:
      return "disk";
    case Domain::Kind::Annulus: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "annulus(r=%g)", domain.inner_radius());
      return buf;
    }
    case Domain::Kind::Product:
      return "(" + domain_name(domain.left()) + " x " + domain_name(domain.right()) + ")";
  }
  return "unknown";
}

}  // namespace pberg
