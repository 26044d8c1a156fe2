#include <cmath>

#include <doctest.h>

#include "pberg/errors.hpp"
#include "pberg/geometry.hpp"
#include "pberg/numerics.hpp"

using namespace pberg;

namespace {

Eigen::VectorXcd node_function(const QuadratureRule& rule,
                               const std::function<Complex(Complex)>& f) {
  Eigen::VectorXcd v(rule.size());
  for (Eigen::Index q = 0; q < rule.size(); ++q) v(q) = f(rule.nodes(q, 0));
  return v;
}

}  // namespace

TEST_CASE("disk rule integrates constants and |z|^2") {
  const auto rule = build_quadrature(Domain::disk(), 32, 64);
  const Complex area = quad_integrate(rule, Eigen::VectorXcd::Ones(rule.size()));
  CHECK(std::abs(area - Complex(M_PI)) < 1e-12);

  const auto v = node_function(rule, [](Complex z) { return Complex(std::norm(z)); });
  CHECK(std::abs(quad_integrate(rule, v) - Complex(M_PI / 2.0)) < 1e-12);

  const auto id = node_function(rule, [](Complex z) { return z; });
  CHECK(std::abs(quad_integrate(rule, id)) < 1e-13);

  CHECK(std::abs(quad_integrate(rule, Eigen::VectorXcd::Zero(rule.size()))) == 0.0);
}

TEST_CASE("annulus rule integrates area and Laurent moments") {
  const auto rule = build_quadrature(Domain::annulus(0.5), 32, 64);
  const Complex area = quad_integrate(rule, Eigen::VectorXcd::Ones(rule.size()));
  CHECK(std::abs(area - Complex(M_PI * 0.75)) < 1e-12);

  // int |z|^-2 over r<|z|<1 equals 2 pi log(1/r)
  const auto v = node_function(rule, [](Complex z) { return Complex(1.0 / std::norm(z)); });
  CHECK(std::abs(quad_integrate(rule, v) - Complex(2.0 * M_PI * std::log(2.0))) < 1e-12);
}

TEST_CASE("quadrature nodes lie inside the domain with positive weights") {
  for (const Domain& d : {Domain::disk(), Domain::annulus(0.3)}) {
    const auto rule = build_quadrature(d, 16, 32);
    CHECK(rule.weights.minCoeff() > 0.0);
    for (Eigen::Index q = 0; q < rule.size(); ++q) CHECK(d.contains(rule.node(q)));
  }
}

TEST_CASE("monomial exactness z^a conj(z)^b within the advertised band") {
  const int radial_n = 12, angular_n = 24;
  const auto rule = build_quadrature(Domain::disk(), radial_n, angular_n);
  for (int a = 0; a <= radial_n - 1; ++a) {
    for (int b = 0; b <= radial_n - 1; ++b) {
      if (std::abs(a - b) >= angular_n) continue;
      Eigen::VectorXcd v(rule.size());
      for (Eigen::Index q = 0; q < rule.size(); ++q) {
        const Complex z = rule.nodes(q, 0);
        v(q) = std::pow(z, a) * std::pow(std::conj(z), b);
      }
      const Complex exact = a == b ? Complex(M_PI / (a + 1.0)) : Complex(0.0);
      CHECK(std::abs(quad_integrate(rule, v) - exact) < 1e-12);
    }
  }
}

TEST_CASE("doubling the resolution leaves smooth p-integrals fixed to 1e-10") {
  const auto coarse = build_quadrature(Domain::disk(), 64, 128);
  const auto fine = build_quadrature(Domain::disk(), 128, 256);
  const auto f = [](Complex z) {
    return std::exp(0.8 * z) / (1.0 - 0.5 * z);  // holomorphic, bounded on the disk
  };
  for (double p : {1.5, 2.0, 3.7}) {
    double acc_c = 0.0, acc_f = 0.0;
    for (Eigen::Index q = 0; q < coarse.size(); ++q)
      acc_c += coarse.weights(q) * std::pow(std::abs(f(coarse.nodes(q, 0))), p);
    for (Eigen::Index q = 0; q < fine.size(); ++q)
      acc_f += fine.weights(q) * std::pow(std::abs(f(fine.nodes(q, 0))), p);
    CHECK(std::abs(acc_c - acc_f) < 1e-10);
  }
}

TEST_CASE("product rules tensor their factors") {
  const Domain bidisc = Domain::product(Domain::disk(), Domain::disk());
  CHECK(bidisc.dimension() == 2);
  const auto rule = build_quadrature(bidisc, 8, 16);
  CHECK(rule.size() == 128 * 128);
  const Complex vol = quad_integrate(rule, Eigen::VectorXcd::Ones(rule.size()));
  CHECK(std::abs(vol - Complex(M_PI * M_PI)) < 1e-10);
  CHECK(bidisc.volume() == doctest::Approx(M_PI * M_PI));
  for (Eigen::Index q = 0; q < rule.size(); q += 1111) CHECK(bidisc.contains(rule.node(q)));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_quadrature(Domain::disk(), 1, 64), ParameterError);
  CHECK_THROWS_AS(build_quadrature(Domain::disk(), 16, 3), ParameterError);
  CHECK_THROWS_AS(Domain::annulus(0.0), ParameterError);
  CHECK_THROWS_AS(Domain::annulus(1.0), ParameterError);
  CHECK_THROWS_AS(Domain::annulus(-0.2), ParameterError);

  const auto rule = build_quadrature(Domain::disk(), 8, 16);
  CHECK_THROWS_AS(quad_integrate(rule, Eigen::VectorXcd::Ones(3)), ParameterError);
}

TEST_CASE("domain membership uses the boundary margin") {
  const Domain d = Domain::disk();
  CHECK(d.contains(point1(Complex(0.95))));
  CHECK_FALSE(d.contains(point1(Complex(1.0))));
  CHECK_FALSE(d.contains(point1(Complex(0.95)), 0.1));

  const Domain a = Domain::annulus(0.5);
  CHECK(a.contains(point1(Complex(0.7))));
  CHECK_FALSE(a.contains(point1(Complex(0.3))));
  CHECK_FALSE(a.contains(point1(Complex(0.0))));
}
