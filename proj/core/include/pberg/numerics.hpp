#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace pberg {

/// Gauss-Legendre nodes and weights on [a, b], computed by Newton iteration
/// on the Legendre polynomial. Exact for polynomials of degree <= 2n-1.
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Minimizes a unimodal function on [a, b] by golden-section search until the
/// bracket is shorter than tol. Returns (argmin, min value).
std::pair<double, double> golden_section_min(const std::function<double(double)>& f,
                                             double a, double b, double tol);

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
/// Subdivides where the local error estimate is large; handles integrable
/// endpoint/interior singularities by deep refinement (depth cap 64).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol);

/// Deterministic uniform generator, decoupled from std::uniform_* so that
/// streams are reproducible across standard library implementations.
/// (splitmix64 seeding + xoshiro256** core.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform over the complex disk of the given radius.
  std::complex<double> uniform_disk(double radius);

 private:
  std::uint64_t s_[4];
};

}  // namespace pberg
