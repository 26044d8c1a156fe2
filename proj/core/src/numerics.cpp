#include "pberg/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pberg/errors.hpp"

namespace pberg {

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw ParameterError("gauss_legendre: need n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);

  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    // Chebyshev-based initial guess for the i-th root of P_n.
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    nodes[i - 1] = mid - half * z;
    nodes[n - i] = mid + half * z;
    weights[i - 1] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    weights[n - i] = weights[i - 1];
  }
}

std::pair<double, double> golden_section_min(const std::function<double(double)>& f,
                                             double a, double b, double tol) {
  constexpr double invphi = 0.6180339887498949;  // 1/phi
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol,
                     int depth, long& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  if (lm <= a || rm <= m) return whole;  // interval at double resolution
  const double flm = f(lm), frm = f(rm);
  budget -= 2;
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = left + right - whole;
  // Accept on the tolerance or once the estimate is at the rounding floor of
  // the partial sums; below that, further splitting only builds a full tree.
  const double floor_ =
      8.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (depth <= 0 || budget <= 0 || std::abs(err) <= std::max(15.0 * tol, floor_)) {
    return left + right + err / 15.0;
  }
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  if (!(tol > 0)) throw ParameterError("adaptive_integrate: tol must be positive");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  long budget = 4'000'000;  // evaluation cap; pathological integrands degrade
                            // to the best refinement reached instead of hanging
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 64, budget);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // avoid log(0)
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::complex<double> Rng::uniform_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double t = uniform(0.0, 2.0 * M_PI);
  return std::polar(r, t);
}

}  // namespace pberg
