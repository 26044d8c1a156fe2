#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pberg/distance.hpp"

namespace pberg {

enum class Verdict { Pass, Fail, Degenerate };

/// One quantitative check: an inequality lhs <= rhs evaluated at concrete
/// inputs. margin = rhs - lhs; the verdict is pass iff margin >= -tolerance,
/// except for explicitly degenerate (skipped/informational) entries.
struct VerificationReport {
  std::string check;
  double p = 0.0;
  std::string domain;
  std::vector<Complex> points;  // participating points, flattened
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Pass;
  std::string note;
};

VerificationReport make_report(std::string check, double p, std::string domain,
                               std::vector<Complex> points, double lhs, double rhs,
                               double tolerance, std::string note = "");

VerificationReport make_degenerate(std::string check, double p, std::string domain,
                                   std::vector<Complex> points, double lhs,
                                   std::string note);

std::string verdict_name(Verdict v);

/// Serialization: one JSON object per line, and a fixed-width summary table.
std::string reports_to_jsonl(const std::vector<VerificationReport>& reports);
std::string reports_summary(const std::vector<VerificationReport>& reports);
int count_failures(const std::vector<VerificationReport>& reports);

/// Constants of the two-sided minimizer-distance inequality for p > 2:
/// c_p = p * min(I1, I2) with
///   I1 = int_0^{1/4} (1-t) (1/2-t)^{p-2} dt,
///   I2 = int_{3/4}^1 (1-t) (t-1/2)^{p-2} dt,
/// and C_p = p (p-1) 3^{(p-2)/p} / 2.
struct AppendixConstants {
  double p;
  double c_p;
  double C_p;
  double I1;
  double I2;
};

AppendixConstants appendix_constants(double p);

/// Both sides of  c_p d([m_p(.,z)],[f])^p <= 1 - |f(z)|/K_p(z)^{1/p}
///                <= C_p d([m_p(.,z)],[f])^2  for unit-norm f, p > 2.
/// Returns {lower-bound report, upper-bound report}.
std::array<VerificationReport, 2> check_main_inequality(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, const Point& z, const CoefFunction& f,
    double tolerance = 1e-6, const SolverOptions& solver = {},
    const PhaseSearchOptions& phase = {});

/// |m_p(z,w)| <= (m_p(w)/m_p(z)) [1 - rho_p(z,w)^p / (p 4^{p+3})], p > 2.
/// Disk closed forms supply the m_p values; rho_p is computed numerically.
VerificationReport check_application_inequality(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, const Point& z, const Point& w,
    double tolerance = 1e-6, const SolverOptions& solver = {},
    const PhaseSearchOptions& phase = {});

/// Invariance under the disk automorphism F = e^{i phi}(zeta-a)/(1-conj(a) zeta):
/// |rho_p(z,w) - rho_p(F z, F w)| and the transformation law
/// m_p(w) = m_p(F w) |J_F(w)|^{-2/p}. Returns {distance report, law report}.
std::array<VerificationReport, 2> check_invariance(
    const std::shared_ptr<const Basis>& basis, const QuadratureRule& rule, double p,
    Complex z, Complex w, Complex mobius_a, double rotation,
    double distance_tolerance = 1e-3, double law_tolerance = 1e-4,
    const SolverOptions& solver = {}, const PhaseSearchOptions& phase = {});

/// Samples pairs at dyadically shrinking separations inside B(z0, r) and
/// bounds rho_p(z,w)/|z-w|^alpha, alpha = 1/p (p > 2) or 1/2 (1 < p <= 2).
/// Passes when the bound grows by at most 2x per halving of the separation.
std::vector<VerificationReport> check_holder(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, double p, Complex z0, double radius, int n_pairs,
    std::uint64_t seed, const SolverOptions& solver = {},
    const PhaseSearchOptions& phase = {});

/// Boundary ratio sequences on the disk along w_k = 1 - 2^{-k}, k = 1..K:
/// m_p(z,w_k)/m_p(w_k) and |f(w_k)|^p/K_p(w_k) (f defaults to the unit-norm
/// constant). Closed forms drive the sequences; when a basis/rule is given
/// the solver cross-checks the first terms. Pass: strictly decreasing beyond
/// k = 3 and below final_threshold at k = K.
std::vector<VerificationReport> boundary_diagnostics(
    double p, Complex z, int k_max, double final_threshold = 1e-2,
    const CoefFunction* f = nullptr,
    const std::shared_ptr<const Basis>& basis = nullptr,
    const QuadratureRule* rule = nullptr, const SolverOptions& solver = {});

/// rho_q(z, w) for q in q_grid against rho at p_center: gaps must shrink as
/// q approaches p_center on each side, and the nearest gap must be below
/// gap_tolerance.
std::vector<VerificationReport> p_continuity_sweep(
    const Domain& domain, const std::shared_ptr<const Basis>& basis,
    const QuadratureRule& rule, const Point& z, const Point& w, double p_center,
    const std::vector<double>& q_grid, double gap_tolerance = 0.05,
    const SolverOptions& solver = {}, const PhaseSearchOptions& phase = {});

/// Pointwise Taylor-type inequalities behind every integrated bound:
/// MI1/MI2 (with the t-integral by adaptive quadrature) for p >= 1, plus
/// the pointwise difference bound for p >= 2 or its 1 < p < 2 counterpart.
std::vector<VerificationReport> check_taylor_inequalities(Complex a, Complex b,
                                                          double p,
                                                          double tolerance = 1e-10);

/// ---- Suite driver ----------------------------------------------------

struct VerifyOptions {
  Domain domain = Domain::disk();
  int degree = 0;  // 0 -> per-domain default
  int radial = 64;
  int angular = 128;
  SolverOptions solver;
  PhaseSearchOptions phase;
  std::uint64_t seed = 987654321;
  int count = 0;              // 0 -> per-suite default
  std::vector<double> ps;     // empty -> per-suite default
  double tolerance = 1e-6;    // margin tolerance for inequality suites
  bool retry_doubled = true;  // re-run failing checks at doubled quadrature
};

/// Valid suite names (also accepted: "all").
const std::vector<std::string>& suite_names();

/// Runs one named suite; throws ParameterError for unknown names.
std::vector<VerificationReport> run_suite(const std::string& suite,
                                          const VerifyOptions& opts);

}  // namespace pberg
