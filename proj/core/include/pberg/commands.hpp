#pragma once

#include "pberg/config.hpp"

namespace pberg {

/// Outcome of a CLI command: process exit code, files written, and a short
/// human-readable summary (printed by the tool).
struct CommandResult {
  int exit_code = 0;
  std::vector<std::string> files;
  std::string summary;
};

/// Per-(p, z0) table of m_p(z0), K_p(z0) and solver diagnostics
/// (kernel.csv; optional kernel_coefficients.jsonl).
CommandResult cmd_kernel(const RunConfig& config);

/// Pairwise rho_p matrix over the configured points
/// (distance.csv with header z_re, z_im, w_re, w_im, p, rho, theta_opt).
CommandResult cmd_distance(const RunConfig& config);

/// Runs the configured verification suite; writes report.jsonl and
/// summary.txt. Exit code 0 iff no check fails beyond tolerance.
CommandResult cmd_verify(const RunConfig& config);

/// p-continuity sweep around the first configured p (sweep.csv + reports).
CommandResult cmd_sweep(const RunConfig& config);

/// Appendix constants table c_p, C_p, I1, I2 (constants.csv).
CommandResult cmd_constants(const RunConfig& config);

}  // namespace pberg
