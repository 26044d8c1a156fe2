#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pberg/minimizer.hpp"

namespace pberg {

/// One reproducible experiment description: domain, discretization, solver
/// knobs, p values, evaluation points, output location, and RNG seed.
/// Serialized as JSON; command-line flags override individual fields.
struct RunConfig {
  Domain domain = Domain::disk();
  int degree = 0;  // 0 -> per-domain default (disk 24, annulus 16)
  int radial = 64;
  int angular = 128;
  SolverOptions solver;
  std::vector<double> ps;      // empty -> per-command default
  std::vector<Point> points;   // empty -> per-command default
  std::string out_dir = "out";
  std::uint64_t seed = 987654321;
  std::string suite = "all";   // verify subcommand
  int count = 0;               // sample count override (0 -> default)
  double tolerance = 1e-6;     // inequality margin tolerance
  bool dump_coefficients = false;

  void validate() const;  // p >= 1, resolutions, point dimensions
  bool operator==(const RunConfig& other) const;
};

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

std::string domain_to_json(const Domain& domain);
Domain domain_from_json(const std::string& text);

}  // namespace pberg
