#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pberg/commands.hpp"
#include "pberg/errors.hpp"
#include "pberg/verify.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::string p_list;
  std::string quad;
  std::string suite;
  int degree = -1;
  long long seed = -1;
  int count = -1;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--p", f.p_list, "comma-separated p values (e.g. 2,3,4)");
  cmd->add_option("--degree", f.degree, "basis truncation degree");
  cmd->add_option("--quad", f.quad, "quadrature resolution RxA (e.g. 64x128)");
  cmd->add_option("--suite", f.suite, "verification suite name");
  cmd->add_option("--count", f.count, "sample count override");
}

pberg::RunConfig assemble(const Flags& f) {
  pberg::RunConfig config;
  if (!f.config_path.empty()) config = pberg::load_config_file(f.config_path);
  // flags win over the config file
  if (!f.out_dir.empty()) config.out_dir = f.out_dir;
  if (f.seed >= 0) config.seed = static_cast<std::uint64_t>(f.seed);
  if (f.degree >= 0) config.degree = f.degree;
  if (f.count >= 0) config.count = f.count;
  if (!f.suite.empty()) config.suite = f.suite;
  try {
    if (!f.p_list.empty()) {
      config.ps.clear();
      std::stringstream ss(f.p_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) config.ps.push_back(std::stod(tok));
    }
    if (!f.quad.empty()) {
      const auto x = f.quad.find('x');
      if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
      config.radial = std::stoi(f.quad.substr(0, x));
      config.angular = std::stoi(f.quad.substr(x + 1));
    }
  } catch (const std::invalid_argument&) {
    throw pberg::ParameterError(
        "--p expects comma-separated numbers and --quad expects RxA, e.g. 64x128");
  }
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-Bergman minimizers, kernels, and the p-Skwarczynski distance"};
  app.require_subcommand(1);

  Flags flags;
  auto* kernel = app.add_subcommand("kernel", "m_p(z0) and K_p(z0) tables");
  auto* distance = app.add_subcommand("distance", "pairwise rho_p matrices");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* sweep = app.add_subcommand("sweep", "p-continuity sweep of rho_q");
  auto* constants = app.add_subcommand("constants", "appendix constants c_p, C_p");
  for (auto* cmd : {kernel, distance, verify, sweep, constants})
    add_common_flags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    const pberg::RunConfig config = assemble(flags);
    pberg::CommandResult result;
    if (kernel->parsed()) result = pberg::cmd_kernel(config);
    if (distance->parsed()) result = pberg::cmd_distance(config);
    if (verify->parsed()) result = pberg::cmd_verify(config);
    if (sweep->parsed()) result = pberg::cmd_sweep(config);
    if (constants->parsed()) result = pberg::cmd_constants(config);

    std::printf("%s\n", result.summary.c_str());
    for (const auto& f : result.files) std::printf("wrote %s\n", f.c_str());
    return result.exit_code;
  } catch (const pberg::ParameterError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
