#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "pberg/commands.hpp"
#include "pberg/errors.hpp"

using namespace pberg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string fresh_dir(const std::string& tag) {
  const std::string dir = "cli_out_" + tag;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config serialization round-trips") {
  RunConfig c;
  c.domain = Domain::product(Domain::disk(), Domain::annulus(0.5));
  c.degree = 10;
  c.radial = 20;
  c.angular = 40;
  c.ps = {1.5, 2.0};
  Point z(2);
  z << Complex(0.1, -0.2), Complex(0.7, 0.0);
  c.points = {z};
  c.seed = 12345;
  c.suite = "taylor";
  c.count = 7;
  c.tolerance = 1e-7;
  c.solver.gradient_tol = 1e-8;

  const std::string text = config_to_json(c);
  const RunConfig back = config_from_json(text);
  CHECK(back == c);
  CHECK(config_to_json(back) == text);
}

TEST_CASE("config validation rejects bad values") {
  CHECK_THROWS_AS(config_from_json(R"({"p": [0.5]})"), ParameterError);
  CHECK_THROWS_AS(config_from_json(R"({"quad": {"radial": 1}})"), ParameterError);
  CHECK_THROWS_AS(config_from_json("not json"), ParameterError);
  CHECK_THROWS_AS(config_from_json(R"({"domain": {"kind": "cube"}})"), ParameterError);
  // point dimension must match the domain
  CHECK_THROWS_AS(config_from_json(R"({"points": [[0.0,0.0,0.0,0.0]]})"), ParameterError);

  const Domain d = domain_from_json(R"({"kind":"annulus","inner_radius":0.25})");
  CHECK(d.kind() == Domain::Kind::Annulus);
  CHECK(domain_from_json(domain_to_json(d)) == d);
}

TEST_CASE("cmd_kernel writes closed-form-accurate K_2 rows") {
  RunConfig c;
  c.points = {point1(Complex(0.0)), point1(Complex(0.25)), point1(Complex(0.5))};
  c.ps = {2.0};
  c.out_dir = fresh_dir("kernel");
  const auto res = cmd_kernel(c);
  CHECK(res.exit_code == 0);

  const auto rows = read_csv(c.out_dir + "/kernel.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "p");
  for (int i = 1; i <= 3; ++i) {
    const double r = std::stod(rows[i][1]);
    const double K = std::stod(rows[i][4]);
    const double expect = 1.0 / (M_PI * std::pow(1.0 - r * r, 2.0));
    CHECK(std::abs(K - expect) / expect < 1e-6);
    CHECK(rows[i][8] == "ok");
  }
}

TEST_CASE("cmd_kernel with an empty point list emits a header-only table") {
  RunConfig c;
  c.out_dir = fresh_dir("kernel_empty");
  const auto res = cmd_kernel(c);
  CHECK(res.exit_code == 0);
  const auto rows = read_csv(c.out_dir + "/kernel.csv");
  CHECK(rows.size() == 1);
}

TEST_CASE("cmd_kernel can dump coefficients") {
  RunConfig c;
  c.points = {point1(Complex(0.3))};
  c.ps = {2.0};
  c.degree = 8;
  c.radial = 24;
  c.angular = 48;
  c.dump_coefficients = true;
  c.out_dir = fresh_dir("kernel_dump");
  const auto res = cmd_kernel(c);
  CHECK(res.files.size() == 2);
  const std::string dump = slurp(c.out_dir + "/kernel_coefficients.jsonl");
  CHECK(dump.find("\"coefficients\"") != std::string::npos);
  CHECK(dump.find("\"m_value\"") != std::string::npos);
  CHECK(dump.find("\"gradient_residual\"") != std::string::npos);
}

TEST_CASE("cmd_distance produces a symmetric matrix with the oracle value") {
  RunConfig c;
  c.points = {point1(Complex(0.0)), point1(Complex(0.5))};
  c.ps = {2.0};
  c.out_dir = fresh_dir("distance");
  const auto res = cmd_distance(c);
  CHECK(res.exit_code == 0);

  const auto rows = read_csv(c.out_dir + "/distance.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "z_re");
  // row order: (0,0), (0,w), (w,0), (w,w)
  const double d01 = std::stod(rows[2][5]);
  const double d10 = std::stod(rows[3][5]);
  CHECK(std::abs(d01 - std::sqrt(0.5)) < 1e-4);
  CHECK(std::abs(d01 - d10) < 1e-9);
  CHECK(std::stod(rows[1][5]) < 1e-8);
  CHECK(std::stod(rows[4][5]) < 1e-8);
}

TEST_CASE("cmd_distance single point gives the 1x1 zero matrix") {
  RunConfig c;
  c.points = {point1(Complex(0.2, 0.1))};
  c.ps = {2.0};
  c.out_dir = fresh_dir("distance_single");
  cmd_distance(c);
  const auto rows = read_csv(c.out_dir + "/distance.csv");
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][5]) < 1e-8);
}

TEST_CASE("cmd_verify is deterministic for a fixed seed") {
  RunConfig c;
  c.suite = "taylor";
  c.count = 50;
  c.seed = 424242;

  c.out_dir = fresh_dir("verify_a");
  const auto res1 = cmd_verify(c);
  c.out_dir = fresh_dir("verify_b");
  const auto res2 = cmd_verify(c);

  CHECK(res1.exit_code == 0);
  CHECK(res2.exit_code == 0);
  CHECK(slurp("cli_out_verify_a/report.jsonl") == slurp("cli_out_verify_b/report.jsonl"));
  CHECK(slurp("cli_out_verify_a/summary.txt") == slurp("cli_out_verify_b/summary.txt"));
  CHECK(!slurp("cli_out_verify_a/report.jsonl").empty());
}

TEST_CASE("cmd_verify rejects unknown suites with a usage error") {
  RunConfig c;
  c.suite = "no-such-suite";
  c.out_dir = fresh_dir("verify_bad");
  CHECK_THROWS_AS(cmd_verify(c), ParameterError);
}

TEST_CASE("cmd_sweep writes the q grid and reports") {
  RunConfig c;
  c.out_dir = fresh_dir("sweep");
  c.degree = 16;
  c.radial = 48;
  c.angular = 96;
  const auto res = cmd_sweep(c);
  CHECK(res.exit_code == 0);
  const auto rows = read_csv(c.out_dir + "/sweep.csv");
  REQUIRE(rows.size() == 7);  // header + 6 q values
  CHECK(rows[0][0] == "q");
  CHECK(fs::exists(c.out_dir + "/sweep_report.jsonl"));
}

TEST_CASE("cmd_constants table") {
  RunConfig c;
  c.ps = {3.0, 4.0};
  c.out_dir = fresh_dir("constants");
  const auto res = cmd_constants(c);
  CHECK(res.exit_code == 0);
  const auto rows = read_csv(c.out_dir + "/constants.csv");
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(std::stod(rows[2][3]) - 11.0 / 768.0) < 1e-12);

  RunConfig bad;
  bad.ps = {1.5};
  bad.out_dir = fresh_dir("constants_bad");
  CHECK_THROWS_AS(cmd_constants(bad), ParameterError);
}

#ifdef PBERG_CLI_PATH
TEST_CASE("the pberg binary handles flags and exit codes") {
  const std::string bin = PBERG_CLI_PATH;
  const std::string dir = fresh_dir("bin");
  CHECK(std::system((bin + " constants --p 3 --out " + dir + " > /dev/null").c_str()) == 0);
  CHECK(fs::exists(dir + "/constants.csv"));

  const int bad =
      std::system((bin + " verify --suite bogus --out " + dir + " 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(bad) == 2);

  const int usage = std::system((bin + " 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(usage) != 0);
}

TEST_CASE("binary flags override config-file fields") {
  const std::string bin = PBERG_CLI_PATH;
  const std::string dir = fresh_dir("bin_override");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir + "/cfg.json");
    cfg << R"({"p": [3.0], "out_dir": ")" << dir << R"(/ignored"})";
  }
  CHECK(std::system((bin + " constants --config " + dir + "/cfg.json --p 4 --out " +
                     dir + " > /dev/null")
                        .c_str()) == 0);
  const auto rows = read_csv(dir + "/constants.csv");
  REQUIRE(rows.size() == 2);  // the --p flag replaced the config's p list
  CHECK(std::stod(rows[1][0]) == 4.0);
  CHECK_FALSE(fs::exists(dir + "/ignored"));
}

TEST_CASE("binary verify runs are byte-identical for a fixed seed") {
  const std::string bin = PBERG_CLI_PATH;
  const std::string da = fresh_dir("bin_det_a"), db = fresh_dir("bin_det_b");
  const std::string args = " verify --suite taylor --count 30 --seed 11 --out ";
  CHECK(std::system((bin + args + da + " > /dev/null").c_str()) == 0);
  CHECK(std::system((bin + args + db + " > /dev/null").c_str()) == 0);
  CHECK(slurp(da + "/report.jsonl") == slurp(db + "/report.jsonl"));
}
#endif
