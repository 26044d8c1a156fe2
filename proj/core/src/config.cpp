#include "pberg/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pberg/errors.hpp"

namespace pberg {

namespace {

using nlohmann::json;

json domain_to_tree(const Domain& d) {
  json j;
  switch (d.kind()) {
    case Domain::Kind::Disk:
      j["kind"] = "disk";
      break;
    case Domain::Kind::Annulus:
      j["kind"] = "annulus";
      j["inner_radius"] = d.inner_radius();
      break;
    case Domain::Kind::Product:
      j["kind"] = "product";
      j["left"] = domain_to_tree(d.left());
      j["right"] = domain_to_tree(d.right());
      break;
  }
  return j;
}

Domain domain_from_tree(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disk") return Domain::disk();
  if (kind == "annulus") return Domain::annulus(j.at("inner_radius").get<double>());
  if (kind == "product")
    return Domain::product(domain_from_tree(j.at("left")),
                           domain_from_tree(j.at("right")));
  throw ParameterError("config: unknown domain kind '" + kind + "'");
}

json point_to_tree(const Point& z) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    arr.push_back(z(i).real());
    arr.push_back(z(i).imag());
  }
  return arr;
}

Point point_from_tree(const json& arr) {
  if (!arr.is_array() || arr.size() % 2 != 0)
    throw ParameterError("config: point must be a flat [re, im, ...] array");
  Point z(arr.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i)
    z(i) = Complex(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
  return z;
}

}  // namespace

void RunConfig::validate() const {
  for (double p : ps)
    if (p < 1.0) throw ParameterError("config: p values must be >= 1");
  if (radial < 2 || angular < 4) throw ParameterError("config: quadrature too coarse");
  if (degree < 0) throw ParameterError("config: degree must be >= 0");
  solver.validate();
  for (const auto& z : points)
    if (z.size() != domain.dimension())
      throw ParameterError("config: point dimension does not match domain");
}

bool RunConfig::operator==(const RunConfig& other) const {
  return config_to_json(*this) == config_to_json(other);
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["domain"] = domain_to_tree(c.domain);
  j["degree"] = c.degree;
  j["quad"] = {{"radial", c.radial}, {"angular", c.angular}};
  j["solver"] = {{"max_iterations", c.solver.max_iterations},
                 {"gradient_tol", c.solver.gradient_tol},
                 {"smoothing_initial", c.solver.smoothing_initial},
                 {"smoothing_decay", c.solver.smoothing_decay},
                 {"smoothing_final", c.solver.smoothing_final},
                 {"precondition", c.solver.precondition}};
  json ps = json::array();
  for (double p : c.ps) ps.push_back(p);
  j["p"] = ps;
  json pts = json::array();
  for (const auto& z : c.points) pts.push_back(point_to_tree(z));
  j["points"] = pts;
  j["out_dir"] = c.out_dir;
  j["seed"] = c.seed;
  j["suite"] = c.suite;
  j["count"] = c.count;
  j["tolerance"] = c.tolerance;
  j["dump_coefficients"] = c.dump_coefficients;
  return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig c;
  try {
    if (j.contains("domain")) c.domain = domain_from_tree(j["domain"]);
    if (j.contains("degree")) c.degree = j["degree"].get<int>();
    if (j.contains("quad")) {
      c.radial = j["quad"].value("radial", c.radial);
      c.angular = j["quad"].value("angular", c.angular);
    }
    if (j.contains("solver")) {
      const auto& s = j["solver"];
      c.solver.max_iterations = s.value("max_iterations", c.solver.max_iterations);
      c.solver.gradient_tol = s.value("gradient_tol", c.solver.gradient_tol);
      c.solver.smoothing_initial = s.value("smoothing_initial", c.solver.smoothing_initial);
      c.solver.smoothing_decay = s.value("smoothing_decay", c.solver.smoothing_decay);
      c.solver.smoothing_final = s.value("smoothing_final", c.solver.smoothing_final);
      c.solver.precondition = s.value("precondition", c.solver.precondition);
    }
    if (j.contains("p")) {
      c.ps.clear();
      for (const auto& v : j["p"]) c.ps.push_back(v.get<double>());
    }
    if (j.contains("points")) {
      c.points.clear();
      for (const auto& v : j["points"]) c.points.push_back(point_from_tree(v));
    }
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("suite")) c.suite = j["suite"].get<std::string>();
    if (j.contains("count")) c.count = j["count"].get<int>();
    if (j.contains("tolerance")) c.tolerance = j["tolerance"].get<double>();
    if (j.contains("dump_coefficients"))
      c.dump_coefficients = j["dump_coefficients"].get<bool>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string domain_to_json(const Domain& domain) { return domain_to_tree(domain).dump(); }

Domain domain_from_json(const std::string& text) {
  try {
    return domain_from_tree(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("domain: invalid JSON: ") + e.what());
  }
}

}  // namespace pberg
