#include "diophlab/core/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "diophlab/core/error.hpp"
#include "toml/toml.hpp"

namespace diophlab {

void Config::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::InvalidArgument, std::string("config: ") + what);
  };
  require(precision >= 32 && precision <= precision_cap, "precision must lie in [32, precision_cap]");
  require(precision_cap <= (1L << 16), "precision_cap must not exceed 65536");
  require(delta > Rational(1, 4) && delta <= 1, "delta must lie in (1/4, 1]");
  require(height >= 1, "height must be at least 1");
  require(degree >= 1 && degree <= 12, "degree must lie in [1, 12]");
  require(tau > 0 && tau < 0.5, "tau must lie in (0, 1/2)");
  require(lambda_min > 0, "lambda_min must be positive");
  require(r2_min > 0 && r2_min <= 1, "r2_min must lie in (0, 1]");
  require(length >= 3 && length <= 64, "length must lie in [3, 64]");
  require(witness_bound >= 1, "witness_bound must be positive");
  require(enumeration_cap >= 1, "enumeration_cap must be positive");
  require(hat_stages >= 1 && hat_stages <= 10, "hat_stages must lie in [1, 10]");
  require(divisible_bound >= 1 && divisible_bound <= 40, "divisible_bound must lie in [1, 40]");
  require(rho > 0 && rho <= 1, "rho must lie in (0, 1]");
  require(cluster_radius > 0 && cluster_radius < 0.5, "cluster_radius must lie in (0, 1/2)");
  require(orbit_points >= 1 && orbit_points <= 10000000, "orbit_points must lie in [1, 1e7]");
  require(scan_cap >= 1, "scan_cap must be positive");
}

nlohmann::json Config::to_json() const {
  nlohmann::json j;
  j["precision"] = precision;
  j["precision_cap"] = precision_cap;
  j["delta"] = to_string(delta);
  j["height"] = to_string(height);
  j["degree"] = degree;
  j["tau"] = tau;
  j["lambda_min"] = lambda_min;
  j["r2_min"] = r2_min;
  j["length"] = length;
  j["witness_bound"] = witness_bound;
  j["enumeration_cap"] = enumeration_cap;
  j["hat_stages"] = hat_stages;
  j["divisible_bound"] = divisible_bound;
  j["rho"] = rho;
  j["cluster_radius"] = cluster_radius;
  j["orbit_points"] = orbit_points;
  j["scan_cap"] = scan_cap;
  j["seed"] = seed;
  return j;
}

namespace {

double as_double(const toml::node& n, const std::string& key) {
  if (auto v = n.value<double>()) return *v;
  fail(ErrorCode::InvalidArgument, "config key '" + key + "' must be a number");
}

long long as_integer(const toml::node& n, const std::string& key) {
  if (n.is_integer()) return *n.value<long long>();
  fail(ErrorCode::InvalidArgument, "config key '" + key + "' must be an integer");
}

std::string as_text(const toml::node& n) {
  if (auto s = n.value<std::string>()) return *s;
  if (n.is_integer()) return std::to_string(*n.value<long long>());
  if (auto d = n.value<double>()) return std::to_string(*d);
  fail(ErrorCode::InvalidArgument, "config value must be a string or number");
}

}  // namespace

void Config::apply_toml(const std::string& document) {
  toml::table table;
  try {
    table = toml::parse(document);
  } catch (const toml::parse_error& e) {
    fail(ErrorCode::Parse, std::string("config TOML: ") + std::string(e.description()));
  }
  for (const auto& [k, node] : table) {
    std::string key(k.str());
    if (key == "precision") precision = as_integer(node, key);
    else if (key == "precision_cap") precision_cap = as_integer(node, key);
    else if (key == "delta") delta = parse_rational(as_text(node));
    else if (key == "height") height = parse_integer(as_text(node));
    else if (key == "degree") degree = static_cast<unsigned>(as_integer(node, key));
    else if (key == "tau") tau = as_double(node, key);
    else if (key == "lambda_min") lambda_min = as_double(node, key);
    else if (key == "r2_min") r2_min = as_double(node, key);
    else if (key == "length") length = static_cast<std::size_t>(as_integer(node, key));
    else if (key == "witness_bound") witness_bound = static_cast<unsigned long>(as_integer(node, key));
    else if (key == "enumeration_cap") enumeration_cap = static_cast<unsigned long>(as_integer(node, key));
    else if (key == "hat_stages") hat_stages = static_cast<unsigned>(as_integer(node, key));
    else if (key == "divisible_bound") divisible_bound = static_cast<unsigned long>(as_integer(node, key));
    else if (key == "rho") rho = as_double(node, key);
    else if (key == "cluster_radius") cluster_radius = as_double(node, key);
    else if (key == "orbit_points") orbit_points = static_cast<unsigned long>(as_integer(node, key));
    else if (key == "scan_cap") scan_cap = static_cast<unsigned long>(as_integer(node, key));
    else if (key == "seed") seed = static_cast<std::uint64_t>(as_integer(node, key));
    else fail(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
  }
  validate();
}

void Config::apply_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_toml(ss.str());
}

Config Config::load(const std::optional<std::string>& path) {
  Config c;
  if (const char* env = std::getenv("DIOPHLAB_CONFIG"); env && *env) c.apply_toml_file(env);
  if (path) c.apply_toml_file(*path);
  c.validate();
  return c;
}

}  // namespace diophlab
