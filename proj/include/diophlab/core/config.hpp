#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "diophlab/numeric/integer.hpp"

namespace diophlab {

// Every tunable bound in one place; echoed into every CLI output.
struct Config {
  long precision = 256;        // working precision in bits, >= 32
  long precision_cap = 4096;   // doubling stops here
  Rational delta = Rational(99, 100);  // LLL parameter in (1/4, 1]
  Integer height = 1000;       // coefficient height bound H
  unsigned degree = 4;         // polynomial degree bound
  double tau = 1e-3;           // membership tolerance
  double lambda_min = 0.1;     // minimal accepted decay rate
  double r2_min = 0.9;         // minimal accepted fit quality
  std::size_t length = 12;     // constructed sequence length N
  unsigned long witness_bound = 10000;
  unsigned long enumeration_cap = 1000000;
  unsigned hat_stages = 6;
  unsigned long divisible_bound = 10;
  double rho = 0.9;            // cluster tail density
  double cluster_radius = 1.0 / 32;
  unsigned long orbit_points = 1000;
  unsigned long scan_cap = 10000000;
  std::uint64_t seed = 1;

  // Throws InvalidArgument when any field leaves its documented range.
  void validate() const;
  nlohmann::json to_json() const;
  // Overlays keys present in a TOML document; unknown keys are rejected.
  void apply_toml(const std::string& document);
  void apply_toml_file(const std::string& path);
  // Defaults overlaid with $DIOPHLAB_CONFIG (if set) then `path` (if given).
  static Config load(const std::optional<std::string>& path);
};

}  // namespace diophlab
