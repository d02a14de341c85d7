#pragma once

#include <optional>
#include <vector>

#include "diophlab/numeric/oracle.hpp"

namespace diophlab {

struct NearestInteger {
  Integer n;
  PrecisionReal residual;  // x - n
};

// Round-half-even on exact points. Throws PrecisionInsufficient when the
// enclosure is too wide or straddles a half-integer.
NearestInteger nearest_integer(const PrecisionReal& x);
// Evaluates at `bits`, doubling up to `cap_bits` while undecided.
NearestInteger nearest_integer(const RealOracle& x, long bits, long cap_bits = 4096);

// Distance to the nearest integer, as an enclosure.
PrecisionReal distance_to_integer(const PrecisionReal& x);

enum class StdMode { Line, Circle };

struct Cluster {
  double center = 0;
  double density = 0;       // fraction of all values
  double tail_density = 0;  // fraction of the final half
  std::size_t count = 0;
};

struct StdEstimate {
  bool has_limit = false;
  std::optional<Interval> limit;  // hull of the dominant cluster's tail members
  std::vector<Cluster> clusters;  // sorted by center; densities sum to 1
};

struct StdPolicy {
  double rho = 0.9;
  double radius = 1.0 / 32;
  StdMode mode = StdMode::Line;
};

StdEstimate std_estimate(const std::vector<PrecisionReal>& values, const StdPolicy& policy);

}  // namespace diophlab
