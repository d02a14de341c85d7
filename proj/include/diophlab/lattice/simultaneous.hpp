#pragma once

#include <vector>

#include "diophlab/numeric/oracle.hpp"

namespace diophlab::lattice {

struct SimultaneousApprox {
  Integer q;
  IntVector p;
  std::vector<PrecisionReal> errors;  // q*theta_i - p_i
  double max_error = 0;
  // Certified: max_i |q theta_i - p_i| <= Q^(-1/r).
  bool meets_dirichlet_bound = false;
};

struct SimultaneousOptions {
  long precision = 256;
  // Up to this Q every q is scanned; above it an LLL search is used.
  unsigned long scan_cap = 10000000;
};

// Among 1 <= q <= Q, the q minimizing max_i ||q theta_i|| (smallest q on ties
// in the scanned and continued-fraction routes).
SimultaneousApprox simultaneous_approx(const OracleVector& theta, const Integer& Q,
                                       const SimultaneousOptions& options = {});

// Certified check of max_i |e_i|^r * Q <= 1.
bool meets_dirichlet_bound(const std::vector<PrecisionReal>& errors, const Integer& Q);

}  // namespace diophlab::lattice
