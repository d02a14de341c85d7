#pragma once

#include <utility>
#include <vector>

#include "diophlab/numeric/oracle.hpp"

namespace diophlab {

struct ContinuedFraction {
  std::vector<Integer> partial_quotients;
  // (p_k, q_k) for every partial quotient.
  std::vector<std::pair<Integer, Integer>> convergents;
  bool terminated = false;  // the expansion is finite and complete
};

// First k terms (fewer if the expansion terminates). Precision doubles from
// `bits` up to `cap_bits` until k terms are certified.
ContinuedFraction continued_fraction(const RealOracle& x, std::size_t k, long bits = 256, long cap_bits = 1 << 14);

}  // namespace diophlab
