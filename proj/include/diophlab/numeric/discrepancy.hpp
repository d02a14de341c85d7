#pragma once

#include <cstddef>
#include <vector>

namespace diophlab {

// Exact star discrepancy of points in [0,1).
double star_discrepancy_1d(std::vector<double> xs);

// Star discrepancy over anchored boxes [0, a/g)^d with grid corners; a lower
// bound for the true star discrepancy, exact in the grid limit.
double grid_star_discrepancy(const std::vector<std::vector<double>>& points, std::size_t grid = 32);

}  // namespace diophlab
