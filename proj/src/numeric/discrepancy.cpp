#include "diophlab/numeric/discrepancy.hpp"

#include <algorithm>
#include <cmath>

#include "diophlab/core/error.hpp"

namespace diophlab {

double star_discrepancy_1d(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / n - xs[i]);
    d = std::max(d, xs[i] - static_cast<double>(i) / n);
  }
  return d;
}

double grid_star_discrepancy(const std::vector<std::vector<double>>& points, std::size_t grid) {
  if (points.empty()) return 0;
  const std::size_t dim = points.front().size();
  if (dim == 1) {
    std::vector<double> xs;
    for (const auto& p : points) xs.push_back(p[0]);
    return star_discrepancy_1d(std::move(xs));
  }
  if (dim > 3) fail(ErrorCode::InvalidArgument, "grid discrepancy supports at most 3 dimensions");
  std::size_t cells = 1;
  for (std::size_t k = 0; k < dim; ++k) cells *= grid;
  std::vector<double> count(cells, 0.0);
  for (const auto& p : points) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      auto c = static_cast<std::size_t>(std::floor(p[k] * static_cast<double>(grid)));
      idx = idx * grid + std::min(c, grid - 1);
    }
    count[idx] += 1;
  }
  // Prefix sums along each axis turn cell counts into anchored box counts.
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < dim; ++axis) {
    for (std::size_t i = 0; i < cells; ++i)
      if ((i / stride) % grid != 0) count[i] += count[i - stride];
    stride *= grid;
  }
  const double n = static_cast<double>(points.size());
  double d = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    double vol = 1;
    std::size_t rest = i;
    for (std::size_t k = 0; k < dim; ++k) {
      vol *= static_cast<double>(rest % grid + 1) / static_cast<double>(grid);
      rest /= grid;
    }
    d = std::max(d, std::fabs(count[i] / n - vol));
  }
  return d;
}

}  // namespace diophlab
