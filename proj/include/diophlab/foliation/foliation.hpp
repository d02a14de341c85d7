#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diophlab/core/config.hpp"
#include "diophlab/matrixdioph/matrixdioph.hpp"

namespace diophlab::foliation {

using matrixdioph::RealMatrix;

enum class LeafKind { Planar, PlanarUpTo, NonSimplyConnected };
std::string_view leaf_kind_name(LeafKind k);

// Leaves of one foliation as R^s / (lattice of rank `rank`).
struct LeafType {
  LeafKind kind = LeafKind::Planar;
  std::size_t rank = 0;
  std::size_t s = 0;
  std::vector<IntVector> lattice;    // ExactVerified basis vectors
  std::vector<IntVector> empirical;  // excluded from the topology claim
  Integer height;
  // "R^2", "T^1", "T^1 x R^1"; PlanarUpTo appends the height.
  std::string describe() const;
};

// F(Theta) on T^(s+r) with Gamma = {(n, n_perp) : Theta n = n_perp}, and the
// homogeneous f(Theta) with gamma = {n : Theta n = 0}.
struct LeafReport {
  LeafType inhomogeneous;
  LeafType homogeneous;
};

LeafReport classify_leaves(const RealMatrix& theta, const Integer& height, const Config& config = {});

struct MinimalityVerdict {
  bool minimal = false;
  matrixdioph::TorusClosure closure;
  std::string descriptor;  // "FullTorus", "FiniteGroup(2)", "SubtorusCoset(dim 1)"
};

MinimalityVerdict minimality(const RealMatrix& theta, const Integer& height, std::size_t samples,
                             const Config& config = {});

// Points (t mod 1, Theta t mod 1) with t = start + k step, k = 0..N-1.
struct OrbitSample {
  std::size_t s = 0, r = 0;
  std::vector<std::vector<double>> points;
  std::string theta;
  RatVector start;
  std::vector<std::string> step;
  std::size_t dimension() const { return s + r; }
};

// An empty `step` means e_1, which samples the transversal return map.
OrbitSample orbit_sample(const RealMatrix& theta, std::size_t n, const RatVector& start = {},
                         const OracleVector& step = {}, const Config& config = {});

// Star discrepancy of the Theta coordinates (exact for r = 1, grid otherwise).
double transversal_discrepancy(const OrbitSample& sample);

// Largest circle distance between a point's Theta coordinates and a fresh
// enclosure of Theta t for its parameter.
double leaf_equation_defect(const RealMatrix& theta, const OrbitSample& sample, const Config& config = {});

// (x, y) -> (x, n y) on a 1 x 1 sample.
OrbitSample covering_map(const OrbitSample& sample, long n);

struct CoveringLevel {
  long n = 1;
  OrbitSample source;  // F(theta / n)
  OrbitSample image;   // its image, on F(theta)
  double max_deviation = 0;
  bool verified = false;
};

std::vector<CoveringLevel> covering_tower(const RealOracle& theta, const std::vector<long>& ns, std::size_t points,
                                          const Config& config = {});

enum class RenderFormat { Csv, Svg };

struct RenderOptions {
  // 1-based coordinates drawn in the svg; required above dimension 2.
  std::optional<std::pair<std::size_t, std::size_t>> projection;
};

std::string render(const OrbitSample& sample, RenderFormat format, const RenderOptions& options = {});

}  // namespace diophlab::foliation
