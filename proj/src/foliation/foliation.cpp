#include "diophlab/foliation/foliation.hpp"

#include <cmath>
#include <cstdio>

#include "diophlab/core/error.hpp"
#include "diophlab/lattice/lll.hpp"
#include "diophlab/numeric/discrepancy.hpp"

namespace diophlab::foliation {
namespace {

// Fractional part in [0, 1) of an enclosure, as a double.
double frac01(const PrecisionReal& x) {
  Integer f = x.enclosure().floor_lo();
  double v = (x - PrecisionReal(Rational(f), x.precision())).mid_double();
  v -= std::floor(v);
  return v >= 1.0 ? 0.0 : v;
}

double circle_distance(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

LeafType leaf_type(const matrixdioph::IndependenceVerdict& v, std::size_t s, std::size_t length) {
  LeafType out;
  out.s = s;
  out.height = v.height;
  for (const auto& c : v.relations) {
    IntVector rel(c.relation.begin(), c.relation.begin() + static_cast<long>(length));
    rel = primitive_normalized(rel);
    if (c.status == lattice::CertificateStatus::ExactVerified) out.lattice.push_back(rel);
    else out.empirical.push_back(rel);
  }
  out.rank = out.lattice.empty() ? 0 : lattice::rank(out.lattice);
  if (out.rank > 0) out.kind = LeafKind::NonSimplyConnected;
  else out.kind = v.exact && out.empirical.empty() ? LeafKind::Planar : LeafKind::PlanarUpTo;
  return out;
}

std::string fmt(double x, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

std::string_view leaf_kind_name(LeafKind k) {
  switch (k) {
    case LeafKind::Planar: return "Planar";
    case LeafKind::PlanarUpTo: return "PlanarUpTo";
    case LeafKind::NonSimplyConnected: return "NonSimplyConnected";
  }
  return "?";
}

std::string LeafType::describe() const {
  const std::string plane = "R^" + std::to_string(s);
  if (kind == LeafKind::PlanarUpTo) return plane + " up to H = " + to_string(height);
  if (rank == 0) return plane;
  if (rank == s) return "T^" + std::to_string(s);
  return "T^" + std::to_string(rank) + " x R^" + std::to_string(s - rank);
}

LeafReport classify_leaves(const RealMatrix& theta, const Integer& height, const Config& config) {
  if (height < 1) fail(ErrorCode::InvalidArgument, "height bound must be at least 1");
  const std::size_t s = theta.s(), r = theta.r();
  LeafReport out;
  out.inhomogeneous = leaf_type(matrixdioph::inhomogeneous_independence(theta, height, config), s, s + r);
  out.homogeneous = leaf_type(matrixdioph::homogeneous_independence(theta, height, config), s, s);
  return out;
}

MinimalityVerdict minimality(const RealMatrix& theta, const Integer& height, std::size_t samples,
                             const Config& config) {
  MinimalityVerdict out;
  out.closure = matrixdioph::torus_closure(theta, height, samples, config);
  out.minimal = out.closure.kind == matrixdioph::ClosureKind::FullTorus;
  switch (out.closure.kind) {
    case matrixdioph::ClosureKind::FullTorus: out.descriptor = "FullTorus"; break;
    case matrixdioph::ClosureKind::FiniteGroup:
      out.descriptor = "FiniteGroup(" + to_string(out.closure.order) + ")";
      break;
    case matrixdioph::ClosureKind::SubtorusCoset:
      out.descriptor = "SubtorusCoset(dim " + std::to_string(out.closure.dimension) + ")";
      break;
  }
  return out;
}

namespace {

struct Parameters {
  std::vector<PrecisionReal> start, step;
};

Parameters parameters(const OrbitSample& sample, const std::size_t s, long bits) {
  Parameters p;
  for (std::size_t j = 0; j < s; ++j) {
    p.start.emplace_back(sample.start[j], bits);
    p.step.push_back(RealOracle::parse(sample.step[j]).eval(bits));
  }
  return p;
}

}  // namespace

OrbitSample orbit_sample(const RealMatrix& theta, std::size_t n, const RatVector& start, const OracleVector& step,
                         const Config& config) {
  const std::size_t s = theta.s(), r = theta.r();
  if (s == 0 || r == 0) fail(ErrorCode::DimensionMismatch, "empty matrix");
  if (!start.empty() && start.size() != s) fail(ErrorCode::DimensionMismatch, "start needs s coordinates");
  if (!step.empty() && step.size() != s) fail(ErrorCode::DimensionMismatch, "step needs s coordinates");
  OrbitSample out;
  out.s = s;
  out.r = r;
  out.theta = theta.key();
  out.start = start.empty() ? RatVector(s, Rational(0)) : start;
  for (std::size_t j = 0; j < s; ++j)
    out.step.push_back(step.empty() ? (j == 0 ? "1" : "0") : step[j].literal());
  // Enough bits that k * theta keeps 64 fractional bits for every k < n.
  const long bits = std::max<long>(config.precision, 128 + static_cast<long>(std::log2(static_cast<double>(n) + 1)));
  Parameters p = parameters(out, s, bits);
  std::vector<std::vector<PrecisionReal>> th(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) th[i].push_back(theta.at(i, j).eval(bits));
  out.points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PrecisionReal kk(Rational(static_cast<long>(k)), bits);
    std::vector<PrecisionReal> t;
    std::vector<double> point;
    for (std::size_t j = 0; j < s; ++j) {
      t.push_back(p.start[j] + kk * p.step[j]);
      point.push_back(frac01(t.back()));
    }
    for (std::size_t i = 0; i < r; ++i) {
      PrecisionReal y(Rational(0), bits);
      for (std::size_t j = 0; j < s; ++j) y = y + th[i][j] * t[j];
      point.push_back(frac01(y));
    }
    out.points.push_back(std::move(point));
  }
  return out;
}

double transversal_discrepancy(const OrbitSample& sample) {
  if (sample.points.empty()) return 0;
  std::vector<std::vector<double>> ys;
  for (const auto& p : sample.points) ys.emplace_back(p.begin() + static_cast<long>(sample.s), p.end());
  if (sample.r == 1) {
    std::vector<double> xs;
    for (const auto& y : ys) xs.push_back(y[0]);
    return star_discrepancy_1d(std::move(xs));
  }
  return grid_star_discrepancy(ys);
}

double leaf_equation_defect(const RealMatrix& theta, const OrbitSample& sample, const Config& config) {
  const long bits = 2 * std::max<long>(config.precision, 128);
  Parameters p = parameters(sample, sample.s, bits);
  double worst = 0;
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    const PrecisionReal kk(Rational(static_cast<long>(k)), bits);
    for (std::size_t i = 0; i < sample.r; ++i) {
      PrecisionReal y(Rational(0), bits);
      for (std::size_t j = 0; j < sample.s; ++j) y = y + theta.at(i, j).eval(bits) * (p.start[j] + kk * p.step[j]);
      worst = std::max(worst, circle_distance(frac01(y), sample.points[k][sample.s + i]));
    }
  }
  return worst;
}

OrbitSample covering_map(const OrbitSample& sample, long n) {
  if (sample.s != 1 || sample.r != 1) fail(ErrorCode::DimensionMismatch, "covering maps act on 1 x 1 samples");
  if (n < 1) fail(ErrorCode::NotPositive, "covering degree must be positive");
  OrbitSample out = sample;
  for (auto& p : out.points) {
    double y = p[1] * static_cast<double>(n);
    p[1] = y - std::floor(y);
  }
  return out;
}

std::vector<CoveringLevel> covering_tower(const RealOracle& theta, const std::vector<long>& ns, std::size_t points,
                                          const Config& config) {
  if (ns.empty()) fail(ErrorCode::InvalidArgument, "covering tower needs at least one degree");
  const RealMatrix base = RealMatrix::from_rows({{theta}});
  const OrbitSample target = orbit_sample(base, points, {}, {}, config);
  std::vector<CoveringLevel> out;
  for (long n : ns) {
    if (n < 1) fail(ErrorCode::NotPositive, "covering degree must be positive");
    CoveringLevel level;
    level.n = n;
    const RealMatrix cover = RealMatrix::from_rows({{theta.scaled(Rational(1, n))}});
    level.source = orbit_sample(cover, points, {}, {}, config);
    level.image = covering_map(level.source, n);
    level.image.theta = base.key();
    for (std::size_t k = 0; k < points; ++k)
      for (std::size_t c = 0; c < 2; ++c)
        level.max_deviation =
            std::max(level.max_deviation, circle_distance(level.image.points[k][c], target.points[k][c]));
    // Doubles carry the sample; n multiplies their rounding error.
    level.verified = level.max_deviation <= 1e-12 * static_cast<double>(n);
    out.push_back(std::move(level));
  }
  return out;
}

std::string render(const OrbitSample& sample, RenderFormat format, const RenderOptions& options) {
  const std::size_t dim = sample.dimension();
  std::string out;
  if (format == RenderFormat::Csv) {
    out = "k";
    for (std::size_t c = 1; c <= dim; ++c) out += ",x" + std::to_string(c);
    out += "\n";
    for (std::size_t k = 0; k < sample.points.size(); ++k) {
      out += std::to_string(k);
      for (double v : sample.points[k]) out += "," + fmt(v, "%.17g");
      out += "\n";
    }
    return out;
  }
  std::pair<std::size_t, std::size_t> proj{1, 2};
  if (options.projection) proj = *options.projection;
  else if (dim > 2)
    fail(ErrorCode::UnsupportedProjection, "dimension " + std::to_string(dim) + " needs a coordinate pair to draw");
  if (proj.first < 1 || proj.second < 1 || proj.first > dim || proj.second > dim || proj.first == proj.second)
    fail(ErrorCode::UnsupportedProjection, "projection " + std::to_string(proj.first) + "," +
                                               std::to_string(proj.second) + " is not a pair of distinct coordinates in 1.." +
                                               std::to_string(dim));
  out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& p : sample.points) {
    const double x = p[proj.first - 1] * 512.0;
    const double y = (1.0 - p[proj.second - 1]) * 512.0;
    out += "<circle cx=\"" + fmt(x, "%.3f") + "\" cy=\"" + fmt(y, "%.3f") + "\" r=\"0.75\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace diophlab::foliation
