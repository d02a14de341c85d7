#include "diophlab/matrixdioph/matrixdioph.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"
#include "diophlab/core/error.hpp"
#include "diophlab/lattice/lll.hpp"
#include "diophlab/lattice/simultaneous.hpp"
#include "diophlab/numeric/discrepancy.hpp"
#include "diophlab/numeric/exact.hpp"

namespace diophlab::matrixdioph {

using dagroups::MembershipStatus;

namespace {

lattice::RelationOptions relation_options(const Integer& height, const Config& config) {
  lattice::RelationOptions o;
  o.height = height;
  o.precision = config.precision;
  o.precision_cap = config.precision_cap;
  o.delta = config.delta;
  return o;
}

long max_bits(const std::vector<IntVector>& vs) {
  long b = 1;
  for (const auto& v : vs)
    for (const auto& z : v)
      if (z != 0) b = std::max<long>(b, static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)));
  return b;
}

const lattice::RelationCertificate* smallest(const std::vector<lattice::RelationCertificate>& cs) {
  const lattice::RelationCertificate* best = nullptr;
  for (const auto& c : cs)
    if (!best || height(c.relation) < height(best->relation)) best = &c;
  return best;
}

double frac01(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

bool RealMatrix::all_rational() const {
  for (const auto& row : rows)
    for (const auto& x : row)
      if (!x.is_rational()) return false;
  return true;
}

std::string RealMatrix::key() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j) out += ",";
      out += rows[i][j].literal();
    }
    out += "]";
  }
  return out + "]";
}

RealMatrix RealMatrix::from_rows(OracleMatrix rows) {
  if (rows.empty() || rows.front().empty()) fail(ErrorCode::DimensionMismatch, "matrix must be at least 1x1");
  for (const auto& row : rows)
    if (row.size() != rows.front().size()) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
  return RealMatrix{std::move(rows)};
}

RealMatrix RealMatrix::parse(std::string_view text) { return from_rows(parse_oracle_matrix(text)); }

VectorApproxSequence parse_vector_sequence(const std::string& json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("vector sequence is not JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) fail(ErrorCode::Parse, "vector sequence must be a nonempty JSON array");
  VectorApproxSequence s;
  for (const auto& row : j) {
    if (!row.is_array()) fail(ErrorCode::Parse, "vector sequence entries must be arrays");
    IntVector v;
    for (const auto& x : row) {
      if (x.is_string()) v.push_back(parse_integer(x.get<std::string>()));
      else if (x.is_number_integer()) v.push_back(parse_integer(x.dump()));
      else fail(ErrorCode::Parse, "vector entries must be integers or decimal strings");
    }
    s.entries.push_back(std::move(v));
  }
  return s;
}

VectorApproxSequence simultaneous_sequence(const RealMatrix& column, std::size_t n, const Config& config) {
  if (column.s() != 1) fail(ErrorCode::DimensionMismatch, "simultaneous sequences need an r x 1 column");
  if (n < 1) fail(ErrorCode::InvalidArgument, "sequence length must be at least 1");
  OracleVector theta;
  for (const auto& row : column.rows) theta.push_back(row[0]);
  lattice::SimultaneousOptions opt;
  opt.precision = config.precision;
  opt.scan_cap = config.scan_cap;
  VectorApproxSequence s;
  std::vector<IntVector> duals;
  bool certified = true;
  for (std::size_t i = 1; i <= n; ++i) {
    auto a = lattice::simultaneous_approx(theta, ipow(4, i), opt);
    s.entries.push_back({a.q});
    duals.push_back(a.p);
    certified = certified && a.meets_dirichlet_bound;
  }
  s.duals = std::move(duals);
  s.theta = column.key();
  s.provenance = dagroups::Provenance::Constructed;
  s.method = "simultaneous";
  // max error <= Q_i^(-1/r) = 2^(-2i/r).
  if (certified)
    s.certificates.push_back({column.key(), 1.0 + 1e-12, 2.0 / static_cast<double>(column.r())});
  return s;
}

VectorErrors vector_error_term(const RealMatrix& theta, const VectorApproxSequence& seq, bool homogeneous,
                               const Config& config) {
  const std::size_t r = theta.r(), s = theta.s();
  if (seq.entries.empty()) fail(ErrorCode::InvalidArgument, "sequence must be nonempty");
  for (const auto& e : seq.entries)
    if (e.size() != s)
      fail(ErrorCode::DimensionMismatch, "entry has " + std::to_string(e.size()) + " components, matrix has " +
                                             std::to_string(s) + " columns");
  const bool bound = !homogeneous && seq.duals && seq.theta && *seq.theta == theta.key();
  if (bound) {
    if (seq.duals->size() != seq.size()) fail(ErrorCode::LengthMismatch, "duals and entries differ in length");
    for (const auto& d : *seq.duals)
      if (d.size() != r) fail(ErrorCode::DimensionMismatch, "dual has wrong dimension");
  }
  VectorErrors out;
  const long extra = max_bits(seq.entries) + 2 * static_cast<long>(s) + 16;
  for (long bits = config.precision;; bits *= 2) {
    try {
      std::vector<std::vector<PrecisionReal>> grid(r);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < s; ++j) grid[k].push_back(theta.at(k, j).eval(bits + extra));
      out.epsilons.assign(seq.size(), {});
      out.duals.assign(seq.size(), IntVector(r));
      for (std::size_t i = 0; i < seq.size(); ++i) {
        const IntVector& n = seq.entries[i];
        for (std::size_t k = 0; k < r; ++k) {
          RatVector c(n.begin(), n.end());
          c.push_back(0);
          OracleVector xs = theta.rows[k];
          xs.push_back(RealOracle::integer(1));
          PrecisionReal x(Rational(0), grid[k][0].precision());
          for (std::size_t j = 0; j < s; ++j) x = x + PrecisionReal(Rational(n[j]), x.precision()) * grid[k][j];
          Integer dual = homogeneous ? Integer(0) : bound ? (*seq.duals)[i][k] : nearest_integer(x).n;
          out.duals[i][k] = dual;
          c.back() = -Rational(dual);
          // Exact value when the combination is provably rational.
          if (auto q = exact_rational_combination(c, xs)) out.epsilons[i].emplace_back(*q, x.precision());
          else out.epsilons[i].push_back(x - PrecisionReal(Rational(dual), x.precision()));
        }
      }
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionInsufficient || bits * 2 > config.precision_cap) throw;
    }
  }
}

VectorVerdict vector_membership(const RealMatrix& theta, const VectorApproxSequence& seq, bool homogeneous,
                                double tau, const Config& config) {
  if (!(tau > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  VectorErrors err = vector_error_term(theta, seq, homogeneous, config);
  VectorVerdict v;
  v.tau = tau;
  v.homogeneous = homogeneous;
  const Rational tau_q(tau);

  auto member = [&](MembershipStatus st, double lambda, std::string reason) {
    v.status = st;
    v.lambda = lambda;
    v.reason = std::move(reason);
    v.duals = err.duals;
    return v;
  };
  auto first_nonzero = [&](bool need_above_tau) -> bool {
    for (std::size_t i = 0; i < err.epsilons.size(); ++i)
      for (std::size_t k = 0; k < err.epsilons[i].size(); ++k) {
        const PrecisionReal& e = err.epsilons[i][k];
        bool hit = need_above_tau ? e.abs_greater_than(tau_q) : !e.certainly_zero();
        if (hit) {
          v.witness = i + 1;
          v.witness_row = k + 1;
          v.reason = "|eps_" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "| = " + e.abs().to_string(12);
          return true;
        }
      }
    return false;
  };

  bool all_zero = true;
  for (const auto& row : err.epsilons)
    for (const auto& e : row) all_zero = all_zero && e.certainly_zero();
  if (theta.all_rational()) {
    if (first_nonzero(false)) return v;
    return member(MembershipStatus::CertifiedMember, 0, "exact rational law");
  }
  if (all_zero) return member(MembershipStatus::CertifiedMember, 0, "errors vanish exactly");

  // Scalar profile: the largest component at each index.
  std::vector<PrecisionReal> worst;
  for (const auto& row : err.epsilons) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k)
      if (std::fabs(row[k].mid_double()) > std::fabs(row[best].mid_double())) best = k;
    worst.push_back(row[best]);
  }
  if (!homogeneous) {
    for (const auto& c : seq.certificates) {
      if (c.theta != theta.key()) continue;
      bool holds = true;
      for (std::size_t i = 0; i < err.epsilons.size() && holds; ++i) {
        Rational bound(c.C * std::exp2(-c.lambda * static_cast<double>(i + 1)));
        for (const auto& e : err.epsilons[i]) holds = holds && (e.certainly_zero() || e.abs_less_than(bound));
      }
      if (holds) return member(MembershipStatus::CertifiedMember, c.lambda, "construction certificate " + seq.method);
    }
  }
  auto fit = dagroups::fit_decay(worst, config);
  bool last_small = true;
  for (const auto& e : err.epsilons.back()) last_small = last_small && (e.certainly_zero() || e.abs_less_than(tau_q));
  if (fit && last_small) return member(MembershipStatus::EmpiricalMember, fit->lambda, "decay fit");
  if (first_nonzero(true)) return v;
  return member(MembershipStatus::EmpiricalMember, fit ? fit->lambda : 0.0, "all errors within tau");
}

std::string_view independence_name(Independence v) {
  switch (v) {
    case Independence::Dependent: return "Dependent";
    case Independence::Independent: return "Independent";
    case Independence::IndependentUpTo: return "IndependentUpTo";
  }
  return "?";
}

namespace {

IndependenceVerdict verdict_from(const lattice::RelationLattice& lat, const Integer& height) {
  IndependenceVerdict v;
  v.height = height;
  v.exact = lat.exact;
  v.relations = lat.basis;
  v.residual_floor = lat.residual_floor;
  if (const auto* c = smallest(lat.basis)) {
    v.verdict = Independence::Dependent;
    v.certificate = *c;
  } else {
    v.verdict = lat.exact ? Independence::Independent : Independence::IndependentUpTo;
  }
  return v;
}

}  // namespace

IndependenceVerdict homogeneous_independence(const RealMatrix& theta, const Integer& height, const Config& config) {
  if (height < 1) fail(ErrorCode::NotPositive, "height bound must be positive");
  return verdict_from(lattice::relation_lattice(theta.rows, relation_options(height, config)), height);
}

IndependenceVerdict inhomogeneous_independence(const RealMatrix& theta, const Integer& height, const Config& config) {
  if (height < 1) fail(ErrorCode::NotPositive, "height bound must be positive");
  const std::size_t r = theta.r(), s = theta.s();
  OracleMatrix rows = theta.rows;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) rows[i].push_back(RealOracle::integer(i == k ? -1 : 0));
  IndependenceVerdict v = verdict_from(lattice::relation_lattice(rows, relation_options(height, config)), height);
  if (v.certificate) {
    const IntVector& rel = v.certificate->relation;
    v.m.assign(rel.begin(), rel.begin() + static_cast<long>(s));
    v.m_perp.assign(rel.begin() + static_cast<long>(s), rel.end());
  }
  return v;
}

std::string_view closure_name(ClosureKind k) {
  switch (k) {
    case ClosureKind::FullTorus: return "FullTorus";
    case ClosureKind::FiniteGroup: return "FiniteGroup";
    case ClosureKind::SubtorusCoset: return "SubtorusCoset";
  }
  return "?";
}

TorusClosure torus_closure(const RealMatrix& theta, const Integer& height, std::size_t samples, const Config& config) {
  if (height < 1) fail(ErrorCode::NotPositive, "height bound must be positive");
  const std::size_t r = theta.r(), s = theta.s();
  // One relation row per column j: sum_i k_i theta_ij - l_j = 0.
  OracleMatrix rows(s);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < r; ++i) rows[j].push_back(theta.at(i, j));
    for (std::size_t l = 0; l < s; ++l) rows[j].push_back(RealOracle::integer(l == j ? -1 : 0));
  }
  auto lat = lattice::relation_lattice(rows, relation_options(height, config));
  TorusClosure out;
  out.exact = lat.exact;
  IntMatrix ks;
  for (const auto& c : lat.basis) {
    out.relations.push_back(c.relation);
    ks.emplace_back(c.relation.begin(), c.relation.begin() + static_cast<long>(r));
  }
  const std::size_t rank = ks.empty() ? 0 : lattice::rank(ks);
  out.dimension = static_cast<unsigned>(r - rank);
  if (rank == 0) {
    out.kind = ClosureKind::FullTorus;
  } else if (rank == r && ks.size() == r) {
    out.kind = ClosureKind::FiniteGroup;
    Integer det = lattice::gram_determinant(ks);
    mpz_sqrt(det.get_mpz_t(), det.get_mpz_t());
    out.order = det;
  } else {
    out.kind = ClosureKind::SubtorusCoset;
  }

  // Orbit samples Theta n mod 1 at seeded random n.
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  std::vector<std::vector<double>> pts;
  std::vector<std::vector<PrecisionReal>> grid(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) grid[i].push_back(theta.at(i, j).eval(128));
  bool characters_vanish = true;
  for (std::size_t t = 0; t < samples; ++t) {
    IntVector n(s);
    for (auto& x : n) x = dist(rng);
    std::vector<PrecisionReal> y;
    std::vector<double> p;
    for (std::size_t i = 0; i < r; ++i) {
      PrecisionReal acc(Rational(0), 128);
      for (std::size_t j = 0; j < s; ++j) acc = acc + PrecisionReal(Rational(n[j]), 128) * grid[i][j];
      y.push_back(acc);
      p.push_back(frac01(acc.mid_double() - std::floor(acc.mid_double())));
    }
    for (const auto& k : ks) {
      double v = 0;
      for (std::size_t i = 0; i < r; ++i) {
        Rational f = y[i].enclosure().mid_rational();
        f -= Rational(floor(f));
        v += k[i].get_d() * f.get_d();
      }
      if (std::fabs(v - std::nearbyint(v)) > 1e-6) characters_vanish = false;
    }
    pts.push_back(std::move(p));
  }
  out.samples = samples;
  out.discrepancy = r <= 3 ? grid_star_discrepancy(pts) : 0.0;
  bool uniform = out.kind != ClosureKind::FullTorus || r > 3 ||
                 out.discrepancy <= 4.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(samples, 1))) + 1.0 / 32;
  out.sampling_consistent = samples > 0 && characters_vanish && uniform;
  return out;
}

}  // namespace diophlab::matrixdioph
