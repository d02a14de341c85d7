#include "diophlab/rigidity/rigidity.hpp"

#include <algorithm>
#include <bit>

#include "diophlab/core/error.hpp"
#include "diophlab/numeric/exact.hpp"

namespace diophlab::rigidity {
namespace {

bool nonzero(const numfield::FieldElement& x) {
  return std::any_of(x.coords.begin(), x.coords.end(), [](const Rational& c) { return c != 0; });
}

// Defining polynomial of an exact algebraic-class oracle, ascending.
IntVector defining_polynomial(const RealOracle& x) {
  if (auto q = x.as_rational()) return {-q->get_num(), q->get_den()};
  if (auto s = x.surd_parts()) {
    // (c x - a)^2 = b^2 d
    return {s->a * s->a - s->b * s->b * s->d, -2 * s->a * s->c, s->c * s->c};
  }
  if (auto a = x.algebraic_parts()) return a->polynomial;
  fail(ErrorCode::InvalidArgument, x.literal() + " is not of exact algebraic class");
}

polyapprox::IntPolynomial lift(const IntVector& ascending, std::size_t vars, std::size_t var) {
  polyapprox::IntPolynomial out(vars);
  for (std::size_t k = 0; k < ascending.size(); ++k) {
    if (ascending[k] == 0) continue;
    polyapprox::Monomial m(vars, 0);
    m[var] = static_cast<unsigned>(k);
    out.add_term(m, ascending[k]);
  }
  return out.normalized();
}

void require_size(const OracleVector& theta, std::size_t lo, const char* what) {
  if (theta.size() < lo)
    fail(ErrorCode::InvalidArgument, std::string(what) + " needs at least " + std::to_string(lo) + " coordinates");
}

}  // namespace

std::string_view verdict_name(VerdictStatus s) { return s == VerdictStatus::Holds ? "Holds" : "NotDetectedUpTo"; }

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Consistent: return "Consistent";
    case Outcome::VacuouslyConsistent: return "VacuouslyConsistent";
    case Outcome::CounterexampleCandidate: return "COUNTEREXAMPLE-CANDIDATE";
  }
  return "?";
}

bool algebraic_class(const RealOracle& x) {
  const Exactness e = x.exactness();
  return e == Exactness::Rational || e == Exactness::QuadraticSurd || e == Exactness::Algebraic;
}

RelationVerdict ld_check(const OracleVector& theta, const numfield::NumberField& field, const Integer& height,
                         const Config& config) {
  require_size(theta, 2, "LD");
  if (height < 1) fail(ErrorCode::InvalidArgument, "height bound must be at least 1");
  const std::size_t n = theta.size(), d = field.degree();
  RelationVerdict out;
  out.relation = RelationKind::LD;
  out.field = field.name();
  out.height = height;
  OracleVector xs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) xs.push_back(d == 1 ? theta[i] : field.embedding(0, j) * theta[i]);
  lattice::RelationCertificate rel =
      lattice::integer_relation(xs, {height, config.precision, config.precision_cap, config.delta});
  out.certificate = rel.status;
  out.residual_floor = rel.residual_floor;
  if (!rel.found()) {
    out.reason = rel.proven_none ? "exact kernel is trivial" : "no relation up to the height bound";
    return out;
  }
  // Coefficient c_i = sum_j a_ij alpha_j, evaluated at the first place.
  for (std::size_t i = 0; i < n; ++i) {
    RatVector c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = rel.relation[i * d + j];
    out.coefficients.push_back(field.element(std::move(c)));
  }
  auto lead = std::find_if(out.coefficients.begin(), out.coefficients.end(), nonzero);
  const Rational& first = *std::find_if(lead->coords.begin(), lead->coords.end(), [](const Rational& c) { return c != 0; });
  if (first < 0)
    for (auto& c : out.coefficients) c = field.scale(c, -1);
  for (const auto& c : out.coefficients) out.coefficient_text.push_back(field.format(c));
  out.status = VerdictStatus::Holds;
  out.reason = "sum c_i theta_i = 0";
  return out;
}

RelationVerdict ad_check(const OracleVector& theta, unsigned dmax, const Integer& height, const Config& config) {
  require_size(theta, 1, "AD");
  if (dmax < 1) fail(ErrorCode::InvalidArgument, "degree bound must be at least 1");
  if (height < 1) fail(ErrorCode::InvalidArgument, "height bound must be at least 1");
  RelationVerdict out;
  out.relation = RelationKind::AD;
  out.height = height;
  out.degree = dmax;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!algebraic_class(theta[i])) continue;
    // A defining polynomial is exact by construction; its height may exceed H.
    out.polynomial = lift(defining_polynomial(theta[i]), theta.size(), i);
    out.status = VerdictStatus::Holds;
    out.certificate = lattice::CertificateStatus::ExactVerified;
    out.reason = "coordinate " + std::to_string(i + 1) + " is algebraic";
    return out;
  }
  polyapprox::PolyCertificate cert = polyapprox::algebraic_dependence(theta, dmax, height, config);
  out.certificate = cert.relation.status;
  out.residual_floor = cert.relation.residual_floor;
  if (!cert.found()) {
    out.reason = "no polynomial up to the degree and height bounds";
    return out;
  }
  out.polynomial = cert.polynomial;
  out.status = VerdictStatus::Holds;
  out.reason = "F(theta) = 0";
  return out;
}

PullbackReport graph_pullback(const OracleVector& theta, unsigned dmax, const Integer& height, GraphFunction f,
                              bool declared_algebraic, const Config& config) {
  require_size(theta, 2, "graph pullback");
  const std::size_t n = theta.size();
  if (n > 4) fail(ErrorCode::CapExceeded, "graph pullback is capped at n = 4, got " + std::to_string(n));
  if (declared_algebraic)
    for (const auto& x : theta)
      if (!algebraic_class(x)) fail(ErrorCode::WrongInstanceShape, x.literal() + " is not of exact algebraic class");
  OracleVector image;
  for (const auto& x : theta) image.push_back(f == GraphFunction::Exp ? x.exp() : x);
  const std::string fname = f == GraphFunction::Exp ? "exp" : "id";

  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> shapes;
  const unsigned full = 1u << n;
  for (unsigned a = 0; a < full; ++a)
    for (unsigned b = 0; b < full; ++b) {
      if (static_cast<std::size_t>(std::popcount(a) + std::popcount(b)) != n) continue;
      std::vector<std::size_t> dom, ran;
      for (std::size_t i = 0; i < n; ++i) {
        if (a >> i & 1u) dom.push_back(i + 1);
        if (b >> i & 1u) ran.push_back(i + 1);
      }
      shapes.emplace_back(std::move(dom), std::move(ran));
    }
  std::sort(shapes.begin(), shapes.end());

  PullbackReport out;
  out.holds = true;
  for (auto& [dom, ran] : shapes) {
    ProjectionReport p;
    p.dom = dom;
    p.ran = ran;
    OracleVector coords;
    for (std::size_t i : dom) {
      coords.push_back(theta[i - 1]);
      p.labels.push_back("x" + std::to_string(i));
    }
    for (std::size_t j : ran) {
      coords.push_back(image[j - 1]);
      p.labels.push_back(fname + "(x" + std::to_string(j) + ")");
    }
    const bool overlap = std::any_of(dom.begin(), dom.end(),
                                     [&](std::size_t i) { return std::find(ran.begin(), ran.end(), i) != ran.end(); });
    if (declared_algebraic && overlap) {
      // The projection carries an algebraic x_i, so it lies in AD outright.
      p.filtered = true;
      p.verdict.relation = RelationKind::AD;
      p.verdict.status = VerdictStatus::Holds;
      p.verdict.certificate = lattice::CertificateStatus::ExactVerified;
      p.verdict.height = height;
      p.verdict.degree = dmax;
      p.verdict.reason = "filtered: I and J overlap on an algebraic-class instance";
    } else {
      p.verdict = ad_check(coords, dmax, height, config);
    }
    if (!p.verdict.holds()) {
      out.holds = false;
      out.not_detected.push_back(out.projections.size());
    }
    out.projections.push_back(std::move(p));
  }
  return out;
}

ExponentialCertificate ld_to_ad(const OracleVector& theta, const IntVector& relation, const Config& config) {
  if (relation.size() != theta.size()) fail(ErrorCode::DimensionMismatch, "relation and theta differ in length");
  if (std::all_of(relation.begin(), relation.end(), [](const Integer& c) { return c == 0; }))
    fail(ErrorCode::InvalidArgument, "the zero relation carries no certificate");
  const std::size_t n = theta.size();
  polyapprox::Monomial pos(n, 0), neg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(relation[i]) > 1000000)
      fail(ErrorCode::CapExceeded, "relation coefficient too large for an exponent");
    if (relation[i] > 0) pos[i] = static_cast<unsigned>(relation[i].get_ui());
    if (relation[i] < 0) neg[i] = static_cast<unsigned>(Integer(abs(relation[i])).get_ui());
  }
  ExponentialCertificate out;
  out.polynomial = polyapprox::IntPolynomial(n);
  out.polynomial.add_term(pos, 1);
  out.polynomial.add_term(neg, -1);
  out.polynomial = out.polynomial.normalized();
  OracleVector image;
  for (const auto& x : theta) image.push_back(x.exp());
  const long bits = 2 * std::max<long>(config.precision, 128);
  out.value = polyapprox::poly_error(image, out.polynomial, bits);
  // prod exp(theta_i)^q_i = exp(sum q_i theta_i), so an exactly vanishing
  // linear form makes the polynomial vanish exactly; the enclosure must agree.
  const std::optional<bool> zero = exact_zero_combination(relation, theta);
  out.exact = out.value.certainly_zero() || (zero.value_or(false) && out.value.contains_zero());
  if (out.exact) {
    out.verified = true;
    return out;
  }
  if (zero.has_value()) return out;  // the relation is exactly false
  // No exact route: the enclosure must keep zero while it shrinks.
  const PrecisionReal finer = polyapprox::poly_error(image, out.polynomial, 2 * bits);
  out.verified = out.value.contains_zero() && finer.contains_zero() &&
                 finer.width_double() < out.value.width_double() && finer.width_double() < 1e-60;
  return out;
}

namespace {

void require_algebraic(const OracleVector& xs, const std::string& what) {
  for (const auto& x : xs)
    if (!algebraic_class(x)) fail(ErrorCode::WrongInstanceShape, what + ": " + x.literal() + " is not of exact algebraic class");
}

}  // namespace

HarnessReport conjecture_harness(std::string_view name, const OracleVector& theta, const HarnessBounds& bounds,
                                 const Config& config) {
  if (theta.size() < 2 || theta.size() > 4)
    fail(ErrorCode::WrongInstanceShape, "harness instances have 2 to 4 coordinates");
  HarnessReport out;
  out.name = std::string(name);
  for (const auto& x : theta) out.theta.push_back(x.literal());
  OracleVector image;
  for (const auto& x : theta) image.push_back(x.exp());

  const numfield::NumberField q = numfield::NumberField::rationals();
  auto ldq = [&] {
    RelationVerdict v = ld_check(theta, q, bounds.ld_height, config);
    out.checks.push_back({"LD^Q(theta)", v});
    if (v.holds() && v.certificate == lattice::CertificateStatus::ExactVerified) {
      IntVector rel;
      for (const auto& c : v.coefficients) rel.push_back(c.coords[0].get_num());
      out.exponential = ld_to_ad(theta, rel, config);
    }
    return v.holds();
  };

  if (name == "baker") {
    require_algebraic(image, "baker needs exp(theta_i) algebraic");
    out.premise = !ldq();
    const numfield::NumberField k = numfield::NumberField::parse(bounds.field);
    RelationVerdict lk = ld_check(theta, k, bounds.ld_height, config);
    out.checks.push_back({"LD^K(theta) over " + k.name(), lk});
    out.conclusion = !lk.holds();
    out.summary = "Q-independent logarithms stay independent over " + k.name();
  } else if (name == "lw") {
    require_algebraic(theta, "lw needs theta_i algebraic");
    out.premise = !ldq();
    RelationVerdict ad = ad_check(image, bounds.dmax, bounds.ad_height, config);
    out.checks.push_back({"AD(exp theta)", ad});
    out.conclusion = !ad.holds();
    out.summary = "Q-independent algebraic theta have algebraically independent exponentials";
  } else if (name == "logconj") {
    require_algebraic(image, "logconj needs exp(theta_i) algebraic");
    out.premise = !ldq();
    RelationVerdict ad = ad_check(theta, bounds.dmax, bounds.ad_height, config);
    out.checks.push_back({"AD(theta)", ad});
    out.conclusion = !ad.holds();
    out.summary = "Q-independent logarithms are algebraically independent";
  } else if (name == "schanuel") {
    out.pullback = graph_pullback(theta, bounds.dmax, bounds.ad_height, GraphFunction::Exp, false, config);
    out.premise = out.pullback->holds;
    out.conclusion = ldq();
    out.summary = "theta in the exp graph pullback of AD is Q-dependent";
  } else {
    fail(ErrorCode::InvalidArgument, "unknown harness '" + std::string(name) + "' (baker, lw, logconj, schanuel)");
  }
  if (!out.premise) out.outcome = Outcome::VacuouslyConsistent;
  else out.outcome = out.conclusion ? Outcome::Consistent : Outcome::CounterexampleCandidate;
  return out;
}

const std::vector<CuratedInstance>& curated_suite() {
  using O = Outcome;
  static const std::vector<CuratedInstance> suite = {
      {"baker", {"log(2)", "log(3)", "log(6)"}, O::VacuouslyConsistent},
      {"baker", {"log(2)", "log(3)"}, O::Consistent},
      {"baker", {"log(2)", "log(4)"}, O::VacuouslyConsistent},
      {"baker", {"log(3)", "log(5)", "log(7)"}, O::Consistent},
      {"baker", {"log(3/2)", "log(2)", "log(3)"}, O::VacuouslyConsistent},
      {"lw", {"1", "sqrt(2)"}, O::Consistent},
      {"lw", {"1", "2"}, O::VacuouslyConsistent},
      {"lw", {"1/2", "sqrt(3)"}, O::Consistent},
      {"lw", {"sqrt(2)", "scale(2,sqrt(2))"}, O::VacuouslyConsistent},
      {"lw", {"1", "phi"}, O::Consistent},
      {"logconj", {"log(2)", "log(3)"}, O::Consistent},
      {"logconj", {"log(2)", "log(8)"}, O::VacuouslyConsistent},
      {"logconj", {"log(5)", "log(7)"}, O::Consistent},
      {"logconj", {"log(2)", "log(3)", "log(12)"}, O::VacuouslyConsistent},
      {"logconj", {"log(6)", "log(10)"}, O::Consistent},
      {"schanuel", {"1", "2"}, O::Consistent},
      {"schanuel", {"1", "sqrt(2)"}, O::VacuouslyConsistent},
      {"schanuel", {"log(2)", "log(3)"}, O::VacuouslyConsistent},
      {"schanuel", {"1/2", "3/2"}, O::Consistent},
      {"schanuel", {"log(2)", "1"}, O::VacuouslyConsistent},
  };
  return suite;
}

}  // namespace diophlab::rigidity
