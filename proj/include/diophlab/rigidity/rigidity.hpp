#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diophlab/core/config.hpp"
#include "diophlab/lattice/relation.hpp"
#include "diophlab/numfield/numfield.hpp"
#include "diophlab/polyapprox/polyapprox.hpp"

namespace diophlab::rigidity {

enum class RelationKind { LD, AD };
enum class VerdictStatus { Holds, NotDetectedUpTo };
std::string_view verdict_name(VerdictStatus s);

// "Independent" is never claimed: a search either certifies a relation or
// reports the bounds it exhausted.
struct RelationVerdict {
  RelationKind relation = RelationKind::LD;
  std::string field;  // LD only
  VerdictStatus status = VerdictStatus::NotDetectedUpTo;
  lattice::CertificateStatus certificate = lattice::CertificateStatus::NoneUpTo;
  std::vector<numfield::FieldElement> coefficients;  // LD: sum c_i theta_i = 0
  std::vector<std::string> coefficient_text;
  std::optional<polyapprox::IntPolynomial> polynomial;  // AD
  Integer height;
  unsigned degree = 0;  // AD only
  double residual_floor = 0;
  std::string reason;
  bool holds() const { return status == VerdictStatus::Holds; }
};

// K-linear dependence, searched over {nu_1(alpha_j) theta_i} for the
// integral basis of K at its first place.
RelationVerdict ld_check(const OracleVector& theta, const numfield::NumberField& field, const Integer& height,
                         const Config& config = {});

// A coordinate of exact algebraic class holds through its minimal polynomial;
// otherwise a degree-graded dependence search.
RelationVerdict ad_check(const OracleVector& theta, unsigned dmax, const Integer& height, const Config& config = {});

bool algebraic_class(const RealOracle& x);

enum class GraphFunction { Exp, Identity };

struct ProjectionReport {
  std::vector<std::size_t> dom, ran;  // 1-based I and J
  std::vector<std::string> labels;
  RelationVerdict verdict;
  bool filtered = false;  // I, J overlap on a declared algebraic-class instance
};

struct PullbackReport {
  std::vector<ProjectionReport> projections;  // sorted by (I, J)
  bool holds = false;                         // every projection holds
  std::vector<std::size_t> not_detected;      // indices into `projections`
};

// Every projection (theta_I, f(theta_J)) with |I| + |J| = n; n <= 4.
PullbackReport graph_pullback(const OracleVector& theta, unsigned dmax, const Integer& height,
                              GraphFunction f = GraphFunction::Exp, bool declared_algebraic = false,
                              const Config& config = {});

// From sum q_i theta_i = 0: prod_{q_i > 0} X_i^q_i - prod_{q_i < 0} X_i^-q_i
// vanishes at exp(theta).
struct ExponentialCertificate {
  polyapprox::IntPolynomial polynomial;
  bool exact = false;      // zero proven exactly, by evaluation or by the exact relation
  PrecisionReal value;     // enclosure at exp(theta)
  bool verified = false;
};
ExponentialCertificate ld_to_ad(const OracleVector& theta, const IntVector& relation, const Config& config = {});

enum class Outcome { Consistent, VacuouslyConsistent, CounterexampleCandidate };
std::string_view outcome_name(Outcome o);

struct HarnessBounds {
  Integer ld_height = 10000;
  unsigned dmax = 3;
  Integer ad_height = 1000;
  std::string field = "Q(sqrt 2)";  // stands in for Qbar in the Baker conclusion
};

struct NamedVerdict {
  std::string label;
  RelationVerdict verdict;
};

struct HarnessReport {
  std::string name;
  std::vector<std::string> theta;
  Outcome outcome = Outcome::Consistent;
  bool premise = false;
  bool conclusion = false;
  std::vector<NamedVerdict> checks;
  std::optional<PullbackReport> pullback;
  std::optional<ExponentialCertificate> exponential;  // when LD^Q holds
  std::string summary;
};

// "baker", "lw", "logconj" or "schanuel"; WrongInstanceShape when theta does
// not fit the statement.
HarnessReport conjecture_harness(std::string_view name, const OracleVector& theta, const HarnessBounds& bounds = {},
                                 const Config& config = {});

struct CuratedInstance {
  std::string harness;
  std::vector<std::string> theta;
  Outcome expected;
};
const std::vector<CuratedInstance>& curated_suite();

}  // namespace diophlab::rigidity
