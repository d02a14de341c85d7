#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diophlab/core/config.hpp"
#include "diophlab/numeric/continued_fraction.hpp"
#include "diophlab/numeric/standard_part.hpp"

namespace diophlab::dagroups {

// |eps_i| <= C * 2^(-lambda * i) for 1-based i, for the number `theta`.
struct DecayCertificate {
  std::string theta;
  double C = 0;
  double lambda = 0;
};

enum class Provenance { Constructed, UserSupplied };

struct ApproxSequence {
  IntVector entries;
  // Numerators bound to `theta`; absent for a bare user sequence.
  std::optional<IntVector> duals;
  std::optional<std::string> theta;
  Provenance provenance = Provenance::UserSupplied;
  std::string method;
  std::vector<DecayCertificate> certificates;

  std::size_t size() const { return entries.size(); }
  const DecayCertificate* certificate_for(const std::string& theta_literal) const;
};

ApproxSequence user_sequence(IntVector entries);
// Parses a JSON array of integers or decimal strings.
ApproxSequence parse_sequence(const std::string& json_array);

struct DecayFit {
  double C = 0;
  double lambda = 0;
  double r2 = 0;
};

struct ErrorProfile {
  std::vector<PrecisionReal> epsilons;  // n_i * theta - dual_i
  RatVector duals;
  std::optional<DecayFit> fit;  // present iff accepted with lambda > 0
};

// Lattice of admissible entries (r Z) and duals (s Z).
struct NumeratorConstraint {
  enum class Kind { Integers, InvertedScale, DivisibleByAll, ScaledIdeal };
  Kind kind = Kind::Integers;
  Integer n = 1;  // InvertedScale / ScaledIdeal parameter, or DivisibleByAll bound B

  static NumeratorConstraint integers() { return {}; }
  static NumeratorConstraint inverted_scale(const Integer& n) { return {Kind::InvertedScale, n}; }
  static NumeratorConstraint divisible_by_all(const Integer& b) { return {Kind::DivisibleByAll, b}; }
  static NumeratorConstraint scaled_ideal(const Integer& n) { return {Kind::ScaledIdeal, n}; }
  Rational dual_step() const;
  Integer entry_step() const;
  std::string describe() const;
};

enum class MembershipStatus { CertifiedMember, EmpiricalMember, NotMember };
std::string_view status_name(MembershipStatus s);

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::NotMember;
  double tau = 0;
  double lambda = 0;
  std::optional<std::size_t> witness;  // 1-based index
  std::string reason;
  std::optional<RatVector> duals;  // when member
  NumeratorConstraint constraint;
  bool member() const { return status != MembershipStatus::NotMember; }
};

ContinuedFraction convergents(const RealOracle& theta, std::size_t k, const Config& config = {});

// Entries q_1..q_N of the convergents with numerators as duals and the
// certificate |q_k theta - p_k| < 1 / q_{k+1}.
ApproxSequence convergent_sequence(const RealOracle& theta, std::size_t n, const Config& config = {});

ErrorProfile error_term(const RealOracle& theta, const ApproxSequence& seq, const Config& config = {});
// Same, with duals constrained to the lattice step*Z.
ErrorProfile error_term(const RealOracle& theta, const ApproxSequence& seq, const Rational& dual_step,
                        const Config& config);

std::optional<DecayFit> fit_decay(const std::vector<PrecisionReal>& eps, const Config& config);

// Verdict from an error profile alone: exact zeros, then a certificate
// that holds at every index, then the decay fit, then a certified witness.
MembershipVerdict classify_errors(const std::vector<PrecisionReal>& eps, const DecayCertificate* certificate,
                                  double tau, const Config& config);
bool certificate_holds(const DecayCertificate& c, const std::vector<PrecisionReal>& eps);
// Least-squares rate with the smallest C covering every log2 bound.
DecayCertificate certificate_from_bounds(const std::string& theta, const std::vector<double>& log2_bounds);

MembershipVerdict membership(const RealOracle& theta, const ApproxSequence& seq,
                             const NumeratorConstraint& constraint, double tau, const Config& config = {});

ApproxSequence combine(const ApproxSequence& a, const ApproxSequence& b, const Integer& c1, const Integer& c2);

ApproxSequence dual(const RealOracle& theta, const ApproxSequence& seq, const Config& config = {});

std::vector<Integer> scaling_witness(const RealOracle& theta, const ApproxSequence& seq, const Config& config = {});

StdEstimate circle_part(const RealOracle& theta, const ApproxSequence& seq, const Config& config = {});

// n >= 0 and k with |n theta - target - k| < delta, searched over the
// convergent denominators of `cf` from index `first` on; nullopt when none
// is large enough.
struct InhomogeneousSolution {
  Integer n;
  Integer k;
  PrecisionReal distance;
};
std::optional<InhomogeneousSolution> inhomogeneous_approx(const RealOracle& theta, const RealOracle& target,
                                                          const Rational& delta, const ContinuedFraction& cf,
                                                          const Config& config, std::size_t first = 0);

struct HatStage {
  unsigned k = 0;
  Integer multiplier;  // m = K! for every stage, K the stage count
  Integer n;           // ||theta/m + n theta|| < delta
  Rational delta;      // 1 / (m^2 4^k)
  PrecisionReal distance;
  Integer entry;       // 1 + m n
};

struct HatElement {
  ApproxSequence sequence;
  std::vector<HatStage> stages;
};

HatElement hat_element(const RealOracle& theta, unsigned stages, const Config& config = {});

std::vector<std::pair<Integer, Integer>> pair_form(const RealOracle& theta, const ApproxSequence& seq,
                                                   const Config& config = {});

}  // namespace diophlab::dagroups
