#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diophlab/core/config.hpp"
#include "diophlab/dagroups/dagroups.hpp"
#include "diophlab/lattice/relation.hpp"

namespace diophlab::matrixdioph {

// r x s grid of oracles; Theta n maps Z^s to R^r.
struct RealMatrix {
  OracleMatrix rows;

  std::size_t r() const { return rows.size(); }
  std::size_t s() const { return rows.empty() ? 0 : rows.front().size(); }
  const RealOracle& at(std::size_t i, std::size_t j) const { return rows[i][j]; }
  bool all_rational() const;
  // Canonical "[[a,b],[c,d]]" literal; keys certificates.
  std::string key() const;

  static RealMatrix from_rows(OracleMatrix rows);
  static RealMatrix parse(std::string_view text);
};

struct VectorApproxSequence {
  std::vector<IntVector> entries;                // s-vectors
  std::optional<std::vector<IntVector>> duals;   // r-vectors, bound to `theta`
  std::optional<std::string> theta;
  dagroups::Provenance provenance = dagroups::Provenance::UserSupplied;
  std::string method;
  std::vector<dagroups::DecayCertificate> certificates;  // on max_k |eps_ik|

  std::size_t size() const { return entries.size(); }
};

// Parses a JSON array of integer arrays.
VectorApproxSequence parse_vector_sequence(const std::string& json);

// Simultaneous approximations of an r x 1 column at Q_i = 4^i, carrying the
// Dirichlet certificate max_k |q theta_k - p_k| <= 2^(-2i/r) when certified.
VectorApproxSequence simultaneous_sequence(const RealMatrix& column, std::size_t n, const Config& config = {});

struct VectorVerdict {
  dagroups::MembershipStatus status = dagroups::MembershipStatus::NotMember;
  double tau = 0;
  double lambda = 0;
  bool homogeneous = false;
  std::optional<std::size_t> witness;      // 1-based sequence index
  std::optional<std::size_t> witness_row;  // 1-based row
  std::string reason;
  std::optional<std::vector<IntVector>> duals;
  bool member() const { return status != dagroups::MembershipStatus::NotMember; }
};

struct VectorErrors {
  std::vector<std::vector<PrecisionReal>> epsilons;  // [i][row]
  std::vector<IntVector> duals;
};

VectorErrors vector_error_term(const RealMatrix& theta, const VectorApproxSequence& seq, bool homogeneous,
                               const Config& config = {});

VectorVerdict vector_membership(const RealMatrix& theta, const VectorApproxSequence& seq, bool homogeneous,
                                double tau, const Config& config = {});

enum class Independence { Dependent, Independent, IndependentUpTo };
std::string_view independence_name(Independence v);

struct IndependenceVerdict {
  Independence verdict = Independence::IndependentUpTo;
  Integer height;
  bool exact = false;
  // Dependent: the smallest certificate, then every basis relation found.
  std::optional<lattice::RelationCertificate> certificate;
  std::vector<lattice::RelationCertificate> relations;
  double residual_floor = 0;
  // Inhomogeneous only: certificate split as (m, m_perp) with Theta m = m_perp.
  IntVector m, m_perp;
};

// Q-linear relations among the columns.
IndependenceVerdict homogeneous_independence(const RealMatrix& theta, const Integer& height, const Config& config = {});
// Affine relations Theta m = m_perp with (m, m_perp) != 0.
IndependenceVerdict inhomogeneous_independence(const RealMatrix& theta, const Integer& height,
                                               const Config& config = {});

enum class ClosureKind { FullTorus, FiniteGroup, SubtorusCoset };
std::string_view closure_name(ClosureKind k);

struct TorusClosure {
  ClosureKind kind = ClosureKind::FullTorus;
  Integer order;                     // FiniteGroup only
  unsigned dimension = 0;            // of the closure
  // Characters (k | l): sum_i k_i theta_ij = l_j for every column j.
  std::vector<IntVector> relations;
  bool exact = false;
  std::size_t samples = 0;
  double discrepancy = 0;            // grid star discrepancy of the sampled orbit
  bool sampling_consistent = false;  // characters vanish on samples; uniform when full
};

// Closure of {Theta n mod 1 : n in Z^s} in T^r.
TorusClosure torus_closure(const RealMatrix& theta, const Integer& height, std::size_t samples,
                           const Config& config = {});

}  // namespace diophlab::matrixdioph
